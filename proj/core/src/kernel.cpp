#include "radbcs/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "radbcs/parallel.hpp"

namespace radbcs {

namespace {

// Rows are handed out in an interleaved order so that the triangular workload
// balances across threads.
Eigen::MatrixXd tabulate_symmetric(const RadialGrid& grid,
                                   const SectorKernel::KernelFn& fn,
                                   unsigned threads) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd raw(n, n);
  const auto& p = grid.nodes();
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    for (Eigen::Index j = i; j < n; ++j) raw(i, j) = fn(p[i], p[j]);
  });
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) raw(i, j) = raw(j, i);
  return raw;
}

}  // namespace

SectorKernel SectorKernel::from_raw(int ell, GridPtr grid, Eigen::MatrixXd raw,
                                    KernelFn kernel_fn) {
  if (!grid) throw InvalidInput("sector kernel needs a grid");
  const auto n = static_cast<Eigen::Index>(grid->size());
  if (raw.rows() != n || raw.cols() != n)
    throw InvalidInput("sector kernel matrix does not match grid size");
  if (!raw.allFinite()) throw InvalidInput("sector kernel has non-finite entries");
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  if ((raw - raw.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidInput("sector kernel values are not symmetric");

  SectorKernel k;
  k.ell_ = ell;
  k.grid_ = std::move(grid);
  k.raw_ = 0.5 * (raw + raw.transpose());
  k.prefactor_ = std::pow(2.0 * std::numbers::pi, -0.5 * k.grid_->dimension());
  const auto& d = k.grid_->sqrt_measure_weights();
  k.matrix_ = k.prefactor_ * (d.asDiagonal() * k.raw_ * d.asDiagonal());
  // Make M exactly symmetric regardless of rounding in the diagonal scaling.
  k.matrix_ = 0.5 * (k.matrix_ + k.matrix_.transpose()).eval();
  k.kernel_fn_ = std::move(kernel_fn);
  return k;
}

SectorKernel SectorKernel::from_function(int ell, GridPtr grid, KernelFn kernel_fn) {
  if (!grid) throw InvalidInput("sector kernel needs a grid");
  auto raw = tabulate_symmetric(*grid, kernel_fn, 1);
  return from_raw(ell, std::move(grid), std::move(raw), std::move(kernel_fn));
}

double SectorKernel::kernel_at(double p, double q) const {
  if (!kernel_fn_)
    throw InvalidInput("sector kernel has no off-grid kernel function");
  return kernel_fn_(p, q);
}

Eigen::VectorXd SectorKernel::apply(const Eigen::VectorXd& f) const {
  if (static_cast<std::size_t>(f.size()) != grid_->size())
    throw InvalidInput("kernel apply: vector length does not match grid");
  return prefactor_ * (raw_ * grid_->measure_weights().cwiseProduct(f));
}

double SectorKernel::apply_at(double p, const Eigen::VectorXd& f) const {
  if (static_cast<std::size_t>(f.size()) != grid_->size())
    throw InvalidInput("kernel apply: vector length does not match grid");
  const auto& q = grid_->nodes();
  const auto& wm = grid_->measure_weights();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) sum += kernel_at(p, q[j]) * wm[j] * f[j];
  return prefactor_ * sum;
}

SectorKernel assemble_sector_kernel(const PotentialSpec& spec, int ell,
                                    const GridPtr& grid, unsigned threads) {
  if (!grid) throw InvalidInput("assemble_sector_kernel: null grid");
  if (grid->dimension() != spec.dimension())
    throw InvalidInput("potential and grid dimensions differ");
  check_sector(spec.dimension(), ell);
  SectorKernel::KernelFn fn = [spec, ell](double p, double q) {
    return angular_coefficient(spec, ell, p, q);
  };
  auto raw = tabulate_symmetric(*grid, fn, threads);
  return SectorKernel::from_raw(ell, grid, std::move(raw), std::move(fn));
}

SectorFamily::SectorFamily(const PotentialSpec& spec, GridPtr grid, int ell_max,
                           unsigned threads)
    : grid_(std::move(grid)), ell_max_(ell_max) {
  if (ell_max < 0 || ell_max % 2 != 0)
    throw ConfigError("ell_max must be a nonnegative even integer");
  if (spec.dimension() == 3) ell_max_ = 0;
  for (int ell = 0; ell <= ell_max_; ell += 2)
    kernels_.emplace(ell, assemble_sector_kernel(spec, ell, grid_, threads));
}

const SectorKernel& SectorFamily::at(int ell) const {
  auto it = kernels_.find(std::abs(ell));
  if (it == kernels_.end())
    throw InvalidInput("sector " + std::to_string(ell) + " is not in the family");
  return it->second;
}

std::vector<int> SectorFamily::sectors() const {
  std::vector<int> out;
  for (const auto& [ell, k] : kernels_) out.push_back(ell);
  return out;
}

}  // namespace radbcs
