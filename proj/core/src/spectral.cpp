#include "radbcs/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "radbcs/errors.hpp"

namespace radbcs {

void DispersionParams::validate() const {
  if (!std::isfinite(mu)) throw DomainError("chemical potential must be finite");
  if (!std::isfinite(temperature) || temperature < 0.0)
    throw DomainError("temperature must be finite and >= 0");
}

double kt_of_energy(double e, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
  const double a = std::abs(e);
  if (temperature == 0.0) return a;
  if (a < 1e-6 * temperature) return 2.0 * temperature + a * a / (6.0 * temperature);
  return a / std::tanh(a / (2.0 * temperature));
}

double kt_symbol(const DispersionParams& params, double p) {
  params.validate();
  return kt_of_energy(p * p - params.mu, params.temperature);
}

double kt_delta_symbol(const DispersionParams& params, double p, double delta_abs) {
  params.validate();
  const double k = p * p - params.mu;
  return kt_of_energy(std::hypot(k, delta_abs), params.temperature);
}

Eigen::VectorXd kt_diagonal(const DispersionParams& params, const RadialGrid& grid,
                            const GridFunction* delta) {
  params.validate();
  if (delta && !same_grid(*delta->grid(), grid))
    throw InvalidInput("gap function lives on a different grid");
  const auto& p = grid.nodes();
  Eigen::VectorXd out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double k = p[i] * p[i] - params.mu;
    const double e = delta ? std::hypot(k, delta->values()[i]) : k;
    out[i] = kt_of_energy(e, params.temperature);
  }
  return out;
}

Eigen::MatrixXd assemble_operator(const DispersionParams& params,
                                  const SectorKernel& kernel,
                                  const GridFunction* delta) {
  Eigen::MatrixXd a = kernel.matrix();
  a.diagonal() += kt_diagonal(params, *kernel.grid(), delta);
  return a;
}

namespace {

void check_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidInput("eigensolver needs a square matrix");
  if (!a.allFinite()) throw InvalidInput("eigensolver input has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInput("eigensolver input is not symmetric");
}

int clamp_count(const Eigen::MatrixXd& a, int k) {
  if (k < 1) throw InvalidInput("number of eigenvalues must be positive");
  return static_cast<int>(std::min<Eigen::Index>(k, a.rows()));
}

}  // namespace

SpectralResult lowest_eigenvalues(const Eigen::MatrixXd& A, int k) {
  check_symmetric(A);
  const int m = clamp_count(A, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Divergence("symmetric eigensolver failed");
  SpectralResult r;
  r.eigenvalues = es.eigenvalues().head(m);
  r.eigenvectors = es.eigenvectors().leftCols(m);
  return r;
}

Eigen::VectorXd lowest_eigenvalues_only(const Eigen::MatrixXd& A, int k) {
  check_symmetric(A);
  const int m = clamp_count(A, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Divergence("symmetric eigensolver failed");
  return es.eigenvalues().head(m);
}

double sector_eigenvalue(const SectorKernel& kernel, double mu, double temperature,
                         int index) {
  const auto a = assemble_operator({mu, temperature}, kernel);
  return lowest_eigenvalues_only(a, index + 1)[index];
}

}  // namespace radbcs
