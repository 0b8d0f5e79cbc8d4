#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "support.hpp"

using namespace radbcs;
using namespace radbcs::testing;

namespace {

// (2 pi)^(-d/2) \int_{R^d} V^(|p e_1 - q|) f(|q|) Y(q) dq by a plain tensor
// product rule, with Y(q) = cos(ell phi_q) in 2D and Y = 1 in 3D. Does not go
// through the angular decomposition.
double direct_convolution(const PotentialSpec& spec, int ell, double p, const RadialGrid& g,
                          const Eigen::VectorXd& f) {
  const int d = spec.dimension();
  double sum = 0.0;
  if (d == 2) {
    constexpr int m = 2048;
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      const double q = g.nodes()[j];
      double ang = 0.0;
      for (int k = 0; k < m; ++k) {
        const double phi = 2.0 * kPi * k / m;
        const double dist = std::sqrt(std::max(0.0, p * p + q * q - 2 * p * q * std::cos(phi)));
        ang += spec.fourier_hat(dist) * std::cos(ell * phi);
      }
      sum += g.weights()[j] * q * f[j] * ang * (2.0 * kPi / m);
    }
    return sum / (2.0 * kPi);
  }
  // 3D: azimuth integrates to 2 pi; Gauss-Legendre in t = cos(theta).
  Eigen::VectorXd t(64), w(64);
  {
    // Golub-Welsch for the Legendre rule.
    Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(64, 64);
    for (int i = 1; i < 64; ++i) jm(i, i - 1) = jm(i - 1, i) = i / std::sqrt(4.0 * i * i - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
    t = es.eigenvalues();
    w = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  }
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    const double q = g.nodes()[j];
    double ang = 0.0;
    for (int k = 0; k < 64; ++k)
      ang += w[k] * spec.fourier_hat(std::sqrt(std::max(0.0, p * p + q * q - 2 * p * q * t[k])));
    sum += g.weights()[j] * q * q * f[j] * 2.0 * kPi * ang;
  }
  return sum * std::pow(2.0 * kPi, -1.5);
}

}  // namespace

TEST_CASE("sector matrix is the symmetrized Nystrom discretization") {
  const auto grid = make_grid(64);
  const auto spec = default_spec();
  const auto k = assemble_sector_kernel(spec, 2, grid);
  const auto& d = grid->sqrt_measure_weights();
  CHECK(k.prefactor() == doctest::Approx(1.0 / (2.0 * kPi)));
  for (int i : {0, 17, 40, 63})
    for (int j : {3, 17, 60}) {
      const double p = grid->nodes()[i], q = grid->nodes()[j];
      const double oracle = gaussian_sector_oracle(2.0, 1.0, 2, 2, p, q);
      CHECK(std::abs(k.raw_values()(i, j) - oracle) < 1e-11);
      CHECK(k.matrix()(i, j) == doctest::Approx(k.prefactor() * d[i] * oracle * d[j]).epsilon(1e-9));
    }
  CHECK((k.matrix() - k.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply agrees with a direct convolution over R^d") {
  for (int dim : {2, 3}) {
    const auto grid = make_grid(96, 1.0, dim);
    const auto spec = dim == 2 ? engineered_spec() : default_spec(3);
    for (int ell : dim == 2 ? std::vector<int>{0, 2, 4} : std::vector<int>{0}) {
      const auto k = assemble_sector_kernel(spec, ell, grid);
      Eigen::VectorXd f(grid->size());
      for (Eigen::Index i = 0; i < f.size(); ++i)
        f[i] = std::exp(-std::pow(grid->nodes()[i] - 1.0, 2));
      const Eigen::VectorXd vf = k.apply(f);
      for (int i : {5, 30, 70}) {
        const double want = direct_convolution(spec, ell, grid->nodes()[i], *grid, f);
        CHECK(std::abs(vf[i] - want) < 1e-9 * std::max(1.0, std::abs(want)));
        CHECK(k.apply_at(grid->nodes()[i], f) == doctest::Approx(vf[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("spectra for ell and -ell coincide") {
  const auto grid = make_grid(128);
  for (const auto& spec : {default_spec(), engineered_spec()})
    for (int ell : {2, 4, 8}) {
      const auto a = assemble_sector_kernel(spec, ell, grid);
      const auto b = assemble_sector_kernel(spec, -ell, grid);
      const auto ea = lowest_eigenvalues_only(assemble_operator({1.0, 0.3}, a), 5);
      const auto eb = lowest_eigenvalues_only(assemble_operator({1.0, 0.3}, b), 5);
      CHECK((ea - eb).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, ea.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("assembly is deterministic across thread counts") {
  const auto grid = make_grid(96);
  const auto a = assemble_sector_kernel(engineered_spec(), 4, grid, 1);
  const auto b = assemble_sector_kernel(engineered_spec(), 4, grid, 4);
  CHECK(a.matrix() == b.matrix());
}

TEST_CASE("families hold the admissible sectors") {
  const auto grid2 = make_grid(48);
  const SectorFamily f2(default_spec(), grid2, 6);
  CHECK(f2.sectors() == std::vector<int>{0, 2, 4, 6});
  CHECK(&f2.at(-4) == &f2.at(4));
  CHECK_THROWS_AS(f2.at(8), InvalidInput);
  CHECK_THROWS_AS(SectorFamily(default_spec(), grid2, 3), ConfigError);
  const SectorFamily f3(default_spec(3), make_grid(48, 1.0, 3), 12);
  CHECK(f3.sectors() == std::vector<int>{0});
  CHECK_THROWS_AS(assemble_sector_kernel(default_spec(3), 0, grid2), InvalidInput);
  CHECK_THROWS_AS(assemble_sector_kernel(default_spec(), 1, grid2), DomainError);
  CHECK(sector_multiplicity(0) == 1);
  CHECK(sector_multiplicity(2) == 2);
}

TEST_CASE("kernels from a function and from raw values") {
  const auto grid = make_grid(32);
  const auto fn = [](double p, double q) { return -std::exp(-p * p - q * q); };
  const auto k = SectorKernel::from_function(0, grid, fn);
  CHECK(k.has_kernel_function());
  CHECK(k.kernel_at(0.3, 0.4) == doctest::Approx(fn(0.3, 0.4)));
  const auto r = SectorKernel::from_raw(0, grid, k.raw_values());
  CHECK_FALSE(r.has_kernel_function());
  CHECK_THROWS_AS(r.kernel_at(0.1, 0.1), InvalidInput);
  Eigen::MatrixXd bad = k.raw_values();
  bad(0, 1) += 1.0;
  CHECK_THROWS_AS(SectorKernel::from_raw(0, grid, bad), InvalidInput);
  CHECK_THROWS_AS(SectorKernel::from_raw(0, grid, Eigen::MatrixXd::Zero(3, 3)), InvalidInput);
}
