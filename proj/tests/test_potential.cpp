#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "support.hpp"

using namespace radbcs;
using namespace radbcs::testing;

TEST_CASE("Gaussian transform follows the unitary convention") {
  const auto v2 = PotentialSpec::gaussian(2.0, 1.5, 2);
  const auto v3 = PotentialSpec::gaussian(2.0, 1.5, 3);
  for (double p : {0.0, 0.3, 1.0, 4.0}) {
    CHECK(v2.fourier_hat(p) == doctest::Approx(-2.0 * 2.25 * std::exp(-0.5 * 2.25 * p * p)));
    CHECK(v3.fourier_hat(p) ==
          doctest::Approx(-2.0 * std::pow(1.5, 3) * std::exp(-0.5 * 2.25 * p * p)));
  }
  CHECK(v2.fourier_sup() == doctest::Approx(4.5));
  CHECK(v2.attractive_everywhere());
  CHECK_THROWS_AS(v2.fourier_hat(-1.0), InvalidInput);
  CHECK_THROWS_AS(v2.fourier_hat(std::nan("")), InvalidInput);
}

TEST_CASE("L2 norm matches the Gaussian integral") {
  // ||V^||^2 = s^2 r^(2d) \int e^{-r^2 p^2} d^d p = s^2 r^(2d) (pi / r^2)^(d/2)
  for (int d : {2, 3}) {
    const double s = 1.7, r = 0.8;
    const auto v = PotentialSpec::gaussian(s, r, d);
    const double expect = s * std::pow(r, d) * std::pow(kPi / (r * r), 0.25 * d);
    CHECK(v.l2_norm() == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("two-Gaussian spec superposes and scales") {
  const auto v = engineered_spec();
  const auto w = v.scaled(0.5);
  for (double p : {0.0, 0.7, 2.0}) {
    const double a = -2.0 * 9.0 * std::exp(-4.5 * p * p);
    const double b = 6.0 * 0.25 * std::exp(-0.125 * p * p);
    CHECK(v.fourier_hat(p) == doctest::Approx(a + b));
    CHECK(w.fourier_hat(p) == doctest::Approx(0.5 * (a + b)));
  }
  CHECK_FALSE(v.attractive_everywhere());
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(PotentialSpec::gaussian(1.0, 0.0, 2), ConfigError);
  CHECK_THROWS_AS(PotentialSpec::gaussian(1.0, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(PotentialSpec::tabulated({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}, 2), ConfigError);
  CHECK_THROWS_AS(PotentialSpec::tabulated({0.0, 2.0, 1.0, 3.0}, {1, 2, 3, 4}, 2), ConfigError);
  CHECK_THROWS_AS(parse_potential_kind("lorentzian"), ConfigError);
}

TEST_CASE("angular coefficients match the Bessel closed form") {
  const auto v2 = PotentialSpec::gaussian(2.0, 1.3, 2);
  for (int ell : {0, 1, 2, 4, 7, 12})
    for (double p : {0.05, 0.9, 1.0, 3.5})
      for (double q : {0.2, 1.0, 2.8}) {
        const double got = angular_coefficient(v2, ell, p, q);
        const double want = gaussian_sector_oracle(2.0, 1.3, 2, ell, p, q);
        CHECK(std::abs(got - want) <= 1e-11);
      }
  const auto v3 = PotentialSpec::gaussian(2.0, 0.7, 3);
  for (double p : {0.01, 1.0, 2.5})
    for (double q : {0.3, 1.0, 4.0})
      CHECK(std::abs(angular_kernel(v3, 0, p, q) -
                     gaussian_sector_oracle(2.0, 0.7, 3, 0, p, q)) <= 1e-11);
}

TEST_CASE("sector coefficients are even in ell and symmetric in (p, q)") {
  const auto v = engineered_spec();
  for (int ell : {2, 4, 6}) {
    CHECK(angular_kernel(v, ell, 0.8, 1.7) == angular_kernel(v, -ell, 0.8, 1.7));
    CHECK(angular_kernel(v, ell, 0.8, 1.7) ==
          doctest::Approx(angular_kernel(v, ell, 1.7, 0.8)).epsilon(1e-12));
  }
}

TEST_CASE("origin of momentum space") {
  const auto v = default_spec();
  CHECK(angular_kernel(v, 0, 0.0, 1.3) == doctest::Approx(v.fourier_hat(1.3)));
  CHECK(angular_kernel(v, 2, 0.0, 1.3) == 0.0);
  CHECK(angular_kernel(v, 4, 1.3, 0.0) == 0.0);
}

TEST_CASE("inadmissible sectors raise DomainError") {
  CHECK_THROWS_AS(angular_kernel(default_spec(), 1, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(angular_kernel(default_spec(3), 2, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(check_sector(2, 3), DomainError);
  CHECK_NOTHROW(check_sector(2, -4));
  CHECK_NOTHROW(angular_coefficient(default_spec(), 3, 1.0, 1.0));
}

TEST_CASE("tabulated transform: interpolation, ends and CSV input") {
  std::vector<double> p, val;
  for (int i = 0; i <= 40; ++i) {
    p.push_back(0.1 * i);
    val.push_back(-2.0 * std::exp(-0.5 * p.back() * p.back()));
  }
  const auto t = PotentialSpec::tabulated(p, val, 2);
  const auto g = default_spec();
  // Monotone cubic on a 0.1 mesh: second-order accurate near the extremum.
  for (double x : {0.05, 0.55, 1.23, 2.71})
    CHECK(std::abs(t.fourier_hat(x) - g.fourier_hat(x)) < 5e-3);
  CHECK(t.fourier_hat(0.2) == doctest::Approx(g.fourier_hat(0.2)));
  CHECK(t.fourier_hat(4.5) == 0.0);
  CHECK(t.l2_norm() == doctest::Approx(g.l2_norm()).epsilon(1e-3));
  CHECK(t.scaled(2.0).fourier_hat(1.0) == doctest::Approx(2.0 * t.fourier_hat(1.0)));

  const auto dir = std::filesystem::temp_directory_path() / "radbcs_potential_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "table.csv";
  {
    std::ofstream f(path);
    f.precision(17);
    f << "p,vhat\n";
    for (std::size_t i = 0; i < p.size(); ++i) f << p[i] << ',' << val[i] << '\n';
  }
  const auto c = PotentialSpec::from_csv(path, 2);
  CHECK(c.fourier_hat(1.23) == doctest::Approx(t.fourier_hat(1.23)).epsilon(1e-12));
  {
    std::ofstream f(path);
    for (std::size_t i = 0; i < p.size(); ++i) f << p[i] << ',' << val[i] << '\n';
  }
  CHECK(PotentialSpec::from_csv(path, 2).table_momenta().size() == p.size());
  {
    std::ofstream f(path);
    f << "p,vhat\n0,1\n1,x\n";
  }
  CHECK_THROWS_AS(PotentialSpec::from_csv(path, 2), ConfigError);
  CHECK_THROWS_AS(PotentialSpec::from_csv(dir / "missing.csv", 2), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("angular partial sums rebuild the transform off the diagonal") {
  const auto v = PotentialSpec::gaussian(2.0, 1.0, 2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.1, 3.0), angle(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const double p = radius(rng), q = radius(rng), phi = angle(rng);
    double sum = angular_coefficient(v, 0, p, q);
    for (int ell = 1; ell <= 40; ++ell)
      sum += 2.0 * angular_coefficient(v, ell, p, q) * std::cos(ell * phi);
    const double dist = std::sqrt(p * p + q * q - 2.0 * p * q * std::cos(phi));
    CHECK(std::abs(sum - v.fourier_hat(dist)) < 1e-6);
  }
}

TEST_CASE("Gaussian transform agrees with a direct Hankel integral") {
  // V(x) = -s exp(-|x|^2 / (2 r^2));  V^(p) = \int_0^inf V(x) J_0(p x) x dx in 2D
  const double s = 2.0, r = 1.0;
  const auto v = PotentialSpec::gaussian(s, r, 2);
  for (double p : {0.0, 0.5, 1.0, 2.5}) {
    const auto integrand = [&](double x) {
      return -s * std::exp(-0.5 * x * x / (r * r)) * std::cyl_bessel_j(0.0, p * x) * x;
    };
    const double direct =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 12.0, 15, 1e-13);
    CHECK(std::abs(direct - v.fourier_hat(p)) < 1e-10);
  }
  CHECK(v.fourier_hat(0.0) == doctest::Approx(-s));
}
