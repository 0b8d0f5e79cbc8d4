#pragma once

#include <cmath>
#include <numbers>

#include <radbcs/radbcs.hpp>

namespace radbcs::testing {

inline constexpr double kPi = std::numbers::pi;

// The reference setup: attractive Gaussian well, lambda = 2, r = 1, mu = 1.
inline PotentialSpec default_spec(int dimension = 2) {
  return PotentialSpec::gaussian(2.0, 1.0, dimension);
}

// Attractive long-range well with a repulsive short-range core; the d-wave
// sector wins the competition.
inline PotentialSpec engineered_spec() {
  return PotentialSpec::two_gaussian({2.0, 3.0}, {-6.0, 0.5}, 2);
}

inline GridPtr make_grid(int n, double mu = 1.0, int dimension = 2) {
  return build_grid(default_p_max(mu), n, mu, dimension);
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// V^_ell of a Gaussian term in closed form. 2D:
//   (1/pi) \int_0^pi cos(ell phi) e^{a cos phi} dphi = I_ell(a),  a = r^2 p q,
// written with the scaled Bessel function to stay finite for large a.
// 3D: (1/2) \int_{-1}^{1} e^{a t} dt = sinh(a) / a.
inline double gaussian_sector_oracle(double strength, double range, int dimension,
                                     int ell, double p, double q) {
  const double r2 = range * range;
  const double a = r2 * p * q;
  const double pre = -strength * std::pow(range, dimension);
  if (dimension == 2) {
    const double i_scaled = std::cyl_bessel_i(static_cast<double>(std::abs(ell)), a) *
                            std::exp(-a);
    return pre * std::exp(-0.5 * r2 * (p - q) * (p - q)) * i_scaled;
  }
  const double mean = a < 1e-8 ? 1.0 : -std::expm1(-2.0 * a) / (2.0 * a);
  return pre * std::exp(-0.5 * r2 * (p - q) * (p - q)) * mean;
}

}  // namespace radbcs::testing
