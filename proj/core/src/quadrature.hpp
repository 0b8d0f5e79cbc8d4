#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace radbcs::detail {

// Boost's adaptive driver stops on an error relative to the running estimate,
// which never terminates early when the integral is ~0 (common for high-ell
// kernels far from the diagonal). This bisects on an absolute budget instead,
// using Boost's single-panel 31-point rule and its |K - G| error estimate.
template <class F>
double adaptive_gauss_kronrod(const F& f, double a, double b, double abs_tol,
                              int depth = 0) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &err);
  if (err <= abs_tol || depth >= 24) return value;
  const double mid = 0.5 * (a + b);
  return adaptive_gauss_kronrod(f, a, mid, 0.5 * abs_tol, depth + 1) +
         adaptive_gauss_kronrod(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace radbcs::detail
