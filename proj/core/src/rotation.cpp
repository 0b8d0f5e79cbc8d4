#include <cmath>
#include <numbers>

#include "radbcs/analysis.hpp"
#include "radbcs/errors.hpp"
#include "radbcs/parallel.hpp"

namespace radbcs {

double PolarGapField::angle(int j) const {
  return 2.0 * std::numbers::pi * j / n_angles;
}

RotationTestReport rotation_test(const PolarGapField& delta, const DispersionParams& params,
                                 const PotentialSpec& spec, int n_rotations, int m_max,
                                 unsigned threads) {
  params.validate();
  if (!(params.temperature > 0.0)) throw DomainError("rotation test needs T > 0");
  if (spec.dimension() != 2 || !delta.grid || delta.grid->dimension() != 2)
    throw DomainError("the rotation test is two-dimensional");
  if (n_rotations < 1 || delta.n_angles % n_rotations != 0)
    throw InvalidInput("n_angles must be a multiple of the number of rotations");
  if (m_max < 0 || 2 * m_max >= delta.n_angles)
    throw InvalidInput("m_max must be below n_angles / 2");
  const auto& grid = *delta.grid;
  const auto n = static_cast<Eigen::Index>(grid.size());
  const int m = delta.n_angles;
  if (delta.values.rows() != n || delta.values.cols() != m || !delta.values.allFinite())
    throw InvalidInput("polar gap field has the wrong shape or non-finite values");

  const double t = params.temperature;
  Eigen::MatrixXd kdelta(n, m);
  Eigen::MatrixXd alpha(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = grid.nodes()[i] * grid.nodes()[i] - params.mu;
    for (int j = 0; j < m; ++j) {
      const double d = delta.values(i, j);
      kdelta(i, j) = kt_of_energy(std::hypot(k, d), t);
      alpha(i, j) = -d / (2.0 * kdelta(i, j));
    }
  }
  const Eigen::VectorXd radial_w = grid.measure_weights() / m;
  const Eigen::MatrixXd alpha2 = alpha.array().square().matrix();

  RotationTestReport r;
  double max_var = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = delta.values.row(i).array();
    max_var = std::max(max_var, (row - row.mean()).square().mean());
  }
  r.degenerate = max_var < 1e-10;
  if (r.degenerate)
    r.notice = "radial input: the form is rotation invariant, the test is vacuous";

  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) r.baseline += radial_w[i] * alpha2(i, j) * kdelta(i, j);

  // <alpha, V alpha> = sum_m <a_m, V_m a_m> over angular Fourier modes.
  Eigen::MatrixXcd modes(n, 2 * m_max + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int q = -m_max; q <= m_max; ++q) {
      std::complex<double> sum = 0.0;
      for (int j = 0; j < m; ++j) sum += alpha(i, j) * std::polar(1.0, -q * delta.angle(j));
      modes(i, q + m_max) = sum / static_cast<double>(m);
    }
  const double mode_floor = 1e-14 * std::max(1e-300, modes.cwiseAbs().maxCoeff());
  std::vector<double> contributions(static_cast<std::size_t>(m_max + 1), 0.0);
  parallel_for(contributions.size(), threads, [&](std::size_t order) {
    const int q = static_cast<int>(order);
    const Eigen::VectorXcd plus = modes.col(q + m_max);
    const Eigen::VectorXcd minus = modes.col(-q + m_max);
    if (plus.cwiseAbs().maxCoeff() <= mode_floor && minus.cwiseAbs().maxCoeff() <= mode_floor)
      return;
    const auto kernel = SectorKernel::from_function(
        q, delta.grid, [&spec, q](double p, double pp) { return angular_coefficient(spec, q, p, pp); });
    const Eigen::VectorXcd d = grid.sqrt_measure_weights().cast<std::complex<double>>();
    const Eigen::MatrixXcd mat = kernel.matrix().cast<std::complex<double>>();
    double c = 0.0;
    const Eigen::VectorXcd sp = d.cwiseProduct(plus);
    c += (sp.adjoint() * mat * sp)(0, 0).real();
    if (q != 0) {
      const Eigen::VectorXcd sm = d.cwiseProduct(minus);
      c += (sm.adjoint() * mat * sm)(0, 0).real();
    }
    contributions[order] = c;
  });
  for (double c : contributions) r.interaction_term += c;

  const int stride = m / n_rotations;
  r.min_value = 0.0;
  double max_value = 0.0;
  for (int s = 0; s < n_rotations; ++s) {
    const int shift = s * stride;
    double q = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        q += radial_w[i] * alpha2(i, ((j - shift) % m + m) % m) * kdelta(i, j);
    const double value = q + r.interaction_term;
    r.angles.push_back(2.0 * std::numbers::pi * s / n_rotations);
    r.kinetic_part.push_back(q);
    r.values.push_back(value);
    if (s == 0 || value < r.min_value) {
      r.min_value = value;
      r.min_angle = r.angles.back();
    }
    if (s == 0 || value > max_value) max_value = value;
  }
  r.baseline += r.interaction_term;
  r.margin = r.baseline - r.min_value;
  r.variation = max_value - r.min_value;
  r.strictly_lowered = r.margin > 1e-10 * std::max(1.0, std::abs(r.baseline));
  return r;
}

}  // namespace radbcs
