#include "radbcs/analysis.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "radbcs/errors.hpp"
#include "radbcs/parallel.hpp"

namespace radbcs {

namespace {

constexpr double kPi = std::numbers::pi;

double refine_crossing(const SectorKernel& kernel, double mu, int index, double lo,
                       double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sector_eigenvalue(kernel, mu, mid, index) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace

CurveSet eigenvalue_curves(const SectorFamily& family, double mu,
                           const std::vector<double>& temperatures, int count,
                           unsigned threads) {
  if (temperatures.empty()) throw InvalidInput("temperature mesh is empty");
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    if (!(temperatures[i] > 0.0) || !std::isfinite(temperatures[i]))
      throw InvalidInput("mesh temperatures must be positive");
    if (i > 0 && !(temperatures[i] > temperatures[i - 1]))
      throw InvalidInput("temperature mesh must be strictly ascending");
  }
  if (count < 1) throw InvalidInput("need at least one eigenvalue per sector");

  const auto sectors = family.sectors();
  const std::size_t nt = temperatures.size();
  std::vector<Eigen::VectorXd> low(nt * sectors.size());
  parallel_for(low.size(), threads, [&](std::size_t job) {
    const std::size_t t = job / sectors.size();
    const std::size_t s = job % sectors.size();
    const auto a = assemble_operator({mu, temperatures[t]}, family.at(sectors[s]));
    low[job] = lowest_eigenvalues_only(a, count);
  });

  CurveSet out;
  out.temperatures = temperatures;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const Eigen::Index available = low[s].size();
    for (Eigen::Index k = 0; k < available; ++k) {
      auto& track = out.tracks[{sectors[s], static_cast<int>(k)}];
      track.resize(nt);
      for (std::size_t t = 0; t < nt; ++t) track[t] = low[t * sectors.size() + s][k];
    }
  }

  std::vector<std::pair<std::pair<int, int>, std::size_t>> brackets;
  for (const auto& [key, track] : out.tracks)
    for (std::size_t t = 0; t + 1 < nt; ++t)
      if (track[t] < 0.0 && track[t + 1] >= 0.0) brackets.push_back({key, t});
  std::vector<Crossing> found(brackets.size());
  parallel_for(brackets.size(), threads, [&](std::size_t b) {
    const auto& [key, t] = brackets[b];
    const double tc = refine_crossing(family.at(key.first), mu, key.second,
                                      temperatures[t], temperatures[t + 1]);
    found[b] = {tc, key.first, key.second};
  });
  std::sort(found.begin(), found.end(), [](const Crossing& a, const Crossing& b) {
    if (a.temperature != b.temperature) return a.temperature > b.temperature;
    return std::pair(a.ell, a.index) < std::pair(b.ell, b.index);
  });
  out.crossings = std::move(found);
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidInput("line fit needs at least two (x, y) pairs");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = x[static_cast<std::size_t>(i)];
    a(i, 1) = 1.0;
    b[i] = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  const double mean = b.mean();
  const double ss_tot = (b.array() - mean).square().sum();
  const double ss_res = (a * c - b).squaredNorm();
  return {c[0], c[1], ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

ScalingFit scaling_fit(const SectorKernel& kernel, double mu, double tc, int k_first,
                       int k_last, const GapSolverOptions& options) {
  if (!(tc > 0.0)) throw InvalidInput("scaling fit needs T_c > 0");
  if (k_first < 1 || k_last < k_first) throw InvalidInput("invalid k range");
  ScalingFit fit;
  std::vector<double> lx, ly, la;
  std::optional<GridFunction> warm;
  for (int k = k_first; k <= k_last; ++k) {
    ScalingPoint pt;
    pt.k = k;
    pt.distance = tc * std::ldexp(1.0, -k);
    pt.temperature = tc - pt.distance;
    if (pt.distance < 1e-3 * tc) {
      fit.warnings.push_back("k = " + std::to_string(k) +
                             " lies within 1e-3 T_c of T_c; excluded");
      fit.points.push_back(pt);
      continue;
    }
    const auto gap = solve_gap(kernel, {mu, pt.temperature}, warm ? &*warm : nullptr,
                               options);
    pt.converged = gap.converged;
    pt.residual = gap.residual;
    pt.delta_sup = gap_sup_norm(gap, kernel);
    const auto state = construct_state(gap);
    pt.alpha_norm = std::sqrt(inner_product(state.sigma, state.sigma));
    fit.points.push_back(pt);
    if (!gap.converged || !(pt.delta_sup > 0.0)) {
      std::ostringstream msg;
      msg << "k = " << k << " (T = " << pt.temperature
          << ") did not converge to a nontrivial gap; excluded";
      fit.warnings.push_back(msg.str());
      continue;
    }
    warm = gap.values;
    lx.push_back(std::log(pt.distance));
    ly.push_back(std::log(pt.delta_sup));
    la.push_back(std::log(pt.alpha_norm));
  }
  if (lx.size() < 4)
    throw InvalidInput("scaling fit needs at least four converged points");
  const auto d = fit_line(lx, ly);
  const auto a = fit_line(lx, la);
  fit.slope = d.slope;
  fit.intercept = d.intercept;
  fit.r2 = d.r2;
  fit.alpha_slope = a.slope;
  fit.alpha_r2 = a.r2;
  return fit;
}

bool a_priori_bound_holds(double delta_sup, double v_l2, double mu) {
  const double v4 = std::pow(v_l2, 4);
  return delta_sup * delta_sup <= v4 * std::pow(kPi, 4) / 32.0 + mu * mu;
}

WeakCouplingReport weak_coupling_sector(const PotentialSpec& spec, double mu,
                                        double lambda_scale, int ell_max) {
  if (!(mu > 0.0)) throw DomainError("weak coupling needs mu > 0 (a Fermi circle)");
  if (spec.dimension() == 3) ell_max = 0;
  if (ell_max < 0 || ell_max % 2 != 0)
    throw ConfigError("ell_max must be a nonnegative even integer");
  const auto scaled = spec.scaled(lambda_scale);
  const double kf = std::sqrt(mu);
  WeakCouplingReport r;
  double best = 0.0;
  bool first = true;
  for (int ell = 0; ell <= ell_max; ell += 2) {
    const double v = angular_kernel(scaled, ell, kf, kf);
    r.diagonal[ell] = v;
    if (first || v < best) {
      best = v;
      r.predicted_ell0 = ell;
      first = false;
    }
  }
  const double tie_tol = 1e-12 * std::max(1.0, std::abs(best));
  for (const auto& [ell, v] : r.diagonal)
    if (ell != r.predicted_ell0 && std::abs(v - best) <= tie_tol) r.tie = true;
  return r;
}

Eigen::MatrixXcd fermi_circle_matrix(const PotentialSpec& spec, double mu, int n_max,
                                     int n_angles) {
  if (spec.dimension() != 2) throw DomainError("the Fermi circle exists in 2D only");
  if (!(mu > 0.0)) throw DomainError("Fermi circle needs mu > 0");
  if (n_max < 0 || n_angles < 2 * n_max + 2)
    throw InvalidInput("too few angles for the requested modes");
  const double kf = std::sqrt(mu);
  const double h = 2.0 * kPi / n_angles;
  // V^(|p - q|) depends only on the angle difference.
  Eigen::VectorXd ring(n_angles);
  for (int j = 0; j < n_angles; ++j)
    ring[j] = spec.fourier_hat(kf * std::sqrt(std::max(0.0, 2.0 - 2.0 * std::cos(h * j))));
  Eigen::MatrixXd v(n_angles, n_angles);
  for (int a = 0; a < n_angles; ++a)
    for (int b = 0; b < n_angles; ++b) v(a, b) = ring[(a - b + n_angles) % n_angles];
  const int modes = 2 * n_max + 1;
  Eigen::MatrixXcd basis(n_angles, modes);
  for (int a = 0; a < n_angles; ++a)
    for (int n = -n_max; n <= n_max; ++n)
      basis(a, n + n_max) = std::polar(1.0 / std::sqrt(2.0 * kPi), n * h * a);
  // (1/2 pi)-normalized modes, trapezoid weights h on both angles.
  return h * h * (basis.adjoint() * v.cast<std::complex<double>>() * basis);
}

}  // namespace radbcs

namespace radbcs {

void perturb_state(const BcsState& state, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v, double h, GridFunction& gamma,
                   GridFunction& sigma) {
  const auto n = static_cast<Eigen::Index>(state.gamma.size());
  if (u.size() != n || v.size() != n)
    throw InvalidInput("perturbation directions do not match the grid");
  Eigen::VectorXd g(n);
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double g0 = state.gamma.values()[i];
    const double s0 = state.sigma.values()[i];
    // Eigen-coordinates: gamma - 1/2 = r cos(2 theta), sigma = -r sin(2 theta),
    // r = 1/2 - l.
    const double l = std::max(lower_occupation(g0, s0), 1e-300);
    const double theta = 0.5 * std::atan2(-s0, g0 - 0.5);
    const double y = std::log1p(-l) - std::log(l) + h * u[i];
    const double l1 = y > 0.0 ? std::exp(-y) / (1.0 + std::exp(-y)) : 1.0 / (1.0 + std::exp(y));
    const double r = 0.5 - l1;
    const double t1 = theta + h * v[i];
    g[i] = 0.5 + r * std::cos(2.0 * t1);
    s[i] = -r * std::sin(2.0 * t1);
  }
  gamma = GridFunction(state.gamma.grid(), std::move(g));
  sigma = GridFunction(state.sigma.grid(), std::move(s));
}

StationarityReport free_energy_stationarity(const BcsState& state,
                                            const SectorKernel& kernel, double v_sup,
                                            int directions, unsigned long seed,
                                            double h) {
  if (directions < 1 || !(h > 0.0)) throw InvalidInput("invalid stationarity probe");
  const DispersionParams params{state.mu, state.temperature};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(state.gamma.size());
  StationarityReport r;
  r.scale = std::max({1.0, std::abs(state.mu), v_sup});
  GridFunction gp, sp, gm, sm;
  for (int d = 0; d < directions; ++d) {
    Eigen::VectorXd u(n);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) u[i] = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    perturb_state(state, u, v, h, gp, sp);
    perturb_state(state, u, v, -h, gm, sm);
    const double fp = free_energy_relative(gp, sp, kernel, params);
    const double fm = free_energy_relative(gm, sm, kernel, params);
    const double deriv = (fp - fm) / (2.0 * h);
    r.derivatives.push_back(deriv);
    r.max_abs = std::max(r.max_abs, std::abs(deriv));
  }
  return r;
}

}  // namespace radbcs
