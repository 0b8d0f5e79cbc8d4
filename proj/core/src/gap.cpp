#include "radbcs/gap.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "radbcs/errors.hpp"

namespace radbcs {

namespace {

// tanh(E / 2T) / E = 1 / K_T^Delta as a function of E >= 0.
double phi(double e, double t) {
  const double x = e / (2.0 * t);
  if (x < 1e-4) return (1.0 - x * x / 3.0) / (2.0 * t);
  return std::tanh(x) / e;
}

// phi'(E) / E, finite at E = 0.
double dphi_over_e(double e, double t) {
  const double x = e / (2.0 * t);
  if (x < 1e-4) return -1.0 / (12.0 * t * t * t);
  const double c = std::cosh(x);
  const double sech2 = 1.0 / (c * c);
  return (sech2 / (2.0 * t * e) - std::tanh(x) / (e * e)) / e;
}

Eigen::VectorXd dispersion(const RadialGrid& grid, double mu) {
  return (grid.nodes().array().square() - mu).matrix();
}

Eigen::VectorXd inverse_symbol(const Eigen::VectorXd& k, const Eigen::VectorXd& d,
                               double t) {
  Eigen::VectorXd out(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) out[i] = phi(std::hypot(k[i], d[i]), t);
  return out;
}

double sup_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

void require_positive_temperature(const DispersionParams& params) {
  params.validate();
  if (!(params.temperature > 0.0))
    throw DomainError("the gap equation needs T > 0");
}

void normalize_phase(Eigen::VectorXd& d, const RadialGrid& grid, double mu) {
  const auto star = static_cast<Eigen::Index>(grid.nearest_node(std::sqrt(std::max(mu, 0.0))));
  double ref = d[star];
  if (ref == 0.0) {
    Eigen::Index imax = 0;
    d.cwiseAbs().maxCoeff(&imax);
    ref = d[imax];
  }
  if (ref < 0.0) d = -d;
}

// Fixed-point problem Delta = -Vt h(Delta), Vt = (2 pi)^(-d/2) raw diag(w mu).
class GapProblem {
 public:
  GapProblem(const SectorKernel& kernel, const DispersionParams& params)
      : t_(params.temperature),
        k_(dispersion(*kernel.grid(), params.mu)),
        vt_(kernel.prefactor() *
            (kernel.raw_values() * kernel.grid()->measure_weights().asDiagonal())) {}

  Eigen::VectorXd map(const Eigen::VectorXd& d) const {
    return -(vt_ * d.cwiseProduct(inverse_symbol(k_, d, t_)));
  }

  Eigen::MatrixXd jacobian_of_residual(const Eigen::VectorXd& d) const {
    Eigen::VectorXd slope(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const double e = std::hypot(k_[i], d[i]);
      slope[i] = phi(e, t_) + d[i] * d[i] * dphi_over_e(e, t_);
    }
    Eigen::MatrixXd j = vt_ * slope.asDiagonal();
    j.diagonal().array() += 1.0;
    return j;
  }

 private:
  double t_;
  Eigen::VectorXd k_;
  Eigen::MatrixXd vt_;
};

class Trace {
 public:
  void push(double r) {
    history_.push_back(r);
    if (history_.size() > 8) history_.pop_front();
  }
  [[noreturn]] void diverge(int iteration) const {
    std::ostringstream msg;
    msg << "gap iteration produced NaN at iteration " << iteration
        << "; recent residuals:";
    for (double r : history_) msg << ' ' << r;
    throw Divergence(msg.str());
  }

 private:
  std::deque<double> history_;
};

struct Attempt {
  Eigen::VectorXd delta;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

Attempt iterate(const GapProblem& problem, Eigen::VectorXd d,
                const GapSolverOptions& opt, double scale) {
  Trace trace;
  Attempt out;
  int iters = 0;
  Eigen::VectorXd g = problem.map(d);
  double r = sup_abs(d - g);
  if (!std::isfinite(r)) trace.diverge(iters);
  trace.push(r);

  // Damped iteration: moves a generic start onto the solution branch.
  const int picard_cap = std::min(opt.max_iter, 300);
  double m = opt.mixing;
  int halvings = 0;
  double checkpoint = r;
  while (iters < picard_cap && r > 1e-2 * scale && r > opt.tol) {
    Eigen::VectorXd nd = (1.0 - m) * d + m * g;
    Eigen::VectorXd ng = problem.map(nd);
    const double nr = sup_abs(nd - ng);
    ++iters;
    if (!std::isfinite(nr)) trace.diverge(iters);
    trace.push(nr);
    if (nr > r && halvings < 4) {
      m *= 0.5;
      ++halvings;
    }
    d = std::move(nd);
    g = std::move(ng);
    r = nr;
    if (iters % 50 == 0) {
      if (r > 0.5 * checkpoint) break;  // stagnating: hand over to Newton
      checkpoint = r;
    }
  }

  // Newton with backtracking. Near T_c the Jacobian is nearly singular and a
  // small residual does not imply a small error, so the step must be small too.
  while (iters < opt.max_iter) {
    const Eigen::VectorXd f = d - g;
    r = sup_abs(f);
    const Eigen::VectorXd step = problem.jacobian_of_residual(d).partialPivLu().solve(f);
    ++iters;
    if (!step.allFinite()) trace.diverge(iters);
    const double step_size = sup_abs(step);
    if (r <= opt.tol && step_size <= opt.tol) {
      d -= step;
      g = problem.map(d);
      r = sup_abs(d - g);
      out.converged = r <= opt.tol;
      break;
    }
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      Eigen::VectorXd nd = d - t * step;
      Eigen::VectorXd ng = problem.map(nd);
      const double nr = sup_abs(nd - ng);
      if (!std::isfinite(nr)) trace.diverge(iters);
      if (nr < r || (nr <= opt.tol && r <= opt.tol)) {
        d = std::move(nd);
        g = std::move(ng);
        r = nr;
        accepted = true;
        break;
      }
    }
    trace.push(r);
    if (!accepted) {
      // At the rounding floor of the residual no step can improve it.
      out.converged = r <= opt.tol;
      break;
    }
  }
  out.delta = std::move(d);
  out.residual = sup_abs(out.delta - problem.map(out.delta));
  out.converged = out.converged && out.residual <= opt.tol;
  out.iterations = iters;
  return out;
}

}  // namespace

double energy_scale(const SectorKernel& kernel, double mu) {
  const double v = kernel.raw_values().size() ? kernel.raw_values().cwiseAbs().maxCoeff() : 0.0;
  const double s = std::max(std::abs(mu), v);
  return s > 0.0 ? s : 1.0;
}

GridFunction gap_map(const SectorKernel& kernel, const DispersionParams& params,
                     const GridFunction& delta) {
  require_positive_temperature(params);
  if (!same_grid(delta.grid(), kernel.grid()))
    throw InvalidInput("gap_map: gap function lives on a different grid");
  const GapProblem problem(kernel, params);
  return GridFunction(kernel.grid(), problem.map(delta.values()));
}

Eigen::VectorXd gap_map_slope(const DispersionParams& params, const RadialGrid& grid,
                              const Eigen::VectorXd& delta) {
  require_positive_temperature(params);
  const auto k = dispersion(grid, params.mu);
  Eigen::VectorXd out(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const double e = std::hypot(k[i], delta[i]);
    out[i] = phi(e, params.temperature) +
             delta[i] * delta[i] * dphi_over_e(e, params.temperature);
  }
  return out;
}

GapFunction solve_gap(const SectorKernel& kernel, const DispersionParams& params,
                      const GridFunction* init, const GapSolverOptions& options) {
  require_positive_temperature(params);
  if (!(options.mixing > 0.0 && options.mixing <= 1.0))
    throw InvalidInput("mixing must lie in (0, 1]");
  if (!(options.tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (options.max_iter < 1) throw InvalidInput("max_iter must be positive");
  if (init && !same_grid(init->grid(), kernel.grid()))
    throw InvalidInput("initial gap lives on a different grid");

  const auto& grid = *kernel.grid();
  const GapProblem problem(kernel, params);
  const double scale = energy_scale(kernel, params.mu);

  // Lowest eigenpair of the linear operator: default start and a check that
  // a trivial answer below T_c is a missed branch rather than the solution.
  const auto linear = lowest_eigenvalues(assemble_operator(params, kernel), 1);
  const bool below_tc = linear.eigenvalues[0] < -1e-12 * scale;
  Eigen::VectorXd shape = kt_diagonal(params, grid).cwiseProduct(
      from_symmetric(kernel.grid(), linear.eigenvectors.col(0)).values());
  shape /= sup_abs(shape);

  Attempt best;
  const double amplitudes[] = {0.1, 1.0, 0.01};
  int used = 0;
  for (std::size_t a = 0; a < std::size(amplitudes); ++a) {
    Eigen::VectorXd start =
        (init && a == 0) ? init->values() : Eigen::VectorXd(amplitudes[a] * scale * shape);
    GapSolverOptions opt = options;
    opt.max_iter = std::max(1, options.max_iter - used);
    Attempt attempt = iterate(problem, std::move(start), opt, scale);
    used += attempt.iterations;
    const bool trivial = sup_abs(attempt.delta) <= 10.0 * options.tol;
    if (a == 0 || (attempt.converged && !trivial) || (!best.converged && attempt.converged))
      best = std::move(attempt);
    const bool best_trivial = sup_abs(best.delta) <= 10.0 * options.tol;
    if (!(best.converged && best_trivial && below_tc) || used >= options.max_iter) break;
  }

  normalize_phase(best.delta, grid, params.mu);
  GapFunction out;
  out.ell = kernel.ell();
  out.temperature = params.temperature;
  out.mu = params.mu;
  out.values = GridFunction(kernel.grid(), std::move(best.delta));
  out.converged = best.converged;
  out.iterations = used;
  out.residual = best.residual;
  return out;
}

double gap_value_at(const GapFunction& gap, const SectorKernel& kernel, double p) {
  if (!same_grid(gap.values.grid(), kernel.grid()))
    throw InvalidInput("gap_value_at: gap function lives on a different grid");
  const auto k = dispersion(*kernel.grid(), gap.mu);
  const auto& d = gap.values.values();
  return -kernel.apply_at(p, d.cwiseProduct(inverse_symbol(k, d, gap.temperature)));
}

double gap_sup_norm(const GapFunction& gap, const SectorKernel& kernel) {
  const auto& d = gap.values.values();
  const auto& p = kernel.grid()->nodes();
  Eigen::Index best_i = 0;
  double best = d.cwiseAbs().maxCoeff(&best_i);
  if (!kernel.has_kernel_function() || best == 0.0) return best;

  auto f = [&](double x) { return std::abs(gap_value_at(gap, kernel, x)); };
  best = std::max(best, f(0.0));
  double lo = best_i > 0 ? p[best_i - 1] : 0.0;
  double hi = best_i + 1 < p.size() ? p[best_i + 1] : kernel.grid()->p_max();
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - ratio * (hi - lo);
  double b = lo + ratio * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  for (int it = 0; it < 60 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - ratio * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + ratio * (hi - lo);
      fb = f(b);
    }
  }
  return std::max({best, fa, fb});
}

double el_residual(const SectorKernel& kernel, const DispersionParams& params,
                   const GridFunction& delta) {
  const auto state = construct_state(delta, kernel.ell(), params);
  const Eigen::VectorXd s = to_symmetric(state.sigma);
  const Eigen::VectorXd kd = kt_diagonal(params, *kernel.grid(), &delta);
  return (kd.cwiseProduct(s) + kernel.matrix() * s).norm();
}

BcsState construct_state(const GapFunction& gap) {
  return construct_state(gap.values, gap.ell, {gap.mu, gap.temperature});
}

BcsState construct_state(const GridFunction& delta, int ell,
                         const DispersionParams& params) {
  require_positive_temperature(params);
  const auto& grid = delta.grid();
  const auto k = dispersion(*grid, params.mu);
  const double t = params.temperature;
  Eigen::VectorXd gamma(k.size());
  Eigen::VectorXd sigma(k.size());
  Eigen::VectorXd energy(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const double dl = delta.values()[i];
    const double e = std::hypot(k[i], dl);
    energy[i] = e;
    sigma[i] = -0.5 * dl * phi(e, t);
    if (e == 0.0) {
      gamma[i] = 0.5;
      continue;
    }
    // 1/2 - |k| tanh(x) / (2E) without cancellation for large |k|.
    const double x = e / (2.0 * t);
    const double ak = std::abs(k[i]);
    const double q = std::exp(-2.0 * x);
    const double small = q / (1.0 + q) + std::tanh(x) * dl * dl / (2.0 * e * (e + ak));
    gamma[i] = k[i] >= 0.0 ? small : 1.0 - small;
  }
  BcsState s;
  s.ell = ell;
  s.temperature = t;
  s.mu = params.mu;
  s.gamma = GridFunction(grid, std::move(gamma));
  s.sigma = GridFunction(grid, std::move(sigma));
  s.energy = GridFunction(grid, std::move(energy));
  return s;
}

BcsState normal_state(const GridPtr& grid, const DispersionParams& params, int ell) {
  return construct_state(GridFunction(grid), ell, params);
}

Eigen::Matrix2d fermi_dirac_matrix(double k, double delta, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("fermi_dirac_matrix needs T > 0");
  Eigen::Matrix2d h;
  h << k, delta, delta, -k;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  Eigen::Vector2d occ;
  for (int i = 0; i < 2; ++i) {
    const double y = es.eigenvalues()[i] / temperature;
    occ[i] = y > 0.0 ? std::exp(-y) / (1.0 + std::exp(-y)) : 1.0 / (1.0 + std::exp(y));
  }
  return es.eigenvectors() * occ.asDiagonal() * es.eigenvectors().transpose();
}

double lower_occupation(double gamma, double sigma) {
  const double r = std::hypot(gamma - 0.5, sigma);
  return (gamma * (1.0 - gamma) - sigma * sigma) / (0.5 + r);
}

double node_entropy(double gamma, double sigma) {
  double l = lower_occupation(gamma, sigma);
  if (!std::isfinite(l) || l < -1e-12)
    throw AdmissibilityError("state is not admissible: occupation eigenvalue " +
                             std::to_string(l) + " outside [0, 1]");
  if (l <= 0.0) return 0.0;
  return -(l * std::log(l) + (1.0 - l) * std::log1p(-l));
}

double free_energy_relative(const BcsState& state, const SectorKernel& kernel) {
  return free_energy_relative(state.gamma, state.sigma, kernel,
                              {state.mu, state.temperature});
}

double free_energy_relative(const GridFunction& gamma, const GridFunction& sigma,
                            const SectorKernel& kernel, const DispersionParams& params) {
  if (!same_grid(gamma.grid(), kernel.grid()) || !same_grid(sigma.grid(), kernel.grid()))
    throw InvalidInput("free energy: state lives on a different grid");
  const auto normal = normal_state(kernel.grid(), params, kernel.ell());
  const auto k = dispersion(*kernel.grid(), params.mu);
  const auto& wm = kernel.grid()->measure_weights();
  const double t = params.temperature;
  double local = 0.0;
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const double g = gamma.values()[i];
    const double g0 = normal.gamma.values()[i];
    const double ds = node_entropy(g, sigma.values()[i]) - node_entropy(g0, 0.0);
    local += wm[i] * (k[i] * (g - g0) - t * ds);
  }
  const Eigen::VectorXd s = to_symmetric(sigma);
  return local + s.dot(kernel.matrix() * s);
}

}  // namespace radbcs
