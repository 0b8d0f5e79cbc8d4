// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "support.hpp"

using namespace radbcs;
using namespace radbcs::testing;

namespace {

const unsigned kThreads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
constexpr double kMu = 1.0;

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
  void info(const std::string& what) { lines.push_back("info  " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Fixture {
  GridPtr grid = make_grid(256);
  PotentialSpec spec = default_spec();
  SectorFamily family{spec, grid, 12, kThreads};
  CriticalReport report = critical_report(family, kMu, kThreads);
  double v_sup = spec.fourier_sup();
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

// Lowest eigenvalue of diag(K_T) + M with K_T computed here, not by the library.
double scan_eigenvalue(const SectorKernel& k, double t) {
  Eigen::MatrixXd a = k.matrix();
  const auto& p = k.grid()->nodes();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double x = p[i] * p[i] - kMu;
    a(i, i) += std::abs(x) < 1e-300 ? 2.0 * t : x / std::tanh(x / (2.0 * t));
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly)
      .eigenvalues()[0];
}

// First point of the T mesh {1e-4 k} where the lowest eigenvalue is >= 0:
// a 0.01 scan locates the crossing, then a 1e-4 scan resolves it.
double mesh_scan_tc(const SectorKernel& k) {
  constexpr double fine = 1e-4;
  if (scan_eigenvalue(k, fine) >= 0.0) return fine;
  int coarse = 1;
  while (scan_eigenvalue(k, 0.01 * coarse) < 0.0) ++coarse;
  for (int j = 100 * (coarse - 1) + 1; j <= 100 * coarse; ++j)
    if (scan_eigenvalue(k, fine * j) >= 0.0) return fine * j;
  return 0.01 * coarse;
}

// ---------------------------------------------------------------------------

Outcome c1_symbol() {
  Outcome o;
  for (double t : {0.01, 0.3, 5.0}) {
    const double v = kt_symbol({kMu, t}, std::sqrt(kMu));
    const double err = std::abs(v - 2.0 * t) / (2.0 * t);
    o.require(err <= 1e-10, fmt("T = %g: K_T(p_F) = %.17g, rel err %.2e", t, v, err));
  }
  return o;
}

Outcome bisection_vs_scan(const PotentialSpec& spec, const GridPtr& grid,
                          const std::vector<int>& sectors) {
  Outcome o;
  for (int ell : sectors) {
    const auto k = assemble_sector_kernel(spec, ell, grid, kThreads);
    const double tc = critical_temperature_sector(k, kMu);
    const double scan = mesh_scan_tc(k);
    const double diff = std::abs(tc - scan);
    o.require(diff <= 2e-4, fmt("ell = %d: bisection %.12f, mesh scan %.4f, |diff| %.2e", ell,
                                tc, scan, diff));
  }
  return o;
}

Outcome c2_oracle() {
  const auto& f = fixture();
  return bisection_vs_scan(f.spec, f.grid, {0, 2, 4});
}

Outcome c3_symmetry() {
  Outcome o;
  const auto& f = fixture();
  for (int ell = 2; ell <= 12; ell += 2) {
    const auto neg = assemble_sector_kernel(f.spec, -ell, f.grid, kThreads);
    const auto a = assemble_operator({kMu, 0.3}, f.family.at(ell));
    const auto b = assemble_operator({kMu, 0.3}, neg);
    using Solver = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>;
    const Eigen::VectorXd ea = Solver(a, Eigen::EigenvaluesOnly).eigenvalues();
    const Eigen::VectorXd eb = Solver(b, Eigen::EigenvaluesOnly).eigenvalues();
    const double diff = (ea - eb).cwiseAbs().maxCoeff();
    o.require(diff <= 1e-12, fmt("ell = +-%d: max spectral difference %.2e", ell, diff));
  }
  return o;
}

Outcome c4_monotone() {
  Outcome o;
  const auto& f = fixture();
  std::vector<double> mesh(50);
  for (int i = 0; i < 50; ++i) mesh[i] = f.report.tc * (0.02 + 1.98 * i / 49.0);
  const auto curves = eigenvalue_curves(f.family, kMu, mesh, 3, kThreads);
  double worst = 0.0;
  for (const auto& [key, track] : curves.tracks)
    for (std::size_t t = 0; t + 1 < track.size(); ++t)
      worst = std::max(worst, track[t] - track[t + 1]);
  o.require(worst <= 1e-8, fmt("%zu tracks on a 50-point mesh over [0.02, 2] T_c, "
                               "largest decrease %.2e",
                               curves.tracks.size(), worst));
  return o;
}

Outcome gap_linear_consistency(const SectorKernel& k, double tc) {
  Outcome o;
  const auto above = solve_gap(k, {kMu, tc * (1 + 1e-6)});
  o.require(above.converged && above.node_sup() < 1e-6,
            fmt("ell = %d, T = T_c (1 + 1e-6): converged %d, ||Delta|| = %.2e", k.ell(),
                above.converged, above.node_sup()));
  const DispersionParams below{kMu, tc * (1 - 1e-3)};
  const auto gap = solve_gap(k, below);
  const double sup = gap_sup_norm(gap, k);
  const double el = el_residual(k, below, gap.values);
  o.require(gap.converged && sup > 0.0 && el <= 1e-7,
            fmt("ell = %d, T = T_c (1 - 1e-3): converged %d, ||Delta|| = %.6e, EL residual %.2e",
                k.ell(), gap.converged, sup, el));
  return o;
}

Outcome c5_gap_linear() {
  Outcome o;
  const auto& f = fixture();
  for (const auto& [ell, tc] : f.report.tc_by_sector) {
    if (!(tc > 0.0)) continue;
    const auto sub = gap_linear_consistency(f.family.at(ell), tc);
    o.pass = o.pass && sub.pass;
    o.lines.insert(o.lines.end(), sub.lines.begin(), sub.lines.end());
  }
  o.info(fmt("sectors with T_c(ell) = 0 on this grid are skipped (%zu of %zu)",
             std::count_if(f.report.tc_by_sector.begin(), f.report.tc_by_sector.end(),
                           [](const auto& kv) { return kv.second == 0.0; }),
             f.report.tc_by_sector.size()));
  return o;
}

Outcome scaling(const SectorKernel& k, double tc, const PotentialSpec& spec) {
  Outcome o;
  const auto fit = scaling_fit(k, kMu, tc, 3, 8);
  o.require(fit.slope >= 0.4 && fit.slope <= 0.6 && fit.r2 >= 0.99,
            fmt("slope %.4f, r^2 %.6f (alpha: slope %.4f)", fit.slope, fit.r2, fit.alpha_slope));
  const double v2 = spec.l2_norm();
  const double bound = std::sqrt(std::pow(v2, 4) * std::pow(kPi, 4) / 32 + kMu * kMu);
  bool all = true;
  int used = 0;
  double worst = 0.0;
  for (const auto& p : fit.points) {
    if (!p.converged) continue;
    ++used;
    all = all && a_priori_bound_holds(p.delta_sup, v2, kMu);
    worst = std::max(worst, p.delta_sup);
  }
  o.require(all && used == static_cast<int>(fit.points.size()),
            fmt("a priori bound at %d converged points: max ||Delta|| %.4f <= %.4f", used,
                worst, bound));
  for (const auto& w : fit.warnings) o.info(w);
  return o;
}

Outcome c6_scaling() {
  const auto& f = fixture();
  return scaling(f.family.at(f.report.ell0), f.report.tc, f.spec);
}

// Positivity on the window and the expected failure below T~ for one spec.
void positivity_window(Outcome& o, const std::string& name, const SectorFamily& family,
                       const CriticalReport& rep, double v_sup) {
  const double tt = rep.t_tilde.value_or(0.0);
  const auto& k = family.at(rep.ell0);
  double worst = 1e300;
  bool all = true;
  for (int j = 1; j <= 5; ++j) {
    const double t = tt + (rep.tc - tt) * j / 6.0;
    const auto gap = solve_gap(k, {kMu, t});
    const auto pc = positivity_check(family, kMu, t, gap.values, v_sup, kThreads);
    all = all && pc.pass && gap.converged;
    worst = std::min(worst, pc.min_eigenvalue);
  }
  o.require(all, fmt("%s: T~ = %.6f, T_c = %.6f, min eigenvalue over 5 samples %.3e "
                     ">= %.1e",
                     name.c_str(), tt, rep.tc, worst, -1e-6 * v_sup));
  if (!rep.ell1) {
    o.info(name + ": no second crossing (ell1 absent); the clause below T~ does not apply");
    return;
  }
  const double t = 0.9 * tt;
  const auto gap = solve_gap(k, {kMu, t});
  const auto pc = positivity_check(family, kMu, t, gap.values, v_sup, kThreads);
  o.require(pc.min_eigenvalue < -1e-4,
            fmt("%s: at 0.9 T~ = %.6f (ell1 = %d) min eigenvalue %.4e in sector %d < -1e-4",
                name.c_str(), t, *rep.ell1, pc.min_eigenvalue, pc.argmin_sector));
}

Outcome c7_positivity() {
  Outcome o;
  const auto& f = fixture();
  positivity_window(o, "default", f.family, f.report, f.v_sup);

  // A spec where ell1 exists exercises the second clause.
  const auto eng = engineered_spec();
  const SectorFamily family(eng, f.grid, 12, kThreads);
  const auto rep = critical_report(family, kMu, kThreads);
  positivity_window(o, "d-wave spec", family, rep, eng.fourier_sup());

  // On a finer grid the default spec acquires a tiny T_c(2); the gap then
  // suppresses the competing sector and positivity persists below T~.
  const auto fine = make_grid(512);
  const SectorFamily ff(f.spec, fine, 4, kThreads);
  const auto fr = critical_report(ff, kMu, kThreads);
  if (fr.ell1 && fr.t_tilde && *fr.t_tilde > 0.0) {
    const double t = 0.9 * *fr.t_tilde;
    const auto gap = solve_gap(ff.at(fr.ell0), {kMu, t});
    const auto pc = positivity_check(ff, kMu, t, gap.values, f.v_sup, kThreads);
    o.info(fmt("default spec, N = 512: T~ = %.4e (ell1 = %d); at 0.9 T~ min eigenvalue "
               "%.4e (not required)",
               *fr.t_tilde, *fr.ell1, pc.min_eigenvalue));
  }
  return o;
}

Outcome free_energy(const SectorKernel& k, double tc, double v_sup) {
  Outcome o;
  bool below_ok = true, above_ok = true;
  double max_below = -1e300, min_above = 1e300;
  for (int j = 0; j < 10; ++j) {
    const double t = tc * (0.125 + 0.15 * j);  // 0.125 .. 1.475, T_c itself excluded
    const auto gap = solve_gap(k, {kMu, t});
    const double df = free_energy_relative(construct_state(gap), k);
    if (t < tc) {
      below_ok = below_ok && df < 0.0;
      max_below = std::max(max_below, df);
    } else {
      above_ok = above_ok && df >= -1e-10;
      min_above = std::min(min_above, df);
    }
  }
  o.require(below_ok, fmt("T < T_c: max Delta F = %.4e < 0", max_below));
  o.require(above_ok, fmt("T >= T_c: min Delta F = %.4e >= -1e-10", min_above));
  for (double frac : {0.5, 0.9}) {
    const auto gap = solve_gap(k, {kMu, frac * tc});
    const auto st = free_energy_stationarity(construct_state(gap), k, v_sup, 20, 1);
    o.require(st.max_abs <= 1e-5 * st.scale,
              fmt("T = %.2f T_c: max directional derivative %.2e <= %.1e", frac, st.max_abs,
                  1e-5 * st.scale));
  }
  return o;
}

Outcome c8_free_energy() {
  const auto& f = fixture();
  return free_energy(f.family.at(f.report.ell0), f.report.tc, f.v_sup);
}

double kt_growth_constant(const GridPtr& grid, double tc, double t) {
  double sup = 0.0;
  for (Eigen::Index i = 0; i < grid->nodes().size(); ++i) {
    const double p = grid->nodes()[i];
    sup = std::max(sup, kt_symbol({kMu, tc}, p) - kt_symbol({kMu, t}, p));
  }
  return sup / (tc - t);
}

Outcome c9_bounds() {
  Outcome o;
  const auto& f = fixture();
  const auto& k = f.family.at(f.report.ell0);
  const double tc = f.report.tc;
  double lo = 1e300, excess = -1e300;
  for (double frac : {0.2, 0.5, 0.8, 0.95}) {
    const DispersionParams par{kMu, frac * tc};
    const auto gap = solve_gap(k, par);
    for (Eigen::Index i = 0; i < gap.values.values().size(); ++i) {
      const double p = f.grid->nodes()[i];
      const double d = std::abs(gap.values.values()[i]);
      const double diff = kt_delta_symbol(par, p, d) - kt_symbol(par, p);
      lo = std::min(lo, diff);
      excess = std::max(excess, diff - d);
    }
  }
  o.require(lo >= 0.0 && excess <= 0.0,
            fmt("0 <= K^Delta - K <= |Delta| at all nodes, 4 temperatures "
                "(min %.2e, max excess %.2e)",
                lo, excess));

  const auto coarse = make_grid(128);
  const double tc128 = critical_temperature_sector(
      assemble_sector_kernel(f.spec, f.report.ell0, coarse, kThreads), kMu);
  double worst = 0.0, neg = 0.0;
  for (double frac : {0.2, 0.5, 0.8, 0.95}) {
    const double c256 = kt_growth_constant(f.grid, tc, frac * tc);
    const double c128 = kt_growth_constant(coarse, tc128, frac * tc128);
    worst = std::max(worst, rel_diff(c256, c128));
    for (Eigen::Index i = 0; i < f.grid->nodes().size(); ++i) {
      const double p = f.grid->nodes()[i];
      neg = std::min(neg, kt_symbol({kMu, tc}, p) - kt_symbol({kMu, frac * tc}, p));
    }
    o.info(fmt("T = %.2f T_c: C = sup(K_Tc - K_T)/(T_c - T) = %.6f (N = 256), %.6f (N = 128)",
               frac, c256, c128));
  }
  o.require(neg >= 0.0 && worst <= 0.1,
            fmt("K_Tc - K_T >= 0; C stable under doubling (max rel change %.2e)", worst));
  return o;
}

Outcome c10_weak() {
  Outcome o;
  const auto& f = fixture();
  const double scale = 0.05;
  struct Case {
    std::string name;
    PotentialSpec base;
    int expect;
  };
  const std::vector<Case> cases{{"Gaussian, strength 40", PotentialSpec::gaussian(40, 1, 2), 0},
                                {"d-wave spec x 20", engineered_spec().scaled(20), 2}};
  for (const auto& c : cases) {
    const auto w = weak_coupling_sector(c.base, kMu, scale);
    const auto full = critical_report(c.base.scaled(scale), f.grid, kMu, 12, kThreads);
    o.require(!w.tie && full.tc > 0.0 && w.predicted_ell0 == full.ell0 &&
                  full.ell0 == c.expect,
              fmt("%s at scale %.2f: Fermi-circle ell0 = %d, full ell0 = %d (T_c %.6f)",
                  c.name.c_str(), scale, w.predicted_ell0, full.ell0, full.tc));
  }
  // The unit-strength specs scaled by 0.05 have T_c far below the bisection floor.
  for (const auto& [name, spec] :
       std::vector<std::pair<std::string, PotentialSpec>>{{"default", f.spec},
                                                          {"d-wave", engineered_spec()}}) {
    const auto w = weak_coupling_sector(spec, kMu, scale);
    const auto full = critical_report(spec.scaled(scale), f.grid, kMu, 12, kThreads);
    o.info(fmt("%s spec x %.2f: prediction ell0 = %d, full T_c = %.3e (%s)", name.c_str(), scale,
               w.predicted_ell0, full.tc,
               full.tc > 0.0 ? (full.ell0 == w.predicted_ell0 ? "agrees" : "disagrees")
                             : "unresolvable on this grid"));
  }
  return o;
}

Outcome c11_rotation() {
  Outcome o;
  const auto& f = fixture();
  const DispersionParams par{kMu, 0.5 * f.report.tc};
  const auto gap = solve_gap(f.family.at(0), par);
  const Eigen::VectorXd radial = gap.values.values();
  auto field = [&](double a) {
    PolarGapField g;
    g.grid = f.grid;
    g.n_angles = 128;
    g.values.resize(radial.size(), g.n_angles);
    for (int j = 0; j < g.n_angles; ++j)
      g.values.col(j) = radial * (1.0 + a * std::cos(2.0 * g.angle(j)));
    return g;
  };
  const auto aniso = rotation_test(field(0.5), par, f.spec, 64, 16, kThreads);
  const double floor = 1e-10 * std::max(1.0, std::abs(aniso.baseline));
  o.require(aniso.strictly_lowered && aniso.margin > floor,
            fmt("non-radial gap: margin %.6e at angle %.4f (floor %.1e)", aniso.margin,
                aniso.min_angle, floor));
  const auto rad = rotation_test(field(0.0), par, f.spec, 64, 16, kThreads);
  o.require(rad.variation < 1e-10 && rad.degenerate,
            fmt("radial gap: variation %.2e < 1e-10", rad.variation));
  return o;
}

Outcome c12_three_d() {
  Outcome o;
  const auto grid = make_grid(256, kMu, 3);
  const auto spec = default_spec(3);
  const auto k = assemble_sector_kernel(spec, 0, grid, kThreads);
  const double tc = critical_temperature_sector(k, kMu);
  o.info(fmt("3D Gaussian well, strength 2, range 1: T_c = %.12f", tc));
  auto merge = [&o](const std::string& tag, const Outcome& sub) {
    o.pass = o.pass && sub.pass;
    for (const auto& l : sub.lines) o.lines.push_back(l.substr(0, 6) + "[" + tag + "] " + l.substr(6));
  };
  merge("2", bisection_vs_scan(spec, grid, {0}));
  merge("5", gap_linear_consistency(k, tc));
  merge("6", scaling(k, tc, spec));
  merge("8", free_energy(k, tc, spec.fourier_sup()));
  return o;
}

Outcome c13_convergence() {
  Outcome o;
  const auto& f = fixture();
  const auto coarse = make_grid(128);
  const auto k128 = assemble_sector_kernel(f.spec, 0, coarse, kThreads);
  const auto& k256 = f.family.at(0);
  const double t128 = critical_temperature_sector(k128, kMu);
  const double t256 = f.report.tc_by_sector.at(0);
  const double dt = rel_diff(t128, t256);
  o.require(dt < 1e-6, fmt("T_c: %.15f (128) vs %.15f (256), rel %.2e", t128, t256, dt));
  for (double frac : {0.5, 0.9, 0.99}) {
    const double t = frac * t256;
    const auto g128 = solve_gap(k128, {kMu, t});
    const auto g256 = solve_gap(k256, {kMu, t});
    const double s128 = gap_sup_norm(g128, k128);
    const double s256 = gap_sup_norm(g256, k256);
    const double d = rel_diff(s128, s256);
    o.require(d < 1e-6, fmt("||Delta|| at %.2f T_c: %.12f vs %.12f, rel %.2e", frac, s128,
                            s256, d));
  }
  return o;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {1, "K_T removable singularity", c1_symbol},
      {2, "bisection vs T-mesh scan oracle", c2_oracle},
      {3, "sector symmetry ell <-> -ell", c3_symmetry},
      {4, "eigenvalue monotonicity in T", c4_monotone},
      {5, "gap / linear-criterion consistency", c5_gap_linear},
      {6, "square-root scaling and a priori bound", c6_scaling},
      {7, "positivity window", c7_positivity},
      {8, "free-energy ordering and stationarity", c8_free_energy},
      {9, "pointwise operator bounds", c9_bounds},
      {10, "weak-coupling sector prediction", c10_weak},
      {11, "rotation test", c11_rotation},
      {12, "3D s-wave: criteria 2, 5, 6, 8", c12_three_d},
      {13, "discretization convergence 128 -> 256", c13_convergence},
  };
  std::printf("acceptance suite (N = 256, ell_max = 12, %u threads)\n", kThreads);
  const auto t0 = std::chrono::steady_clock::now();
  (void)fixture();
  std::printf("setup: sector assembly and critical report %.1f s\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  int failed = 0;
  for (const auto& item : items) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = item.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.lines.push_back(std::string("FAIL  exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s (%.1f s)\n", item.id, out.pass ? "PASS" : "FAIL",
                item.title, secs);
    for (const auto& l : out.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(items.size()) - failed,
              items.size());
  return failed == 0 ? 0 : 1;
}
