#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "radbcs/errors.hpp"
#include "radbcs/parallel.hpp"
#include "radbcs/spectral.hpp"

namespace radbcs {

namespace {

constexpr double kTemperatureCeiling = 1e6;
constexpr double kRelativeTolerance = 1e-12;
constexpr double kTieTolerance = 1e-8;

struct Bracketed {
  double lo = 0.0;  // eigenvalue < 0 here (or the floor)
  double hi = 0.0;  // eigenvalue >= 0 here
  bool trivial = false;
};

// f is nondecreasing in T. Finds inf{T : f(T) >= 0}.
template <class F>
Bracketed locate_crossing(F&& f, TemperatureBracket bracket) {
  if (f(kTemperatureFloor) >= 0.0) return {0.0, 0.0, true};
  double lo = kTemperatureFloor;
  double hi = std::max(bracket.hi, 2.0 * kTemperatureFloor);
  if (bracket.lo > lo && bracket.lo < hi) {
    if (f(bracket.lo) < 0.0)
      lo = bracket.lo;
    else
      hi = bracket.lo;
  }
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kTemperatureCeiling)
      throw NoTransition("no critical temperature below 1e6: the operator stays "
                         "indefinite");
  }
  for (int it = 0; it < 400 && hi - lo > kRelativeTolerance * hi; ++it) {
    // Geometric midpoints while the bracket spans decades.
    const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi, false};
}

}  // namespace

double critical_temperature_sector(const SectorKernel& kernel, double mu,
                                   TemperatureBracket bracket, int index) {
  if (!std::isfinite(mu)) throw DomainError("chemical potential must be finite");
  if (bracket.lo < 0.0 || !(bracket.hi > 0.0))
    throw InvalidInput("temperature bracket must satisfy 0 <= lo, hi > 0");
  auto f = [&](double t) { return sector_eigenvalue(kernel, mu, t, index); };
  const auto c = locate_crossing(f, bracket);
  return c.trivial ? 0.0 : c.hi;
}

double critical_temperature_sector(const PotentialSpec& spec, const GridPtr& grid,
                                   double mu, int ell, TemperatureBracket bracket) {
  const auto kernel = assemble_sector_kernel(spec, ell, grid);
  return critical_temperature_sector(kernel, mu, bracket);
}

SecondEigenvalue second_distinct_eigenvalue(const SectorFamily& family, double mu,
                                            double temperature, unsigned threads) {
  const auto sectors = family.sectors();
  std::vector<Eigen::VectorXd> lows(sectors.size());
  parallel_for(sectors.size(), threads, [&](std::size_t s) {
    const auto a = assemble_operator({mu, temperature}, family.at(sectors[s]));
    lows[s] = lowest_eigenvalues_only(a, 2);
  });
  std::vector<std::pair<double, int>> merged;
  for (std::size_t s = 0; s < sectors.size(); ++s)
    for (Eigen::Index k = 0; k < lows[s].size(); ++k)
      merged.emplace_back(lows[s][k], sectors[s]);
  std::sort(merged.begin(), merged.end());
  if (merged.size() < 2) throw InvalidInput("need at least two eigenvalues");
  return {merged[1].first, merged[1].second};
}

CriticalReport critical_report(const SectorFamily& family, double mu,
                               unsigned threads) {
  const auto sectors = family.sectors();
  std::vector<double> tcs(sectors.size());
  parallel_for(sectors.size(), threads, [&](std::size_t s) {
    tcs[s] = critical_temperature_sector(family.at(sectors[s]), mu);
  });

  CriticalReport r;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    r.tc_by_sector[sectors[s]] = tcs[s];
    if (tcs[s] > r.tc) {
      r.tc = tcs[s];
      r.ell0 = sectors[s];
    }
  }
  r.degeneracy_at_tc = sector_multiplicity(r.ell0);
  if (r.tc <= 0.0) {
    r.warnings.emplace_back("T_c = 0: no pairing transition; T~ undefined");
    return r;
  }
  for (const auto& [ell, tc] : r.tc_by_sector) {
    if (ell != r.ell0 && std::abs(tc - r.tc) <= kTieTolerance * std::max(1.0, r.tc)) {
      r.degeneracy_violation = true;
      std::ostringstream msg;
      msg << "sectors " << r.ell0 << " and " << ell
          << " share T_c within tolerance: the zero mode at T_c is more than "
             "twice degenerate";
      r.warnings.push_back(msg.str());
    }
  }

  auto second = [&](double t) {
    return second_distinct_eigenvalue(family, mu, t, threads).value;
  };
  const auto c = locate_crossing(second, {0.0, r.tc});
  if (c.trivial) {
    r.t_tilde = 0.0;
    return r;
  }
  r.t_tilde = c.hi;
  r.ell1 = second_distinct_eigenvalue(family, mu, c.lo, threads).ell;
  return r;
}

CriticalReport critical_report(const PotentialSpec& spec, const GridPtr& grid,
                               double mu, int ell_max, unsigned threads) {
  const SectorFamily family(spec, grid, ell_max, threads);
  return critical_report(family, mu, threads);
}

PositivityReport positivity_check(const SectorFamily& family, double mu,
                                  double temperature, const GridFunction& delta,
                                  double v_sup, unsigned threads) {
  const auto sectors = family.sectors();
  std::vector<double> mins(sectors.size());
  parallel_for(sectors.size(), threads, [&](std::size_t s) {
    const auto a = assemble_operator({mu, temperature}, family.at(sectors[s]), &delta);
    mins[s] = lowest_eigenvalues_only(a, 1)[0];
  });
  PositivityReport r;
  r.temperature = temperature;
  r.threshold = -1e-6 * v_sup;
  r.min_eigenvalue = mins.front();
  r.argmin_sector = sectors.front();
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    r.min_by_sector[sectors[s]] = mins[s];
    if (mins[s] < r.min_eigenvalue) {
      r.min_eigenvalue = mins[s];
      r.argmin_sector = sectors[s];
    }
  }
  r.pass = r.min_eigenvalue >= r.threshold;
  return r;
}

PositivityReport positivity_check(const PotentialSpec& spec, const GridPtr& grid,
                                  double mu, double temperature,
                                  const GridFunction& delta, int ell_max,
                                  unsigned threads) {
  const SectorFamily family(spec, grid, ell_max, threads);
  return positivity_check(family, mu, temperature, delta, spec.fourier_sup(), threads);
}

}  // namespace radbcs
