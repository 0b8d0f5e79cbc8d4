#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "radbcs/grid.hpp"
#include "radbcs/kernel.hpp"
#include "radbcs/potential.hpp"

namespace radbcs {

/// Chemical potential and temperature (k_B = 1).
struct DispersionParams {
  double mu = 0.0;
  double temperature = 0.0;

  void validate() const;
};

/// e / tanh(e / 2T), even in e; 2T at e = 0 and |e| at T = 0.
double kt_of_energy(double e, double temperature);

/// K_T(p) = (p^2 - mu) / tanh((p^2 - mu) / 2T).
double kt_symbol(const DispersionParams& params, double p);

/// K_T^Delta(p) = E / tanh(E / 2T), E = sqrt((p^2 - mu)^2 + |Delta|^2).
double kt_delta_symbol(const DispersionParams& params, double p, double delta_abs);

/// Node values of K_T^Delta (or K_T when delta is null).
Eigen::VectorXd kt_diagonal(const DispersionParams& params, const RadialGrid& grid,
                            const GridFunction* delta = nullptr);

/// diag(K_T^Delta(p_i)) + M for the sector kernel M, in symmetric coordinates.
Eigen::MatrixXd assemble_operator(const DispersionParams& params,
                                  const SectorKernel& kernel,
                                  const GridFunction* delta = nullptr);

/// Lowest eigenpairs of a symmetric operator. ell is empty for operators not
/// tied to a single sector.
struct SpectralResult {
  std::optional<int> ell;
  double temperature = 0.0;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, unit norm, symmetric coordinates
};

/// k smallest eigenpairs of A (dense symmetric solve). Throws InvalidInput if
/// A is asymmetric beyond 1e-10 relative.
SpectralResult lowest_eigenvalues(const Eigen::MatrixXd& A, int k);

/// Eigenvalues only; cheaper, used inside bisections.
Eigen::VectorXd lowest_eigenvalues_only(const Eigen::MatrixXd& A, int k);

/// The index-th eigenvalue (0 = lowest) of K_T + V_ell.
double sector_eigenvalue(const SectorKernel& kernel, double mu, double temperature,
                         int index = 0);

struct TemperatureBracket {
  double lo = 0.0;
  double hi = 1.0;
};

/// Lowest temperature below which K_T + V_ell has a negative eigenvalue, i.e.
/// inf{T : (K_T + V_ell) >= 0}. `index` selects which eigenvalue must be
/// nonnegative (0: the usual criterion, 1: the second eigenvalue).
/// Returns 0 when the operator is already nonnegative at T = 1e-10; the upper
/// end of the bracket is doubled until the eigenvalue is nonnegative and a
/// NoTransition error is thrown beyond T = 1e6.
double critical_temperature_sector(const SectorKernel& kernel, double mu,
                                   TemperatureBracket bracket = {}, int index = 0);
double critical_temperature_sector(const PotentialSpec& spec, const GridPtr& grid,
                                   double mu, int ell,
                                   TemperatureBracket bracket = {});

inline constexpr double kTemperatureFloor = 1e-10;

struct CriticalReport {
  std::map<int, double> tc_by_sector;
  double tc = 0.0;
  int ell0 = 0;
  std::optional<int> ell1;
  std::optional<double> t_tilde;  // empty when tc = 0
  int degeneracy_at_tc = 1;
  bool degeneracy_violation = false;
  std::vector<std::string> warnings;
};

/// T_c(ell) for every sector of the family, T_c, ell0, and the temperature
/// T~ where the second distinct eigenvalue of the full operator (union of
/// sector spectra, +-ell counted once) crosses zero, with its owner ell1.
CriticalReport critical_report(const SectorFamily& family, double mu,
                               unsigned threads = 1);
CriticalReport critical_report(const PotentialSpec& spec, const GridPtr& grid,
                               double mu, int ell_max = 12, unsigned threads = 1);

/// Second-smallest eigenvalue of the direct sum of sectors (each sector once)
/// and the sector that owns it.
struct SecondEigenvalue {
  double value = 0.0;
  int ell = 0;
};
SecondEigenvalue second_distinct_eigenvalue(const SectorFamily& family, double mu,
                                            double temperature, unsigned threads = 1);

struct PositivityReport {
  double temperature = 0.0;
  std::map<int, double> min_by_sector;
  double min_eigenvalue = 0.0;
  int argmin_sector = 0;
  double threshold = 0.0;  // -1e-6 sup|V^|
  bool pass = false;
};

/// Lowest eigenvalue of K_T^Delta + V_ell in every sector of the family, for
/// a gap Delta (typically of sector ell0). Passes iff all are >= -1e-6 v_sup.
PositivityReport positivity_check(const SectorFamily& family, double mu,
                                  double temperature, const GridFunction& delta,
                                  double v_sup, unsigned threads = 1);
PositivityReport positivity_check(const PotentialSpec& spec, const GridPtr& grid,
                                  double mu, double temperature,
                                  const GridFunction& delta, int ell_max = 12,
                                  unsigned threads = 1);

}  // namespace radbcs
