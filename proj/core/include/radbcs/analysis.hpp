#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "radbcs/gap.hpp"
#include "radbcs/grid.hpp"
#include "radbcs/kernel.hpp"
#include "radbcs/potential.hpp"
#include "radbcs/spectral.hpp"

namespace radbcs {

// ---------------------------------------------------------------------------
// Eigenvalue curves

struct Crossing {
  double temperature = 0.0;
  int ell = 0;
  int index = 0;
};

struct CurveSet {
  std::vector<double> temperatures;
  /// (ell, index) -> eigenvalue per mesh temperature
  std::map<std::pair<int, int>, std::vector<double>> tracks;
  /// Zero crossings, sorted by descending temperature.
  std::vector<Crossing> crossings;
};

/// Lowest `count` eigenvalues of K_T + V_ell for each sector and mesh
/// temperature. Tracks are matched by sorted index. Crossings bracketed by
/// the mesh are refined by bisection.
CurveSet eigenvalue_curves(const SectorFamily& family, double mu,
                           const std::vector<double>& temperatures, int count = 3,
                           unsigned threads = 1);

// ---------------------------------------------------------------------------
// Scaling of the gap near T_c

struct ScalingPoint {
  int k = 0;
  double temperature = 0.0;
  double distance = 0.0;  // T_c - T
  double delta_sup = 0.0;
  double alpha_norm = 0.0;  // ||alpha||_2 = ||sigma||_{L^2(R^d)}
  bool converged = false;
  double residual = 0.0;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double alpha_slope = 0.0;
  double alpha_r2 = 0.0;
  std::vector<ScalingPoint> points;  // all attempted points
  std::vector<std::string> warnings;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs >= 2 points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Solves the gap equation at T = T_c (1 - 2^-k), k in [k_first, k_last],
/// warm-starting each temperature from the previous one, and fits
/// log sup|Delta| and log ||alpha||_2 against log(T_c - T). Points within
/// 1e-3 T_c of T_c and non-converged points are excluded with a warning;
/// fewer than four usable points throw InvalidInput.
ScalingFit scaling_fit(const SectorKernel& kernel, double mu, double tc,
                       int k_first = 3, int k_last = 8,
                       const GapSolverOptions& options = {});

/// ||Delta||_inf^2 <= ||V||_2^4 pi^4 / 32 + mu^2.
bool a_priori_bound_holds(double delta_sup, double v_l2, double mu);

// ---------------------------------------------------------------------------
// Free-energy stationarity

/// Admissible per-node perturbation of a state. Each node's occupation matrix
/// [[gamma, sigma], [sigma, 1 - gamma]] = R(theta) diag(1 - l, l) R(theta)^T is
/// moved along logit(l) by h * u_i and along theta by h * v_i, which keeps
/// 0 <= Gamma <= 1 for every h.
void perturb_state(const BcsState& state, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v, double h, GridFunction& gamma,
                   GridFunction& sigma);

struct StationarityReport {
  std::vector<double> derivatives;  // central differences, one per direction
  double max_abs = 0.0;
  double scale = 1.0;  // max(1, |mu|, sup |V^|)
};

/// Directional derivatives of the relative free energy at `state` along
/// `directions` random admissible perturbations (standard normal u, v drawn
/// from a seeded generator), by central differences with step h.
StationarityReport free_energy_stationarity(const BcsState& state,
                                            const SectorKernel& kernel, double v_sup,
                                            int directions = 20, unsigned long seed = 1,
                                            double h = 1e-4);

// ---------------------------------------------------------------------------
// Weak coupling

struct WeakCouplingReport {
  int predicted_ell0 = 0;
  std::map<int, double> diagonal;  // ell -> V^_ell(sqrt mu, sqrt mu)
  bool tie = false;
};

/// Predicts the pairing sector at weak coupling from the Fermi-circle values
/// V^_ell(sqrt mu, sqrt mu) of lambda_scale * V: the even ell with the most
/// negative value. Throws DomainError for mu <= 0.
WeakCouplingReport weak_coupling_sector(const PotentialSpec& spec, double mu,
                                        double lambda_scale = 1.0, int ell_max = 12);

/// <psi_n, V^ psi_m> on the Fermi circle |p| = sqrt(mu), psi_n = e^{in phi}/sqrt(2 pi),
/// for n, m in [-n_max, n_max] (row/column n + n_max), by a tensor trapezoid
/// rule on the two angles. Diagonal entries equal 2 pi V^_n(sqrt mu, sqrt mu).
Eigen::MatrixXcd fermi_circle_matrix(const PotentialSpec& spec, double mu, int n_max,
                                     int n_angles = 256);

// ---------------------------------------------------------------------------
// Rotation test (2D)

/// Delta(p, phi) on a tensor grid: radial nodes x equispaced angles
/// phi_j = 2 pi j / n_angles. values(i, j) = Delta(p_i, phi_j).
struct PolarGapField {
  GridPtr grid;
  int n_angles = 0;
  Eigen::MatrixXd values;

  template <class F>
  static PolarGapField from_function(GridPtr grid, int n_angles, F&& f);
  double angle(int j) const;
};

struct RotationTestReport {
  std::vector<double> angles;
  std::vector<double> values;         // K-part + V-term per angle
  std::vector<double> kinetic_part;   // <U(R) alpha, K_T^Delta U(R) alpha>
  double interaction_term = 0.0;      // <alpha, V alpha>, rotation invariant
  double baseline = 0.0;              // value at R = identity
  double min_angle = 0.0;
  double min_value = 0.0;
  double margin = 0.0;                // baseline - min_value
  double variation = 0.0;             // max - min over angles
  bool strictly_lowered = false;      // margin above the 1e-10 noise floor
  bool degenerate = false;            // radial input: the test is vacuous
  std::string notice;
};

/// alpha^ = -Delta / (2 K_T^Delta) with K_T^Delta built from |Delta(p, phi)|;
/// the kinetic form is evaluated for rotations by 2 pi s / n_rotations.
/// n_angles must be a multiple of n_rotations so rotations are index shifts.
/// The interaction term sums <a_m, V_m a_m> over the angular Fourier modes
/// a_m of alpha^ with |m| <= m_max.
RotationTestReport rotation_test(const PolarGapField& delta, const DispersionParams& params,
                                 const PotentialSpec& spec, int n_rotations = 64,
                                 int m_max = 16, unsigned threads = 1);

// ---------------------------------------------------------------------------

template <class F>
PolarGapField PolarGapField::from_function(GridPtr grid, int n_angles, F&& f) {
  if (!grid || grid->dimension() != 2)
    throw InvalidInput("polar gap fields need a 2D radial grid");
  if (n_angles < 4) throw InvalidInput("polar gap fields need at least 4 angles");
  PolarGapField field;
  field.grid = std::move(grid);
  field.n_angles = n_angles;
  const auto n = static_cast<Eigen::Index>(field.grid->size());
  field.values.resize(n, n_angles);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < n_angles; ++j)
      field.values(i, j) = f(field.grid->nodes()[i], field.angle(j));
  return field;
}

}  // namespace radbcs
