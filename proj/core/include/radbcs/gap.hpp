#pragma once

#include <vector>

#include <Eigen/Core>

#include "radbcs/grid.hpp"
#include "radbcs/kernel.hpp"
#include "radbcs/spectral.hpp"

namespace radbcs {

/// Radial gap profile Delta_ell on a grid. Real; the phase is fixed so that
/// Delta(p*) >= 0 at the node p* nearest sqrt(max(mu, 0)).
struct GapFunction {
  int ell = 0;
  double temperature = 0.0;
  double mu = 0.0;
  GridFunction values;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // sup |Delta - G(Delta)|

  double node_sup() const { return values.values().cwiseAbs().maxCoeff(); }
};

struct GapSolverOptions {
  double mixing = 0.5;
  double tol = 1e-9;
  int max_iter = 10000;
};

/// One application of the fixed-point map
///   G(Delta) = 2 V_ell sigma,  sigma = -Delta / (2 K_T^Delta),
/// i.e. G(Delta)_i = -(2 pi)^(-d/2) sum_j V^_ell(p_i, p_j) w_j mu_j Delta_j / K_T^Delta_j.
GridFunction gap_map(const SectorKernel& kernel, const DispersionParams& params,
                     const GridFunction& delta);

/// Derivative of Delta -> Delta tanh(E / 2T) / E at each node.
Eigen::VectorXd gap_map_slope(const DispersionParams& params, const RadialGrid& grid,
                              const Eigen::VectorXd& delta);

/// Solves Delta = G(Delta). Damped iteration Delta <- (1 - m) Delta + m G(Delta)
/// (m halved on residual growth, at most four times) brings the iterate into
/// the basin of the solution branch; Newton steps with backtracking then
/// converge it. Without init, starts from 0.1 * energy scale times the
/// lowest eigenvector of K_T + V_ell. Throws Divergence on NaN; returns
/// converged = false when max_iter is exhausted.
GapFunction solve_gap(const SectorKernel& kernel, const DispersionParams& params,
                      const GridFunction* init = nullptr,
                      const GapSolverOptions& options = {});

/// Delta at an arbitrary momentum through the fixed-point relation
/// Delta(p) = G(Delta)(p) (Nystrom interpolation).
double gap_value_at(const GapFunction& gap, const SectorKernel& kernel, double p);

/// sup_{0 <= p <= p_max} |Delta(p)| of the Nystrom interpolant: the node
/// maximum and p = 0, refined by golden-section search around the best node.
double gap_sup_norm(const GapFunction& gap, const SectorKernel& kernel);

/// || (K_T^Delta + V_ell) sigma || in symmetric coordinates (Euclidean norm).
double el_residual(const SectorKernel& kernel, const DispersionParams& params,
                   const GridFunction& delta);

/// Energy scale max(|mu|, max |V^_ell(p_i, p_j)|), at least 1e-300.
double energy_scale(const SectorKernel& kernel, double mu);

/// One-body density matrix entries gamma_ell(p), sigma_ell(p) per node.
struct BcsState {
  int ell = 0;
  double temperature = 0.0;
  double mu = 0.0;
  GridFunction gamma;
  GridFunction sigma;
  GridFunction energy;  // E(p) = sqrt((p^2 - mu)^2 + Delta^2)
};

/// gamma = 1/2 - (p^2 - mu) / (2 K_T^Delta), sigma = -Delta / (2 K_T^Delta).
BcsState construct_state(const GapFunction& gap);
BcsState construct_state(const GridFunction& delta, int ell,
                         const DispersionParams& params);
BcsState normal_state(const GridPtr& grid, const DispersionParams& params, int ell = 0);

/// (1 + exp(H / T))^(-1) with H = [[k, delta], [delta, -k]], by
/// diagonalization; the cross-check for construct_state.
Eigen::Matrix2d fermi_dirac_matrix(double k, double delta, double temperature);

/// Smaller eigenvalue of [[gamma, sigma], [sigma, 1 - gamma]].
double lower_occupation(double gamma, double sigma);

/// -(l ln l + (1 - l) ln(1 - l)) for the occupation pair of one node.
/// Throws AdmissibilityError when an eigenvalue leaves [0, 1] beyond 1e-12.
double node_entropy(double gamma, double sigma);

/// F^ti(state) - F^ti(normal state) at the same T and mu:
///   sum_i w_i mu_i [k_i (gamma_i - gamma0_i) - T (s_i - s0_i)] + <sigma, V_ell sigma>.
double free_energy_relative(const BcsState& state, const SectorKernel& kernel);
double free_energy_relative(const GridFunction& gamma, const GridFunction& sigma,
                            const SectorKernel& kernel, const DispersionParams& params);

}  // namespace radbcs
