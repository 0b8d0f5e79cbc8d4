#pragma once

#include <functional>
#include <map>

#include <Eigen/Core>

#include "radbcs/grid.hpp"
#include "radbcs/potential.hpp"

namespace radbcs {

/// Discretized pair interaction V_ell of one angular-momentum sector.
///
/// The operator acting on radial profiles is
///   (V_ell f)(p) = (2 pi)^(-d/2) \int_{R^d} V^_ell(p, |q|) f(|q|) dq,
/// which is the restriction of f -> V f to the sector (in 2D it gives
/// Delta_ell = (1/pi) \int V^_ell sigma_ell). On the grid it becomes the
/// symmetric matrix
///   M_ij = (2 pi)^(-d/2) D_i V^_ell(p_i, p_j) D_j,   D_i = sqrt(w_i mu(p_i)).
class SectorKernel {
 public:
  using KernelFn = std::function<double(double, double)>;

  /// raw(i, j) = V^_ell(p_i, p_j). kernel_fn, if given, evaluates V^_ell at
  /// arbitrary momenta and enables off-grid (Nystrom) evaluation.
  static SectorKernel from_raw(int ell, GridPtr grid, Eigen::MatrixXd raw,
                               KernelFn kernel_fn = {});
  static SectorKernel from_function(int ell, GridPtr grid, KernelFn kernel_fn);

  int ell() const { return ell_; }
  const GridPtr& grid() const { return grid_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::MatrixXd& raw_values() const { return raw_; }
  /// (2 pi)^(-d/2)
  double prefactor() const { return prefactor_; }
  bool has_kernel_function() const { return static_cast<bool>(kernel_fn_); }
  double kernel_at(double p, double q) const;

  /// Node values of V_ell f for node values f.
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
  /// (V_ell f)(p) at an arbitrary momentum, using the quadrature of apply().
  double apply_at(double p, const Eigen::VectorXd& f) const;

 private:
  SectorKernel() = default;

  int ell_ = 0;
  GridPtr grid_;
  Eigen::MatrixXd raw_;
  Eigen::MatrixXd matrix_;
  double prefactor_ = 1.0;
  KernelFn kernel_fn_;
};

SectorKernel assemble_sector_kernel(const PotentialSpec& spec, int ell,
                                    const GridPtr& grid, unsigned threads = 1);

/// Kernels for ell = 0, 2, ..., ell_max (2D) or ell = 0 (3D).
class SectorFamily {
 public:
  SectorFamily(const PotentialSpec& spec, GridPtr grid, int ell_max,
               unsigned threads = 1);

  const GridPtr& grid() const { return grid_; }
  int ell_max() const { return ell_max_; }
  const std::map<int, SectorKernel>& kernels() const { return kernels_; }
  const SectorKernel& at(int ell) const;
  std::vector<int> sectors() const;

 private:
  GridPtr grid_;
  int ell_max_;
  std::map<int, SectorKernel> kernels_;
};

/// Multiplicity of sector ell among the full-space sectors (+-ell).
inline int sector_multiplicity(int ell) { return ell == 0 ? 1 : 2; }

}  // namespace radbcs
