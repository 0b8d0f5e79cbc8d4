#pragma once

#include <complex>
#include <memory>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "radbcs/errors.hpp"

namespace radbcs {

enum class GridScheme { gauss_legendre_composite, gauss_legendre_panels_at_fermi };

std::string_view to_string(GridScheme scheme);

/// Quadrature on [0, p_max] for radial integrands over R^d:
///   \int_{R^d} f(|p|) dp  ~  sum_i w_i mu(p_i) f(p_i),
/// with mu(p) = 2 pi p (d = 2) or 4 pi p^2 (d = 3).
class RadialGrid {
 public:
  RadialGrid(std::vector<double> nodes, std::vector<double> weights,
             double p_max, int dimension, GridScheme scheme,
             std::vector<double> panel_boundaries = {});

  std::size_t size() const { return nodes_.size(); }
  int dimension() const { return dimension_; }
  double p_max() const { return p_max_; }
  GridScheme scheme() const { return scheme_; }
  std::span<const double> panel_boundaries() const { return panels_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  /// w_i mu(p_i)
  const Eigen::VectorXd& measure_weights() const { return measure_weights_; }
  /// sqrt(w_i mu(p_i)), the similarity transform to symmetric coordinates.
  const Eigen::VectorXd& sqrt_measure_weights() const { return sqrt_measure_; }

  double measure_density(double p) const;

  /// Index of the node closest to p.
  std::size_t nearest_node(double p) const;

 private:
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd measure_weights_;
  Eigen::VectorXd sqrt_measure_;
  std::vector<double> panels_;
  double p_max_;
  int dimension_;
  GridScheme scheme_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

double default_p_max(double mu);

/// Composite Gauss-Legendre grid. For mu > 0 the panels accumulate
/// geometrically at the Fermi radius sqrt(mu) (boundaries sqrt(mu)(1 +- 2^-k),
/// k = 1..4, fewer on coarse grids); the rest is split into panels of width <= 0.5.
GridPtr build_grid(double p_max, int n_points, double mu, int dimension);

/// Same nodes, weights and dimension (or the same object).
bool same_grid(const RadialGrid& a, const RadialGrid& b);
inline bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a && b && same_grid(*a, *b));
}

/// Samples of a radial profile on a grid.
template <class Scalar>
class BasicGridFunction {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicGridFunction() = default;
  explicit BasicGridFunction(GridPtr grid)
      : grid_(std::move(grid)), values_(Vector::Zero(grid_->size())) {}
  BasicGridFunction(GridPtr grid, Vector values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != grid_->size())
      throw InvalidInput("grid function length does not match grid size");
    if (!values_.allFinite())
      throw InvalidInput("grid function has non-finite values");
  }

  const GridPtr& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  Scalar operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

 private:
  GridPtr grid_;
  Vector values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<std::complex<double>>;

/// sum_i w_i mu(p_i) conj(f_i) g_i
template <class Scalar>
Scalar inner_product(const BasicGridFunction<Scalar>& f,
                     const BasicGridFunction<Scalar>& g) {
  if (!same_grid(f.grid(), g.grid()))
    throw InvalidInput("inner_product: grid functions live on different grids");
  const auto& wm = f.grid()->measure_weights();
  Scalar sum{0};
  for (Eigen::Index i = 0; i < wm.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, double>)
      sum += wm[i] * f.values()[i] * g.values()[i];
    else
      sum += wm[i] * std::conj(f.values()[i]) * g.values()[i];
  }
  return sum;
}

/// v_i = sqrt(w_i mu(p_i)) f(p_i); an isometry onto Euclidean R^N.
template <class Scalar>
typename BasicGridFunction<Scalar>::Vector to_symmetric(
    const BasicGridFunction<Scalar>& f) {
  return (f.grid()->sqrt_measure_weights().template cast<Scalar>().array() *
          f.values().array())
      .matrix();
}

GridFunction from_symmetric(const GridPtr& grid, const Eigen::VectorXd& v);

/// Grid function from a callable p -> value.
template <class F>
GridFunction sample(const GridPtr& grid, F&& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid->size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f(grid->nodes()[i]);
  return GridFunction(grid, std::move(v));
}

}  // namespace radbcs
