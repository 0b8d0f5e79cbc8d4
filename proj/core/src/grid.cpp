#include "radbcs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

namespace radbcs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxOuterPanelWidth = 0.5;
constexpr int kMinNodesPerPanel = 6;

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  const auto zeros = boost::math::legendre_p_zeros<double>(n);  // >= 0 half
  x.clear();
  w.clear();
  auto weight = [n](double z) {
    const double dp = boost::math::legendre_p_prime<double>(n, z);
    return 2.0 / ((1.0 - z * z) * dp * dp);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    x.push_back(-*it);
    w.push_back(weight(*it));
  }
  if (n % 2 == 1) {
    x.push_back(0.0);
    w.push_back(weight(0.0));
  }
  for (double z : zeros) {
    if (z == 0.0) continue;
    x.push_back(z);
    w.push_back(weight(z));
  }
}

std::vector<double> uniform_panels(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i <= count; ++i) out.push_back(a + (b - a) * i / count);
  out.back() = b;
  return out;
}

}  // namespace

std::string_view to_string(GridScheme scheme) {
  switch (scheme) {
    case GridScheme::gauss_legendre_composite:
      return "gauss-legendre-composite";
    case GridScheme::gauss_legendre_panels_at_fermi:
      return "gauss-legendre-panels-at-fermi";
  }
  return "unknown";
}

RadialGrid::RadialGrid(std::vector<double> nodes, std::vector<double> weights,
                       double p_max, int dimension, GridScheme scheme,
                       std::vector<double> panel_boundaries)
    : panels_(std::move(panel_boundaries)),
      p_max_(p_max),
      dimension_(dimension),
      scheme_(scheme) {
  if (dimension != 2 && dimension != 3)
    throw InvalidInput("grid dimension must be 2 or 3");
  if (nodes.size() != weights.size() || nodes.empty())
    throw InvalidInput("grid needs equally many nodes and weights");
  if (!(std::isfinite(p_max) && p_max > 0.0))
    throw InvalidInput("grid p_max must be positive");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0.0 && nodes[i] < p_max))
      throw InvalidInput("grid nodes must lie in (0, p_max)");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw InvalidInput("grid nodes must be strictly increasing");
    if (!(weights[i] > 0.0 && std::isfinite(weights[i])))
      throw InvalidInput("grid weights must be positive");
  }
  const auto n = static_cast<Eigen::Index>(nodes.size());
  nodes_ = Eigen::Map<const Eigen::VectorXd>(nodes.data(), n);
  weights_ = Eigen::Map<const Eigen::VectorXd>(weights.data(), n);
  measure_weights_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    measure_weights_[i] = weights_[i] * measure_density(nodes_[i]);
  sqrt_measure_ = measure_weights_.cwiseSqrt();
}

double RadialGrid::measure_density(double p) const {
  return dimension_ == 2 ? 2.0 * kPi * p : 4.0 * kPi * p * p;
}

std::size_t RadialGrid::nearest_node(double p) const {
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  const double* it = std::lower_bound(begin, end, p);
  if (it == end) return size() - 1;
  if (it != begin && p - *(it - 1) < *it - p) --it;
  return static_cast<std::size_t>(it - begin);
}

double default_p_max(double mu) {
  return std::max(8.0, 4.0 * std::sqrt(std::abs(mu) + 1.0));
}

GridPtr build_grid(double p_max, int n_points, double mu, int dimension) {
  if (dimension != 2 && dimension != 3)
    throw ConfigError("grid dimension must be 2 or 3");
  if (!std::isfinite(p_max) || !(p_max > 0.0))
    throw ConfigError("grid p_max must be positive and finite");
  if (!std::isfinite(mu)) throw ConfigError("chemical potential must be finite");
  if (n_points < 16) throw ConfigError("grid needs at least 16 points");
  if (p_max * p_max <= std::abs(mu))
    throw ConfigError("grid must enclose Fermi surface (p_max^2 > |mu|)");

  const int max_panels = std::max(1, n_points / kMinNodesPerPanel);
  std::vector<double> bounds{0.0};
  GridScheme scheme = GridScheme::gauss_legendre_composite;
  if (mu > 0.0) {
    scheme = GridScheme::gauss_legendre_panels_at_fermi;
    const double kf = std::sqrt(mu);
    // Coarse grids give up the finest Fermi levels so that at least half the
    // panel budget (or all the outer panels wanted) remains for the tail.
    const int outer_min = std::min(
        static_cast<int>(std::ceil((p_max - kf) / kMaxOuterPanelWidth)), (max_panels + 1) / 2);
    int levels = 4;
    while (levels > 0 && 2 * levels + 1 + outer_min > max_panels) --levels;
    for (int k = 1; k <= levels; ++k) bounds.push_back(kf * (1.0 - std::ldexp(1.0, -k)));
    bounds.push_back(kf);
    for (int k = levels; k >= 1; --k) bounds.push_back(kf * (1.0 + std::ldexp(1.0, -k)));
    while (bounds.back() >= p_max) bounds.pop_back();
  }
  const double start = bounds.back();
  const int wanted = static_cast<int>(std::ceil((p_max - start) / kMaxOuterPanelWidth));
  const int room = max_panels - static_cast<int>(bounds.size() - 1);
  const int outer = std::max(1, std::min(wanted, room));
  const auto tail = uniform_panels(start, p_max, outer);
  bounds.insert(bounds.end(), tail.begin() + 1, tail.end());

  const int panels = static_cast<int>(bounds.size()) - 1;
  const int per = n_points / panels;
  const int extra = n_points % panels;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> x;
  std::vector<double> w;
  for (int i = 0; i < panels; ++i) {
    const int m = per + (i < extra ? 1 : 0);
    gauss_legendre(m, x, w);
    const double half = 0.5 * (bounds[i + 1] - bounds[i]);
    const double mid = 0.5 * (bounds[i + 1] + bounds[i]);
    for (int j = 0; j < m; ++j) {
      nodes.push_back(mid + half * x[j]);
      weights.push_back(half * w[j]);
    }
  }
  return std::make_shared<const RadialGrid>(std::move(nodes), std::move(weights),
                                            p_max, dimension, scheme,
                                            std::move(bounds));
}

bool same_grid(const RadialGrid& a, const RadialGrid& b) {
  return &a == &b ||
         (a.dimension() == b.dimension() && a.size() == b.size() &&
          a.nodes() == b.nodes() && a.weights() == b.weights());
}

GridFunction from_symmetric(const GridPtr& grid, const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != grid->size())
    throw InvalidInput("from_symmetric: vector length does not match grid");
  return GridFunction(grid, (v.array() / grid->sqrt_measure_weights().array()).matrix());
}

}  // namespace radbcs
