#include "radbcs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

// Boost 1.74's pchip calls isnan unqualified; make the std overloads visible.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radbcs/errors.hpp"
#include "quadrature.hpp"

namespace radbcs {

class TableInterpolant {
 public:
  TableInterpolant(std::vector<double> p, std::vector<double> v)
      : first_p_(p.front()),
        last_p_(p.back()),
        first_v_(v.front()),
        spline_(std::move(p), std::move(v)) {}

  double operator()(double p) const {
    if (p > last_p_) return 0.0;
    if (p <= first_p_) return first_v_;
    return spline_(p);
  }

 private:
  double first_p_;
  double last_p_;
  double first_v_;
  boost::math::interpolators::pchip<std::vector<double>> spline_;
};

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian_hat(const GaussianTerm& t, int dimension, double p) {
  const double r2 = t.range * t.range;
  return -t.strength * std::pow(t.range, dimension) * std::exp(-0.5 * r2 * p * p);
}

double measure_density(int dimension, double p) {
  return dimension == 2 ? 2.0 * kPi * p : 4.0 * kPi * p * p;
}

}  // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::gaussian:
      return "gaussian";
    case PotentialKind::two_gaussian:
      return "two-gaussian";
    case PotentialKind::tabulated:
      return "tabulated";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view text) {
  if (text == "gaussian") return PotentialKind::gaussian;
  if (text == "two-gaussian") return PotentialKind::two_gaussian;
  if (text == "tabulated") return PotentialKind::tabulated;
  throw ConfigError("unknown potential kind '" + std::string(text) + "'");
}

PotentialSpec PotentialSpec::gaussian(double strength, double range,
                                      int dimension) {
  PotentialSpec spec;
  spec.kind_ = PotentialKind::gaussian;
  spec.dimension_ = dimension;
  spec.terms_ = {{strength, range}};
  spec.validate();
  return spec;
}

PotentialSpec PotentialSpec::two_gaussian(GaussianTerm first,
                                          GaussianTerm second, int dimension) {
  PotentialSpec spec;
  spec.kind_ = PotentialKind::two_gaussian;
  spec.dimension_ = dimension;
  spec.terms_ = {first, second};
  spec.validate();
  return spec;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> momenta,
                                       std::vector<double> values,
                                       int dimension) {
  PotentialSpec spec;
  spec.kind_ = PotentialKind::tabulated;
  spec.dimension_ = dimension;
  spec.table_p_ = std::move(momenta);
  spec.table_v_ = std::move(values);
  spec.validate();
  spec.table_ = std::make_shared<const TableInterpolant>(spec.table_p_,
                                                          spec.table_v_);
  return spec;
}

PotentialSpec PotentialSpec::from_csv(const std::filesystem::path& path,
                                      int dimension) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential table " + path.string());
  std::vector<double> p;
  std::vector<double> v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (!(fields >> a >> b)) {
      if (line_no == 1 && p.empty()) continue;  // header
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected two numeric columns");
    }
    p.push_back(a);
    v.push_back(b);
  }
  return tabulated(std::move(p), std::move(v), dimension);
}

void PotentialSpec::validate() const {
  if (dimension_ != 2 && dimension_ != 3)
    throw ConfigError("potential dimension must be 2 or 3");
  if (kind_ == PotentialKind::tabulated) {
    if (table_p_.size() != table_v_.size())
      throw ConfigError("potential table columns differ in length");
    if (table_p_.size() < 4)
      throw ConfigError("potential table needs at least four rows");
    for (std::size_t i = 0; i < table_p_.size(); ++i) {
      if (!std::isfinite(table_p_[i]) || !std::isfinite(table_v_[i]))
        throw ConfigError("potential table has non-finite entries");
      if (table_p_[i] < 0.0)
        throw ConfigError("potential table momenta must be nonnegative");
      if (i > 0 && !(table_p_[i] > table_p_[i - 1]))
        throw ConfigError("potential table momenta must be strictly increasing");
    }
    return;
  }
  for (const auto& t : terms_) {
    if (!std::isfinite(t.strength) || !std::isfinite(t.range))
      throw ConfigError("potential parameters must be finite");
    if (!(t.range > 0.0)) throw ConfigError("potential ranges must be positive");
  }
}

PotentialSpec PotentialSpec::scaled(double factor) const {
  if (!std::isfinite(factor)) throw InvalidInput("scale factor must be finite");
  PotentialSpec out = *this;
  for (auto& t : out.terms_) t.strength *= factor;
  if (kind_ == PotentialKind::tabulated) {
    for (auto& v : out.table_v_) v *= factor;
    out.table_ = std::make_shared<const TableInterpolant>(out.table_p_,
                                                           out.table_v_);
  }
  return out;
}

double PotentialSpec::fourier_hat(double p) const {
  if (!std::isfinite(p) || p < 0.0)
    throw InvalidInput("fourier_hat: momentum must be finite and >= 0");
  if (kind_ == PotentialKind::tabulated) return (*table_)(p);
  double sum = 0.0;
  for (const auto& t : terms_) sum += gaussian_hat(t, dimension_, p);
  return sum;
}

double PotentialSpec::l2_norm() const {
  if (kind_ == PotentialKind::tabulated) {
    // Plancherel: integrate |V^|^2 over R^d piece by piece between knots.
    double sum = 0.0;
    auto integrand = [this](double p) {
      const double v = (*table_)(p);
      return v * v * measure_density(dimension_, p);
    };
    double lower = 0.0;
    for (double knot : table_p_) {
      if (knot > lower) {
        sum += detail::adaptive_gauss_kronrod(integrand, lower, knot, 1e-14);
        lower = knot;
      }
    }
    return std::sqrt(sum);
  }
  // \int exp(-|x|^2/(2a^2)) exp(-|x|^2/(2b^2)) dx = (2 pi s^2)^{d/2},
  // 1/s^2 = 1/a^2 + 1/b^2.
  double sum = 0.0;
  for (const auto& a : terms_) {
    for (const auto& b : terms_) {
      const double s2 = 1.0 / (1.0 / (a.range * a.range) + 1.0 / (b.range * b.range));
      sum += a.strength * b.strength * std::pow(2.0 * kPi * s2, 0.5 * dimension_);
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double PotentialSpec::fourier_sup() const {
  if (kind_ == PotentialKind::tabulated) {
    double best = 0.0;
    for (double v : table_v_) best = std::max(best, std::abs(v));
    return best;
  }
  // The sum of Gaussians is smooth and decays; scan then refine.
  double min_range = terms_.front().range;
  for (const auto& t : terms_) min_range = std::min(min_range, t.range);
  const double p_end = 12.0 / min_range;
  const int samples = 4000;
  double best = std::abs(fourier_hat(0.0));
  int best_i = 0;
  for (int i = 1; i <= samples; ++i) {
    const double v = std::abs(fourier_hat(p_end * i / samples));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double lo = p_end * std::max(best_i - 1, 0) / samples;
  double hi = p_end * std::min(best_i + 1, samples) / samples;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double a = hi - phi * (hi - lo);
    const double b = lo + phi * (hi - lo);
    if (std::abs(fourier_hat(a)) > std::abs(fourier_hat(b)))
      hi = b;
    else
      lo = a;
  }
  return std::max(best, std::abs(fourier_hat(0.5 * (lo + hi))));
}

bool PotentialSpec::attractive_everywhere() const {
  if (kind_ == PotentialKind::tabulated)
    return std::all_of(table_v_.begin(), table_v_.end(),
                       [](double v) { return v <= 0.0; });
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const GaussianTerm& t) { return t.strength >= 0.0; });
}

double fourier_hat(const PotentialSpec& spec, double p) {
  return spec.fourier_hat(p);
}

void check_sector(int dimension, int ell) {
  if (dimension == 2) {
    if (ell % 2 != 0)
      throw DomainError("odd angular momentum " + std::to_string(ell) +
                        " is not a pairing sector in 2D");
    return;
  }
  if (dimension == 3) {
    if (ell != 0)
      throw DomainError("only the s-wave sector (ell = 0) is supported in 3D");
    return;
  }
  throw DomainError("dimension must be 2 or 3");
}

double angular_coefficient(const PotentialSpec& spec, int ell, double p,
                           double q) {
  if (!std::isfinite(p) || !std::isfinite(q) || p < 0.0 || q < 0.0)
    throw InvalidInput("angular kernel: momenta must be finite and >= 0");
  if (spec.dimension() == 3 && ell != 0)
    throw DomainError("only the s-wave sector (ell = 0) is supported in 3D");
  // The integrand does not depend on the angle when either momentum is 0.
  if (p == 0.0 || q == 0.0) return ell == 0 ? spec.fourier_hat(p + q) : 0.0;

  constexpr double kAbsTol = 1e-12;
  const double pp_qq = p * p + q * q;
  const double two_pq = 2.0 * p * q;
  auto modulus = [&](double c) { return std::sqrt(std::max(pp_qq - two_pq * c, 0.0)); };

  if (spec.dimension() == 3) {
    auto f = [&](double t) { return spec.fourier_hat(modulus(t)); };
    return 0.5 * detail::adaptive_gauss_kronrod(f, -1.0, 1.0, 2.0 * kAbsTol);
  }
  // Even in phi, so (1/pi) \int_0^pi cos(ell phi) V^(|p - q|) dphi.
  const int m = std::abs(ell);
  auto f = [&](double phi) {
    return std::cos(m * phi) * spec.fourier_hat(modulus(std::cos(phi)));
  };
  return detail::adaptive_gauss_kronrod(f, 0.0, kPi, kPi * kAbsTol) / kPi;
}

double angular_kernel(const PotentialSpec& spec, int ell, double p, double q) {
  check_sector(spec.dimension(), ell);
  return angular_coefficient(spec, ell, p, q);
}

}  // namespace radbcs
