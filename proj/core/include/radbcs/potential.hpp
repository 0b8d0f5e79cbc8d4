#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace radbcs {

enum class PotentialKind { gaussian, two_gaussian, tabulated };

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view text);

/// One Gaussian well V(x) = -strength * exp(-|x|^2 / (2 range^2)).
/// Positive strength is attractive.
struct GaussianTerm {
  double strength = 0.0;
  double range = 1.0;
};

/// A radial pair potential in d = 2 or 3 dimensions together with its
/// radial Fourier transform.
///
/// Fourier convention: symmetric, f^(p) = (2 pi)^(-d/2) \int f(x) e^{-ipx} dx.
/// With it a Gaussian term transforms to
///   V^(p) = -strength * range^d * exp(-range^2 p^2 / 2),
/// so the gap equation reads Delta = 2 (2 pi)^(-d/2) V^ * alpha^.
///
/// Tabulated potentials store V^ directly as samples over increasing
/// momentum magnitudes. Between samples the transform is a monotone cubic
/// (PCHIP) interpolant; below the first sample it is held constant and
/// beyond the last sample it is zero.
class PotentialSpec {
 public:
  static PotentialSpec gaussian(double strength, double range, int dimension);
  static PotentialSpec two_gaussian(GaussianTerm first, GaussianTerm second,
                                    int dimension);
  static PotentialSpec tabulated(std::vector<double> momenta,
                                 std::vector<double> values, int dimension);
  /// Two-column CSV (momentum magnitude, V^ value), optional header row.
  static PotentialSpec from_csv(const std::filesystem::path& path,
                                int dimension);

  PotentialKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  std::span<const GaussianTerm> terms() const { return terms_; }
  std::span<const double> table_momenta() const { return table_p_; }
  std::span<const double> table_values() const { return table_v_; }

  /// Same potential with every strength (or table value) multiplied by factor.
  PotentialSpec scaled(double factor) const;

  /// V^(p) for p >= 0. Throws InvalidInput for non-finite or negative p.
  double fourier_hat(double p) const;

  /// ||V||_2 = ||V^||_2 (Plancherel), over R^d.
  double l2_norm() const;

  /// sup_p |V^(p)|.
  double fourier_sup() const;

  /// True when V^ <= 0 everywhere (purely attractive in momentum space).
  bool attractive_everywhere() const;

 private:
  PotentialSpec() = default;
  void validate() const;

  PotentialKind kind_ = PotentialKind::gaussian;
  int dimension_ = 2;
  std::vector<GaussianTerm> terms_;
  std::vector<double> table_p_;
  std::vector<double> table_v_;
  std::shared_ptr<const class TableInterpolant> table_;
};

double fourier_hat(const PotentialSpec& spec, double p);

/// Raw angular Fourier coefficient of (p, q) -> V^(|p - q|) for any integer
/// ell in 2D: (2 pi)^(-1) \int_0^{2 pi} e^{-i ell phi} V^(|p - q|) dphi.
/// In 3D only ell = 0 exists: the spherical mean
/// (1/2) \int_{-1}^{1} V^(sqrt(p^2 + q^2 - 2 p q t)) dt.
/// Evaluated by adaptive Gauss-Kronrod to absolute tolerance 1e-12.
double angular_coefficient(const PotentialSpec& spec, int ell, double p,
                           double q);

/// The pair-interaction kernel V^_ell(p, q) of an admissible sector:
/// even ell in 2D, ell = 0 in 3D. Throws DomainError otherwise.
double angular_kernel(const PotentialSpec& spec, int ell, double p, double q);

/// Throws DomainError unless ell labels a pairing sector in `dimension`.
void check_sector(int dimension, int ell);

}  // namespace radbcs
