#pragma once

// Parametric circular families: von Mises, wrapped Cauchy, sine-skewed von
// Mises, uniform, and von Mises with uniform contamination.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circw/circular.hpp"

namespace circw {

enum class Family {
  VonMises,
  WrappedCauchy,
  SineSkewedVonMises,
  Uniform,
  ContaminatedVonMises,
};

/// CLI/config names: "vm", "wc", "ssvm", "uniform", "vm-contam".
std::string_view family_name(Family f);
Family parse_family(std::string_view name);

// Optimization boxes for the constrained parameters.
inline constexpr double kKappaMin = 1e-3;
inline constexpr double kKappaMax = 500.0;
inline constexpr double kRhoMax = 1.0 - 1e-6;
inline constexpr double kLambdaMax = 1.0 - 1e-9;

/// Tagged parameter vector. Only the fields of the tagged family are
/// non-zero; mu is kept in [0, 2pi).
struct FamilyParams {
  Family family = Family::Uniform;
  double mu = 0.0;
  double kappa = 0.0;
  double rho = 0.0;
  double lambda = 0.0;
  double epsilon = 0.0;

  static FamilyParams von_mises(double mu, double kappa);
  static FamilyParams wrapped_cauchy(double mu, double rho);
  static FamilyParams sine_skewed(double mu, double kappa, double lambda);
  static FamilyParams uniform();
  static FamilyParams contaminated(double mu, double kappa, double epsilon);

  /// Throws InvalidArgument when a parameter leaves its domain or a field of
  /// another family is set.
  void validate() const;

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// Names of the free parameters in Fisher/estimation order, e.g. {"mu",
/// "kappa"} for von Mises. Empty for the uniform law; the contaminated model
/// exposes its von Mises component parameters.
std::vector<std::string> parameter_names(Family f);

/// Value of a named parameter ("mu", "kappa", "rho", "lambda", "epsilon").
double parameter_value(const FamilyParams& theta, std::string_view name);

/// Precomputed evaluator for one parameter value. Construction does all the
/// per-theta work (normalizing constants, Fourier coefficients) so repeated
/// evaluation is cheap.
class CircularModel {
 public:
  explicit CircularModel(const FamilyParams& theta);

  const FamilyParams& params() const { return theta_; }

  double pdf(double x) const;
  /// -infinity where the density vanishes (sine-skewed with |lambda| = 1).
  double logpdf(double x) const;
  /// CDF with the cut at 0, extended by winding.
  double cdf(double x) const;
  /// inf{x in [0, 2pi] : cdf(x) >= u}; the result is 2pi for u = 1.
  double quantile(double u) const;
  /// Quantiles for ascending levels in [0, 1], one pass.
  std::vector<double> quantiles(std::span<const double> sorted_levels) const;
  /// cdf(2pi (i+1) / D) - cdf(0) for i = 0..D-1; last entry exactly 1.
  std::vector<double> cdf_on_grid(std::size_t grid_size) const;

  CircularCdf cdf_view() const;

 private:
  double cdf_base(double x) const;  // x in [0, 2pi]
  double vm_series(double cos_t, double sin_t) const;
  double refine_quantile(double u, double lo, double hi, double x) const;

  FamilyParams theta_;
  double log_norm_ = 0.0;      // -log(2 pi I_0(kappa))
  double scaled_norm_ = 0.0;   // 1 / (2 pi exp(-kappa) I_0(kappa))
  std::vector<double> coef_;   // I_j / (j I_0), j = 1..J (index j-1)
  double series_at_mu_ = 0.0;  // sum coef_j sin(j mu)
  double skew_scale_ = 0.0;    // lambda / (2 pi exp(-kappa) I_0 kappa)
  double skew_origin_ = 0.0;   // cos(mu)
  double wc_ratio_ = 1.0;      // (1 + rho) / (1 - rho)
  double wc_origin_ = 0.0;     // centred wrapped Cauchy CDF at -mu
};

double family_pdf(const FamilyParams& theta, double x);
double family_logpdf(const FamilyParams& theta, double x);
double family_cdf(const FamilyParams& theta, double x);
double family_quantile(const FamilyParams& theta, double u);

/// n i.i.d. draws; deterministic for a given seed.
CircularSample family_sample(const FamilyParams& theta, std::size_t n,
                             std::uint64_t seed);

/// Sum of log-densities over the sample (may be -infinity).
double log_likelihood(const FamilyParams& theta, const CircularSample& s);

struct FisherMatrix {
  std::size_t dim = 0;
  std::vector<double> entries;  // row-major
  double operator()(std::size_t i, std::size_t j) const {
    return entries[i * dim + j];
  }
};

/// Fisher information per observation, parameters ordered (mu, kappa),
/// (mu, rho) or (mu, kappa, lambda). Throws NumericalError at the boundary
/// (rho -> 1, |lambda| = 1) and InvalidArgument for families without a
/// Fisher matrix.
FisherMatrix family_fisher(const FamilyParams& theta);

}  // namespace circw
