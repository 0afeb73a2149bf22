#pragma once

// Maximum likelihood estimators and the Wasserstein projection estimator
//   theta_hat = argmin_theta W_p(empirical(s), p_theta).

#include <cstddef>
#include <cstdint>
#include <string>

#include "circw/circular.hpp"
#include "circw/families.hpp"
#include "circw/optimize.hpp"

namespace circw {

enum class OptimizerMethod { DE, Powell, DEPowell };

std::string_view optimizer_method_name(OptimizerMethod m);
/// "de", "powell", "de+powell".
OptimizerMethod parse_optimizer_method(std::string_view name);

struct OptimizerSettings {
  OptimizerMethod method = OptimizerMethod::DEPowell;
  std::size_t de_pop = 0;  // 0 selects 15 * dim
  std::size_t de_gens = 300;
  /// Relative population spread at which DE stops early.
  double de_tol = 1e-6;
  /// Powell tolerance.
  double tol = 1e-10;
  std::size_t powell_max_iter = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

enum class EstimatorKind { MLE, WassersteinProjection };
enum class DiscretizationKind { EqualMass, Grid };

struct Discretization {
  DiscretizationKind kind = DiscretizationKind::EqualMass;
  /// Number of atoms or grid points; 0 means the sample size.
  std::size_t size = 0;
};

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::MLE;
  double p = 1.0;
  Discretization discretization;
  OptimizerSettings optimizer;

  static EstimatorSpec mle();
  static EstimatorSpec wasserstein(double p, Discretization d);

  /// Throws InvalidArgument for p < 1 or a grid with p != 1.
  void validate() const;
  /// "MLE", "W1" (grid), "W1-equal-mass", "W2", "W1.5", ...
  std::string label() const;
};

/// Parses "mle", "w1", "w2", "w<p>", "w<p>-grid", "w<p>-equal-mass". W1
/// defaults to the grid, other orders to equal-mass atoms.
EstimatorSpec parse_estimator(std::string_view name);

struct FitResult {
  FamilyParams theta_hat;
  /// Achieved distance, or the mean negative log-likelihood for MLE.
  double objective = 0.0;
  OptimizerReport report;
  /// Set when an estimate was pulled back onto the parameter box.
  bool clamped = false;
};

/// Solves I_1(kappa) / I_0(kappa) = r for 0 <= r < 1.
double invert_bessel_ratio(double r);

/// Closed-form mean direction, kappa by ratio inversion. Throws
/// NumericalError when the mean direction is undefined.
FitResult mle_von_mises(const CircularSample& s);

/// Fixed-point reweighting; hitting max_iter yields converged = false with
/// the last iterate.
FitResult mle_wrapped_cauchy(const CircularSample& s, double tol = 1e-10,
                             std::size_t max_iter = 500);

/// Numerical maximization over (mu, kappa, lambda).
FitResult mle_ssvm(const CircularSample& s, const OptimizerSettings& opt = {});

/// Fits the family named in `family` (vm, wc or ssvm).
FitResult wasserstein_fit(const CircularSample& s, Family family,
                          const EstimatorSpec& spec);

/// Dispatches on spec.kind.
FitResult fit(const CircularSample& s, Family family, const EstimatorSpec& spec);

/// circ_dist(est, truth)^2.
double circular_sq_error(Angle est, Angle truth);

}  // namespace circw
