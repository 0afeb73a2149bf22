#pragma once

// Optimizer coordinates for the fitted families:
//   vm   (mu, log kappa)
//   wc   (mu, rho)
//   ssvm (mu, log kappa, lambda)
// mu is periodic on [0, 2pi).

#include <span>
#include <vector>

#include "circw/estimate.hpp"

namespace circw::detail {

struct SearchSpace {
  Family family;
  BoxConstraints box;

  FamilyParams to_params(std::span<const double> x) const;
  std::vector<double> from_params(const FamilyParams& theta) const;
  /// True when a bounded coordinate sits on its bound.
  bool on_boundary(std::span<const double> x) const;
};

/// Throws InvalidArgument for families that cannot be fitted.
SearchSpace search_space(Family family);

/// Moment-based start: circular mean for mu, kappa from the mean resultant
/// length, rho equal to it, lambda zero.
FamilyParams moment_start(const CircularSample& s, Family family);

OptimizerReport run_optimizer(const Objective& f, const SearchSpace& space,
                              std::vector<double> start,
                              const OptimizerSettings& settings);

struct Resultant {
  double mean_cos;
  double mean_sin;
  double length;
  double direction;
};
Resultant mean_resultant(const CircularSample& s);

}  // namespace circw::detail
