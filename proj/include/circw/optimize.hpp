#pragma once

// Derivative-free minimizers and linear-time selection.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace circw {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Golden-section contraction of [lo, hi] for a convex f. The returned value
/// is never above f(lo) or f(hi).
ScalarMinimum convex_min_1d(const std::function<double(double)>& f, double lo,
                            double hi, double tol);

enum class SelectMethod { MedianOfMedians, Sort };

/// k-th smallest value (0-based). MedianOfMedians runs in worst-case linear
/// time; Sort is kept for differential testing. The input is not modified.
double select_kth(std::span<const double> values, std::size_t k,
                  SelectMethod method = SelectMethod::MedianOfMedians);

/// Same, reordering `scratch` in place.
double select_kth_inplace(std::span<double> scratch, std::size_t k);

/// Per-dimension bounds. Periodic dimensions span exactly 2pi and wrap; the
/// others clip.
struct BoxConstraints {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> periodic;

  std::size_t dim() const { return lower.size(); }
  void validate() const;
  /// Wraps periodic coordinates, clips the rest.
  void project(std::span<double> x) const;
};

struct OptimizerReport {
  std::vector<double> argmin;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Best value after each generation (DE) or cycle (Powell).
  std::vector<double> trace;
};

using Objective = std::function<double(std::span<const double>)>;

/// Powell's direction-set method with Brent line searches. Reaching
/// max_iter cycles yields converged = false, not an error.
OptimizerReport powell_min(const Objective& f, std::vector<double> x0,
                           const BoxConstraints& box, double tol,
                           std::size_t max_iter);

struct DeSettings {
  std::size_t pop = 0;  // 0 selects 15 * dim
  double cr = 0.9;
  double fw = 0.7;
  std::size_t gens = 300;
  /// Early stop once the population spread satisfies
  /// stddev(f) <= tol * |mean(f)| + atol. Zero disables.
  double tol = 0.0;
  double atol = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Differential evolution, rand/1/bin. Deterministic for a given seed and
/// independent of `threads`. An optional start point joins the initial
/// population.
OptimizerReport diff_evolution_min(const Objective& f, const BoxConstraints& box,
                                   const DeSettings& settings,
                                   std::span<const double> start = {});

}  // namespace circw
