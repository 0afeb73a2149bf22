#pragma once

// Wasserstein distances on the circle.
//
// Equal-weight atoms: an optimal circular matching is non-crossing, so W_p
// is the best cyclic shift k of the sorted atoms, where atom j of `b` is
// lifted by 2pi floor(j / n). The shift cost is convex in k.
//
// General weights: W_p^p = min over alpha of
//   integral_0^1 |Qa^-1(u) - Qb^-1(u + alpha)|^p du,
// convex in alpha.
//
// p = 1 on a grid of D points: (2pi / D) sum_i |d_i - m| with d_i the CDF
// differences at 2pi i / D and m their median.

#include <cstddef>
#include <span>
#include <vector>

#include "circw/circular.hpp"
#include "circw/families.hpp"
#include "circw/optimize.hpp"

namespace circw {

class WassersteinOrder {
 public:
  /// Throws InvalidArgument unless p >= 1.
  explicit WassersteinOrder(double p);
  double value() const { return p_; }

 private:
  double p_;
};

/// CDF values at the grid points 2pi (i+1) / D, i = 0..D-1. Non-decreasing,
/// in [0, 1], last value 1.
class GridCdf {
 public:
  explicit GridCdf(std::vector<double> values);
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

GridCdf grid_cdf_of(const CircularSample& s, std::size_t grid_size);
GridCdf grid_cdf_of(const FamilyParams& theta, std::size_t grid_size);
GridCdf grid_cdf_of(const CircularModel& model, std::size_t grid_size);

/// Atoms at 2pi k / D (k = D maps to 0) carrying the CDF increments; empty
/// cells are dropped.
DiscreteCircularDist grid_discretization(const GridCdf& g);

/// Atoms at the quantiles of levels k/n, k = 1..n, weight 1/n. Level 1 wraps
/// to the cut point 0.
DiscreteCircularDist discretize_family_equal_mass(const FamilyParams& theta,
                                                  std::size_t n);
/// Same atoms as a sorted vector, duplicates kept.
std::vector<double> equal_mass_atoms(const CircularModel& model, std::size_t n);

// Spans below hold sorted atoms in [0, 2pi) of two equal-weight
// distributions of the same size; duplicates are allowed.

/// (1/n) sum_i |a_i - b'_{i+k}|^p for any integer k.
double shift_cost(std::span<const double> a, std::span<const double> b,
                  long k, WassersteinOrder p);
double shift_cost(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                  long k, WassersteinOrder p);

/// Convex search over shifts k in [-n, n]; falls back to a scan if the
/// located point is not a local minimum.
double wp_discrete(std::span<const double> a, std::span<const double> b,
                   WassersteinOrder p);
double wp_discrete(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                   WassersteinOrder p);

/// Exhaustive scan of all shifts; O(n^2).
double wp_bruteforce(std::span<const double> a, std::span<const double> b,
                     WassersteinOrder p);
double wp_bruteforce(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                     WassersteinOrder p);

/// Arbitrary weights: exact evaluation of the alpha objective over the
/// merged breakpoints, golden-section search over alpha in [-1, 1].
double wp_general(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                  WassersteinOrder p, double tol = 1e-13);

/// Value of the alpha objective (before the 1/p root).
double shift_objective(const DiscreteCircularDist& a,
                       const DiscreteCircularDist& b, double alpha,
                       WassersteinOrder p);

/// Grid W1 with the median offset located by linear-time selection (lower
/// median for even D).
double w1_grid(const GridCdf& q, const GridCdf& pm,
               SelectMethod method = SelectMethod::MedianOfMedians);
/// Same, reusing `scratch` (resized as needed) to avoid allocation.
double w1_grid(std::span<const double> q, std::span<const double> pm,
               std::vector<double>& scratch);

/// min over alpha of integral_0^2pi |Q(x) - P(x) - alpha| dx with a
/// composite midpoint rule. Validation path.
double w1_cdf_search(const CircularCdf& q, const CircularCdf& pm,
                     std::size_t quad_points);

}  // namespace circw
