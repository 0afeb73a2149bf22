#pragma once

// Angles on the circle [0, 2pi), the geodesic metric, circular samples,
// discrete circular distributions and CDFs extended to the real line by
// winding: Q(x + 2pi) = Q(x) + 1.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace circw {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite real to [0, 2pi). Idempotent on [0, 2pi).
double normalize_angle(double x);

/// Wraps a real difference into (-pi, pi].
double wrap_difference(double d);

class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(normalize_angle(radians)) {}

  double value() const { return value_; }
  Angle rotated(double delta) const { return Angle(value_ + delta); }

  friend bool operator==(Angle, Angle) = default;

 private:
  double value_ = 0.0;
};

/// Geodesic distance min(|x - y|, 2pi - |x - y|), in [0, pi].
double circ_dist(Angle x, Angle y);
double circ_dist(double x, double y);

/// Non-empty, sorted sample of angles in [0, 2pi). Immutable.
class CircularSample {
 public:
  /// Normalizes and sorts. Throws InvalidArgument on empty or non-finite
  /// input.
  static CircularSample from(std::span<const double> raw);

  std::span<const double> angles() const { return angles_; }
  std::size_t size() const { return angles_.size(); }
  double operator[](std::size_t i) const { return angles_[i]; }

  CircularSample rotated(double delta) const;

  friend bool operator==(const CircularSample&,
                         const CircularSample&) = default;

 private:
  explicit CircularSample(std::vector<double> sorted)
      : angles_(std::move(sorted)) {}
  std::vector<double> angles_;
};

CircularSample make_sample(std::span<const double> raw);

/// Right-continuous empirical CDF with the cut at 0 and winding offset for
/// arguments outside [0, 2pi).
double empirical_cdf(const CircularSample& s, double x);

/// Finitely supported distribution on the circle. Support is strictly
/// increasing in [0, 2pi); weights are positive and sum to one.
class DiscreteCircularDist {
 public:
  /// Normalizes atoms, sorts, merges exact duplicates by summing weights and
  /// rescales weights to sum to one. Throws when sizes differ, a weight is
  /// not positive, or the weights do not sum to one within 1e-9.
  DiscreteCircularDist(std::vector<double> support, std::vector<double> weights);

  /// Weight 1/n on each atom (duplicates merge).
  static DiscreteCircularDist uniform_over(std::span<const double> atoms);

  std::span<const double> support() const { return support_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  /// True when every weight equals 1/size within tol.
  bool has_equal_weights(double tol = 1e-12) const;

  /// CDF with winding, right-continuous.
  double cdf(double x) const;

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
};

DiscreteCircularDist discrete_from_sample(const CircularSample& s);

/// A CDF on [0, 2pi) extended to the whole line by winding. The wrapped
/// function only ever sees arguments in [0, 2pi).
class CircularCdf {
 public:
  explicit CircularCdf(std::function<double(double)> base)
      : base_(std::move(base)) {}

  static CircularCdf of(const CircularSample& s);
  static CircularCdf of(const DiscreteCircularDist& d);

  double operator()(double x) const;

 private:
  std::function<double(double)> base_;
};

// Sample text files: one angle in radians per line, '#' comments and blank
// lines ignored.
CircularSample read_sample(std::istream& in);
CircularSample read_sample_file(const std::string& path);
void write_sample(std::ostream& out, const CircularSample& s);
void write_sample_file(const std::string& path, const CircularSample& s);

}  // namespace circw
