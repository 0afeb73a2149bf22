#include "circw/circular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "circw/error.hpp"

namespace circw {

double normalize_angle(double x) {
  if (x >= 0.0 && x < kTwoPi) return x;
  double r = x - kTwoPi * std::floor(x / kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_difference(double d) {
  double r = normalize_angle(d);
  return r > kPi ? r - kTwoPi : r;
}

double circ_dist(Angle x, Angle y) {
  const double d = std::fabs(x.value() - y.value());
  return std::min(d, kTwoPi - d);
}

double circ_dist(double x, double y) { return circ_dist(Angle(x), Angle(y)); }

CircularSample CircularSample::from(std::span<const double> raw) {
  if (raw.empty()) throw InvalidArgument("empty sample");
  std::vector<double> out;
  out.reserve(raw.size());
  for (double v : raw) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite value in sample");
    out.push_back(normalize_angle(v));
  }
  std::sort(out.begin(), out.end());
  return CircularSample(std::move(out));
}

CircularSample CircularSample::rotated(double delta) const {
  std::vector<double> shifted(angles_);
  for (double& v : shifted) v += delta;
  return from(shifted);
}

CircularSample make_sample(std::span<const double> raw) {
  return CircularSample::from(raw);
}

namespace {

// Splits x into a winding count and a representative in [0, 2pi).
std::pair<double, double> unwind(double x) {
  if (x >= 0.0 && x < kTwoPi) return {0.0, x};
  const double k = std::floor(x / kTwoPi);
  double y = x - kTwoPi * k;
  if (y < 0.0) return {k - 1.0, normalize_angle(y)};
  if (y >= kTwoPi) return {k + 1.0, 0.0};
  return {k, y};
}

}  // namespace

double empirical_cdf(const CircularSample& s, double x) {
  const auto [k, y] = unwind(x);
  const auto a = s.angles();
  const auto count = std::upper_bound(a.begin(), a.end(), y) - a.begin();
  return static_cast<double>(count) / static_cast<double>(a.size()) + k;
}

DiscreteCircularDist::DiscreteCircularDist(std::vector<double> support,
                                           std::vector<double> weights) {
  if (support.empty()) throw InvalidArgument("empty support");
  if (support.size() != weights.size())
    throw InvalidArgument("support and weights differ in length");
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i])) throw InvalidArgument("non-finite atom");
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw InvalidArgument("weights must be positive");
    support[i] = normalize_angle(support[i]);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return support[l] < support[r];
  });
  double total = 0.0;
  for (std::size_t idx : order) {
    total += weights[idx];
    if (!support_.empty() && support_.back() == support[idx]) {
      weights_.back() += weights[idx];
    } else {
      support_.push_back(support[idx]);
      weights_.push_back(weights[idx]);
    }
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw InvalidArgument("weights must sum to one");
  for (double& w : weights_) w /= total;
}

DiscreteCircularDist DiscreteCircularDist::uniform_over(
    std::span<const double> atoms) {
  std::vector<double> support(atoms.begin(), atoms.end());
  std::vector<double> weights(atoms.size(),
                              1.0 / static_cast<double>(atoms.size()));
  return DiscreteCircularDist(std::move(support), std::move(weights));
}

bool DiscreteCircularDist::has_equal_weights(double tol) const {
  const double w = 1.0 / static_cast<double>(weights_.size());
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double v) { return std::fabs(v - w) <= tol; });
}

double DiscreteCircularDist::cdf(double x) const {
  const auto [k, y] = unwind(x);
  const auto end = std::upper_bound(support_.begin(), support_.end(), y);
  double acc = 0.0;
  for (auto it = support_.begin(); it != end; ++it)
    acc += weights_[static_cast<std::size_t>(it - support_.begin())];
  return std::min(acc, 1.0) + k;
}

DiscreteCircularDist discrete_from_sample(const CircularSample& s) {
  return DiscreteCircularDist::uniform_over(s.angles());
}

double CircularCdf::operator()(double x) const {
  const auto [k, y] = unwind(x);
  return base_(y) + k;
}

CircularCdf CircularCdf::of(const CircularSample& s) {
  return CircularCdf([s](double x) { return empirical_cdf(s, x); });
}

CircularCdf CircularCdf::of(const DiscreteCircularDist& d) {
  return CircularCdf([d](double x) { return d.cdf(x); });
}

}  // namespace circw
