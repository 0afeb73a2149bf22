#include "circw/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circw/error.hpp"

namespace circw {

WassersteinOrder::WassersteinOrder(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw InvalidArgument("Wasserstein order must satisfy p >= 1");
}

namespace {

inline double power(double x, double p) {
  x = std::fabs(x);
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void require_equal_weight(const DiscreteCircularDist& a,
                          const DiscreteCircularDist& b) {
  if (a.size() != b.size() || !a.has_equal_weights() || !b.has_equal_weights())
    throw InvalidArgument("equal-weight inputs required");
}

void require_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size())
    throw InvalidArgument("equal-weight inputs required");
}

std::vector<double> cumulative(std::span<const double> w) {
  std::vector<double> c(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    c[i] = acc;
  }
  c.back() = 1.0;
  return c;
}

}  // namespace

double shift_cost(std::span<const double> a, std::span<const double> b, long k,
                  WassersteinOrder order) {
  require_same_size(a, b);
  const long n = static_cast<long>(a.size());
  const double p = order.value();
  // Split i into runs with a constant lift q = floor((i + k) / n).
  double total = 0.0;
  long i = 0;
  while (i < n) {
    const long j = i + k;
    const long q = floor_div(j, n);
    const long r = j - q * n;
    const long run = std::min(n - i, n - r);
    const double lift = kTwoPi * static_cast<double>(q);
    for (long t = 0; t < run; ++t)
      total += power(a[static_cast<std::size_t>(i + t)] -
                         (b[static_cast<std::size_t>(r + t)] + lift),
                     p);
    i += run;
  }
  return total / static_cast<double>(n);
}

double shift_cost(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                  long k, WassersteinOrder p) {
  require_equal_weight(a, b);
  return shift_cost(a.support(), b.support(), k, p);
}

double wp_discrete(std::span<const double> a, std::span<const double> b,
                   WassersteinOrder p) {
  require_same_size(a, b);
  // A fixed argument order makes the result exactly symmetric.
  if (std::ranges::lexicographical_compare(b, a)) std::swap(a, b);
  const long n = static_cast<long>(a.size());
  const auto cost = [&](long k) { return shift_cost(a, b, k, p); };

  // Binary search for the first k whose forward difference is >= 0.
  long lo = -n;
  long hi = n;
  while (lo < hi) {
    const long mid = floor_div(lo + hi, 2);
    if (cost(mid + 1) >= cost(mid)) hi = mid; else lo = mid + 1;
  }
  double best = cost(lo);
  const bool left_ok = lo == -n || cost(lo - 1) >= best;
  const bool right_ok = lo == n || cost(lo + 1) >= best;
  if (!left_ok || !right_ok) {
    for (long k = -n; k <= n; ++k) best = std::min(best, cost(k));
  }
  return std::pow(best, 1.0 / p.value());
}

double wp_discrete(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                   WassersteinOrder p) {
  require_equal_weight(a, b);
  return wp_discrete(a.support(), b.support(), p);
}

double wp_bruteforce(std::span<const double> a, std::span<const double> b,
                     WassersteinOrder p) {
  require_same_size(a, b);
  if (std::ranges::lexicographical_compare(b, a)) std::swap(a, b);
  const long n = static_cast<long>(a.size());
  double best = shift_cost(a, b, -n, p);
  for (long k = -n + 1; k <= n; ++k) best = std::min(best, shift_cost(a, b, k, p));
  return std::pow(best, 1.0 / p.value());
}

double wp_bruteforce(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                     WassersteinOrder p) {
  require_equal_weight(a, b);
  return wp_bruteforce(a.support(), b.support(), p);
}

double shift_objective(const DiscreteCircularDist& a,
                       const DiscreteCircularDist& b, double alpha,
                       WassersteinOrder order) {
  const double p = order.value();
  const auto xa = a.support();
  const auto xb = b.support();
  const auto ca = cumulative(a.weights());
  const auto cb = cumulative(b.weights());
  const std::size_t n = xa.size();
  const std::size_t m = xb.size();

  // Level u of `a` meets level u + alpha of `b`, lifted by 2pi per wrap.
  double lift = std::floor(alpha);
  const double frac = alpha - lift;
  std::size_t j = static_cast<std::size_t>(
      std::upper_bound(cb.begin(), cb.end(), frac) - cb.begin());
  if (j == m) {
    j = 0;
    lift += 1.0;
  }
  double u = 0.0;
  double total = 0.0;
  std::size_t i = 0;
  while (i < n) {
    const double next_a = ca[i];
    const double next_b = cb[j] + lift - alpha;
    const double end = std::min(next_a, next_b);
    if (end > u) {
      total += (end - u) * power(xa[i] - (xb[j] + kTwoPi * lift), p);
      u = end;
    }
    if (next_a <= next_b) ++i;
    if (next_b <= next_a) {
      if (++j == m) {
        j = 0;
        lift += 1.0;
      }
    }
  }
  return total;
}

double wp_general(const DiscreteCircularDist& a, const DiscreteCircularDist& b,
                  WassersteinOrder p, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("wp_general: tol must be > 0");
  const auto objective = [&](double alpha) { return shift_objective(a, b, alpha, p); };
  const auto best = convex_min_1d(objective, -1.0, 1.0, tol);

  // The objective is piecewise linear in alpha, with kinks where a CDF level
  // of `a` meets one of `b` (alpha = ca_i - cb_j + k). The minimum sits on a
  // kink, so evaluate the kinks next to the golden-section point.
  double value = best.value;
  auto ca = cumulative(a.weights());
  auto cb = cumulative(b.weights());
  ca.insert(ca.begin(), 0.0);
  cb.insert(cb.begin(), 0.0);
  const double reach = 4.0 * tol + 1e-15;
  for (double level : ca) {
    for (int k = -2; k <= 2; ++k) {
      const double target = level + k - best.argmin;
      auto it = std::lower_bound(cb.begin(), cb.end(), target - reach);
      for (; it != cb.end() && *it <= target + reach; ++it) {
        const double alpha = level + k - *it;
        if (alpha >= -1.0 && alpha <= 1.0) value = std::min(value, objective(alpha));
      }
    }
  }
  return std::pow(std::max(value, 0.0), 1.0 / p.value());
}

GridCdf::GridCdf(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InvalidArgument("grid needs at least 2 points");
  double prev = 0.0;
  for (double v : values_) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      throw InvalidArgument("grid CDF values must lie in [0, 1]");
    if (v < prev - 1e-12) throw InvalidArgument("grid CDF must be non-decreasing");
    prev = std::max(prev, v);
  }
  if (std::fabs(values_.back() - 1.0) > 1e-12)
    throw InvalidArgument("grid CDF must end at 1");
}

GridCdf grid_cdf_of(const CircularSample& s, std::size_t grid_size) {
  if (grid_size < 2) throw InvalidArgument("grid needs at least 2 points");
  const auto x = s.angles();
  const double step = kTwoPi / static_cast<double>(grid_size);
  const double inv_n = 1.0 / static_cast<double>(x.size());
  std::vector<double> values(grid_size);
  // Mass in (0, t]; atoms at exactly 0 belong to the last cell (0 == 2pi).
  std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(x.begin(), x.end(), 0.0) - x.begin());
  const std::size_t zeros = idx;
  for (std::size_t i = 0; i + 1 < grid_size; ++i) {
    const double t = step * static_cast<double>(i + 1);
    while (idx < x.size() && x[idx] <= t) ++idx;
    values[i] = static_cast<double>(idx - zeros) * inv_n;
  }
  values[grid_size - 1] = 1.0;
  return GridCdf(std::move(values));
}

GridCdf grid_cdf_of(const CircularModel& model, std::size_t grid_size) {
  if (grid_size < 2) throw InvalidArgument("grid needs at least 2 points");
  return GridCdf(model.cdf_on_grid(grid_size));
}

GridCdf grid_cdf_of(const FamilyParams& theta, std::size_t grid_size) {
  return grid_cdf_of(CircularModel(theta), grid_size);
}

DiscreteCircularDist grid_discretization(const GridCdf& g) {
  const auto v = g.values();
  const double step = kTwoPi / static_cast<double>(v.size());
  std::vector<double> support;
  std::vector<double> weights;
  double prev = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double w = v[k] - prev;
    prev = v[k];
    if (w <= 0.0) continue;
    support.push_back(k + 1 == v.size() ? 0.0 : step * static_cast<double>(k + 1));
    weights.push_back(w);
  }
  return DiscreteCircularDist(std::move(support), std::move(weights));
}

std::vector<double> equal_mass_atoms(const CircularModel& model, std::size_t n) {
  if (n == 0) throw InvalidArgument("discretization size must be positive");
  std::vector<double> levels(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    levels[k - 1] = static_cast<double>(k) / static_cast<double>(n);
  const auto q = model.quantiles(levels);
  std::vector<double> atoms;
  atoms.reserve(n);
  atoms.push_back(0.0);
  for (double x : q) atoms.push_back(normalize_angle(x));
  if (!std::is_sorted(atoms.begin(), atoms.end())) std::sort(atoms.begin(), atoms.end());
  return atoms;
}

DiscreteCircularDist discretize_family_equal_mass(const FamilyParams& theta,
                                                  std::size_t n) {
  const auto atoms = equal_mass_atoms(CircularModel(theta), n);
  return DiscreteCircularDist::uniform_over(atoms);
}

double w1_grid(std::span<const double> q, std::span<const double> pm,
               std::vector<double>& scratch) {
  if (q.size() != pm.size() || q.empty())
    throw InvalidArgument("w1_grid: grids differ in size");
  const std::size_t d = q.size();
  scratch.resize(d);
  for (std::size_t i = 0; i < d; ++i) scratch[i] = q[i] - pm[i];
  const double m = select_kth_inplace(scratch, (d - 1) / 2);
  double total = 0.0;
  for (double v : scratch) total += std::fabs(v - m);
  return kTwoPi / static_cast<double>(d) * total;
}

double w1_grid(const GridCdf& q, const GridCdf& pm, SelectMethod method) {
  if (q.size() != pm.size()) throw InvalidArgument("w1_grid: grids differ in size");
  const std::size_t d = q.size();
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = q.values()[i] - pm.values()[i];
  const double m = select_kth(diff, (d - 1) / 2, method);
  double total = 0.0;
  for (double v : diff) total += std::fabs(v - m);
  return kTwoPi / static_cast<double>(d) * total;
}

double w1_cdf_search(const CircularCdf& q, const CircularCdf& pm,
                     std::size_t quad_points) {
  if (quad_points == 0) throw InvalidArgument("w1_cdf_search: need quadrature points");
  const double h = kTwoPi / static_cast<double>(quad_points);
  std::vector<double> diff(quad_points);
  for (std::size_t k = 0; k < quad_points; ++k) {
    const double x = h * (static_cast<double>(k) + 0.5);
    diff[k] = q(x) - pm(x);
  }
  const auto objective = [&](double alpha) {
    double total = 0.0;
    for (double v : diff) total += std::fabs(v - alpha);
    return h * total;
  };
  return convex_min_1d(objective, -1.0, 1.0, 1e-12).value;
}

}  // namespace circw
