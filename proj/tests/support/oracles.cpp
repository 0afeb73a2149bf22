#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

long double bessel_series(int n, long double z) {
  const long double half = z / 2.0L;
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= half / static_cast<long double>(i);
  long double sum = term;
  for (int m = 1; m < 100000; ++m) {
    term *= half * half / (static_cast<long double>(m) * static_cast<long double>(m + n));
    sum += term;
    if (term < 1e-18L * sum) break;
  }
  return sum;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  // Split into pieces so narrow peaks are not missed.
  const int pieces = 64;
  const double h = (b - a) / pieces;
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == pieces ? b : lo + h;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(mid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += simpson(f, lo, flo, hi, fhi, mid, fmid, whole, tol / pieces, 40);
  }
  return total;
}

double bisect(const std::function<double(double)>& f, double u, double lo, double hi,
              int iterations) {
  for (int i = 0; i < iterations && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < u) lo = mid; else hi = mid;
  }
  return hi;
}

double arc(double x, double y) {
  double d = std::fmod(std::fabs(x - y), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double wp_permutations(std::vector<double> a, const std::vector<double>& b, double p) {
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double best = HUGE_VAL;
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) cost += std::pow(arc(a[i], b[perm[i]]), p);
    best = std::min(best, cost / static_cast<double>(a.size()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::pow(best, 1.0 / p);
}

double naive_shift_cost(const std::vector<double>& a, const std::vector<double>& b,
                        long k, double p) {
  const long n = static_cast<long>(a.size());
  double total = 0.0;
  for (long i = 0; i < n; ++i) {
    long j = i + k;
    double lift = 0.0;
    while (j >= n) {
      j -= n;
      lift += kTwoPi;
    }
    while (j < 0) {
      j += n;
      lift -= kTwoPi;
    }
    total += std::pow(std::fabs(a[i] - b[j] - lift), p);
  }
  return total / static_cast<double>(n);
}

double grid_scan_min(const std::function<double(double)>& f, double lo, double hi,
                     std::size_t m, double* argmin) {
  double best = HUGE_VAL;
  double arg = lo;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    const double v = f(x);
    if (v < best) {
      best = v;
      arg = x;
    }
  }
  if (argmin) *argmin = arg;
  return best;
}

std::vector<double> random_angles(circw::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = kTwoPi * rng.uniform();
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> clustered_angles(circw::Rng& rng, std::size_t n) {
  const double centre = kTwoPi * rng.uniform();
  const double width = 0.05 + 2.0 * rng.uniform();
  std::vector<double> v(n);
  for (auto& x : v) {
    double y = centre + width * (rng.uniform() - 0.5);
    if (rng.uniform() < 0.1) y = centre;  // exact ties
    y = std::fmod(y, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    x = y;
  }
  std::sort(v.begin(), v.end());
  return v;
}

double wc_loglik(const std::vector<double>& x, double mu, double rho) {
  double total = 0.0;
  for (double xi : x) {
    const double dens = (1.0 - rho * rho) /
                        (kTwoPi * (1.0 + rho * rho - 2.0 * rho * std::cos(xi - mu)));
    total += std::log(dens);
  }
  return total;
}

double maximize_2d(const std::function<double(double, double)>& f, double lo0,
                   double hi0, double lo1, double hi1, double* x0, double* x1) {
  const int m = 60;
  double b0 = lo0;
  double b1 = lo1;
  double best = -HUGE_VAL;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      const double u = lo0 + (hi0 - lo0) * i / m;
      const double v = lo1 + (hi1 - lo1) * j / m;
      const double val = f(u, v);
      if (val > best) {
        best = val;
        b0 = u;
        b1 = v;
      }
    }
  }
  double w0 = (hi0 - lo0) / m;
  double w1 = (hi1 - lo1) / m;
  for (int round = 0; round < 60; ++round) {
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double u = std::clamp(b0 + w0 * i / 10.0, lo0, hi0);
        const double v = std::clamp(b1 + w1 * j / 10.0, lo1, hi1);
        const double val = f(u, v);
        if (val > best) {
          best = val;
          b0 = u;
          b1 = v;
        }
      }
    }
    w0 *= 0.5;
    w1 *= 0.5;
  }
  if (x0) *x0 = b0;
  if (x1) *x1 = b1;
  return best;
}

}  // namespace oracle
