#include "circw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "circw/circular.hpp"
#include "circw/error.hpp"
#include "circw/rng.hpp"

namespace circw {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt 5 - 1) / 2
constexpr double kInf = std::numeric_limits<double>::infinity();

double guard(double v) { return std::isnan(v) ? kInf : v; }

}  // namespace

ScalarMinimum convex_min_1d(const std::function<double(double)>& f, double lo,
                            double hi, double tol) {
  if (!(lo < hi)) throw InvalidArgument("convex_min_1d: need lo < hi");
  if (!(tol > 0.0)) throw InvalidArgument("convex_min_1d: tol must be > 0");
  double a = lo;
  double b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = guard(f(x1));
  double f2 = guard(f(x2));
  std::size_t iter = 0;
  while (b - a > tol && x1 < x2 && iter < 2000) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = guard(f(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = guard(f(x2));
    }
    ++iter;
  }
  ScalarMinimum best{x1, f1, iter};
  if (f2 < best.value) best = {x2, f2, iter};
  const double f_lo = guard(f(lo));
  const double f_hi = guard(f(hi));
  if (f_lo < best.value) best = {lo, f_lo, iter};
  if (f_hi < best.value) best = {hi, f_hi, iter};
  return best;
}

void BoxConstraints::validate() const {
  if (lower.size() != upper.size() || lower.size() != periodic.size())
    throw InvalidArgument("box: dimension mismatch");
  if (lower.empty()) throw InvalidArgument("box: zero dimensions");
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!(lower[d] < upper[d])) throw InvalidArgument("box: need lower < upper");
    if (periodic[d] && std::fabs(upper[d] - lower[d] - kTwoPi) > 1e-12)
      throw InvalidArgument("box: periodic dimension must span 2pi");
  }
}

void BoxConstraints::project(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (periodic[d])
      x[d] = lower[d] + normalize_angle(x[d] - lower[d]);
    else
      x[d] = std::clamp(x[d], lower[d], upper[d]);
  }
}

namespace {

struct Point {
  double t;
  double f;
};

// Brent's parabolic/golden minimizer on [a, b] given an interior point x
// with f(x) <= f(a), f(b).
Point brent(const std::function<double(double)>& phi, double a, double b,
            Point x0, double rel_tol, double abs_tol) {
  constexpr double kCGold = 0.3819660112501051;
  if (a > b) std::swap(a, b);
  double x = x0.t, w = x0.t, v = x0.t;
  double fx = x0.f, fw = x0.f, fv = x0.f;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = rel_tol * std::fabs(x) + abs_tol;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::fabs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double etemp = e;
      e = d;
      if (!(std::fabs(p) >= std::fabs(0.5 * q * etemp) || p <= q * (a - x) ||
            p >= q * (b - x))) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kCGold * e;
    }
    const double u = std::fabs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = phi(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx};
}

// Line minimization of phi on [tmin, tmax] starting from t = 0.
Point line_minimize(const std::function<double(double)>& phi, double tmin,
                    double tmax, double f0) {
  constexpr double kGrow = 1.618033988749895;
  constexpr double kRel = 3e-8;
  constexpr double kAbs = 1e-12;
  const Point origin{0.0, f0};
  const double h = std::min(1.0, 0.1 * (tmax - tmin));
  if (!(h > 0.0)) return origin;

  const auto probe = [&](double t) {
    t = std::clamp(t, tmin, tmax);
    return Point{t, guard(phi(t))};
  };

  Point prev = origin;
  Point cur = probe(h);
  if (!(cur.f < origin.f)) {
    const Point back = probe(-h);
    if (!(back.f < origin.f)) {
      if (cur.t == back.t) return origin;
      return brent(phi, back.t, cur.t, origin, kRel, kAbs);
    }
    cur = back;
  }
  for (int expand = 0; expand < 80; ++expand) {
    const Point next = probe(cur.t + kGrow * (cur.t - prev.t));
    if (next.t == cur.t) return cur;  // decreasing up to the bound
    if (!(next.f < cur.f)) return brent(phi, prev.t, next.t, cur, kRel, kAbs);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

OptimizerReport powell_min(const Objective& f, std::vector<double> x0,
                           const BoxConstraints& box, double tol,
                           std::size_t max_iter) {
  box.validate();
  const std::size_t n = box.dim();
  if (x0.size() != n) throw InvalidArgument("powell: start point dimension mismatch");
  if (!(tol > 0.0)) throw InvalidArgument("powell: tol must be > 0");

  OptimizerReport report;
  std::vector<double> x = std::move(x0);
  box.project(x);
  std::vector<double> trial(n);
  const auto eval = [&](std::span<const double> p) {
    ++report.evaluations;
    return guard(f(p));
  };

  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;

  double fx = eval(x);

  // Minimizes along u from x, updating x and fx in place.
  const auto search = [&](const std::vector<double>& u) {
    double tmin = -kInf;
    double tmax = kInf;
    bool moves = false;
    for (std::size_t d = 0; d < n; ++d) {
      if (u[d] == 0.0) continue;
      moves = true;
      double lo, hi;
      if (box.periodic[d]) {
        lo = -kPi / std::fabs(u[d]);
        hi = kPi / std::fabs(u[d]);
      } else {
        lo = (box.lower[d] - x[d]) / u[d];
        hi = (box.upper[d] - x[d]) / u[d];
        if (lo > hi) std::swap(lo, hi);
      }
      tmin = std::max(tmin, lo);
      tmax = std::min(tmax, hi);
    }
    if (!moves || !(tmax > tmin)) return;
    const auto phi = [&](double t) {
      for (std::size_t d = 0; d < n; ++d) trial[d] = x[d] + t * u[d];
      box.project(trial);
      return eval(trial);
    };
    const Point best = line_minimize(phi, std::min(tmin, 0.0), std::max(tmax, 0.0), fx);
    if (best.f < fx) {
      for (std::size_t d = 0; d < n; ++d) x[d] += best.t * u[d];
      box.project(x);
      fx = best.f;
    }
  };

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    report.iterations = iter;
    const double f_start = fx;
    const std::vector<double> x_start = x;
    double biggest = 0.0;
    std::size_t biggest_dir = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double before = fx;
      search(dirs[i]);
      if (before - fx > biggest) {
        biggest = before - fx;
        biggest_dir = i;
      }
    }
    report.trace.push_back(fx);
    if (f_start - fx <= tol * (std::fabs(fx) + tol)) {
      report.converged = true;
      break;
    }
    std::vector<double> delta(n);
    for (std::size_t d = 0; d < n; ++d) {
      delta[d] = x[d] - x_start[d];
      if (box.periodic[d]) delta[d] = wrap_difference(delta[d]);
      trial[d] = x[d] + delta[d];
    }
    box.project(trial);
    const double f_ext = eval(trial);
    if (f_ext < f_start) {
      const double a = f_start - fx - biggest;
      const double b = f_start - f_ext;
      const double t = 2.0 * (f_start - 2.0 * fx + f_ext) * a * a - biggest * b * b;
      if (t < 0.0) {
        search(delta);
        dirs[biggest_dir] = dirs.back();
        dirs.back() = delta;
      }
    }
  }
  report.argmin = x;
  report.value = fx;
  return report;
}

OptimizerReport diff_evolution_min(const Objective& f, const BoxConstraints& box,
                                   const DeSettings& settings,
                                   std::span<const double> start) {
  box.validate();
  const std::size_t dim = box.dim();
  const std::size_t pop = settings.pop == 0 ? 15 * dim : settings.pop;
  if (pop < 4) throw InvalidArgument("differential evolution: pop must be >= 4");
  if (!start.empty() && start.size() != dim)
    throw InvalidArgument("differential evolution: start point dimension mismatch");

  Rng rng(settings.seed);
  OptimizerReport report;
  std::vector<double> members(pop * dim);
  std::vector<double> trials(pop * dim);
  std::vector<double> fitness(pop);
  std::vector<double> trial_fitness(pop);
  const auto row = [dim](std::vector<double>& m, std::size_t i) {
    return std::span<double>(m).subspan(i * dim, dim);
  };

  for (std::size_t i = 0; i < pop; ++i)
    for (std::size_t d = 0; d < dim; ++d)
      members[i * dim + d] =
          box.lower[d] + (box.upper[d] - box.lower[d]) * rng.uniform();
  if (!start.empty()) {
    std::copy(start.begin(), start.end(), members.begin());
    box.project(row(members, 0));
  }

  const auto evaluate_all = [&](std::vector<double>& m, std::vector<double>& out) {
    const unsigned threads =
        std::max(1u, std::min<unsigned>(settings.threads, static_cast<unsigned>(pop)));
    const auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        out[i] = guard(f(std::span<const double>(m).subspan(i * dim, dim)));
    };
    if (threads == 1) {
      work(0, pop);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (pop + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(pop, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
      for (auto& th : pool) th.join();
    }
    report.evaluations += pop;
  };

  evaluate_all(members, fitness);
  std::size_t best = static_cast<std::size_t>(
      std::min_element(fitness.begin(), fitness.end()) - fitness.begin());

  bool stopped = false;
  for (std::size_t g = 0; g < settings.gens; ++g) {
    report.iterations = g + 1;
    for (std::size_t i = 0; i < pop; ++i) {
      std::size_t r1, r2, r3;
      do { r1 = rng.below(pop); } while (r1 == i);
      do { r2 = rng.below(pop); } while (r2 == i || r2 == r1);
      do { r3 = rng.below(pop); } while (r3 == i || r3 == r1 || r3 == r2);
      const std::size_t forced = rng.below(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        const bool cross = rng.uniform() < settings.cr || d == forced;
        double v = members[i * dim + d];
        if (cross) {
          double diff = members[r2 * dim + d] - members[r3 * dim + d];
          if (box.periodic[d]) diff = wrap_difference(diff);
          v = members[r1 * dim + d] + settings.fw * diff;
        }
        trials[i * dim + d] = v;
      }
      box.project(row(trials, i));
    }
    evaluate_all(trials, trial_fitness);
    for (std::size_t i = 0; i < pop; ++i) {
      if (trial_fitness[i] <= fitness[i]) {
        fitness[i] = trial_fitness[i];
        std::copy_n(trials.begin() + static_cast<std::ptrdiff_t>(i * dim), dim,
                    members.begin() + static_cast<std::ptrdiff_t>(i * dim));
        if (fitness[i] < fitness[best]) best = i;
      }
    }
    report.trace.push_back(fitness[best]);

    if (settings.tol > 0.0 || settings.atol > 0.0) {
      double mean = 0.0;
      for (double v : fitness) mean += v;
      mean /= static_cast<double>(pop);
      double var = 0.0;
      for (double v : fitness) var += (v - mean) * (v - mean);
      const double spread = std::sqrt(var / static_cast<double>(pop));
      if (spread <= settings.atol + settings.tol * std::fabs(mean)) {
        stopped = true;
        break;
      }
    }
  }
  report.converged = stopped || (settings.tol == 0.0 && settings.atol == 0.0);
  report.argmin.assign(members.begin() + static_cast<std::ptrdiff_t>(best * dim),
                       members.begin() + static_cast<std::ptrdiff_t>((best + 1) * dim));
  report.value = fitness[best];
  return report;
}

}  // namespace circw
