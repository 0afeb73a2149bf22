#include <algorithm>
#include <cmath>
#include <vector>

#include "circw/circular.hpp"
#include "circw/error.hpp"
#include "circw/optimize.hpp"
#include "circw/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace circw;

TEST_CASE("convex_min_1d examples") {
  auto r = convex_min_1d([](double a) { return (a - 0.3) * (a - 0.3); }, 0.0, 1.0, 1e-8);
  CHECK(std::fabs(r.argmin - 0.3) <= 1e-8);
  r = convex_min_1d([](double a) { return std::fabs(a - 0.7); }, 0.0, 1.0, 1e-9);
  CHECK(std::fabs(r.argmin - 0.7) <= 1e-9);
  // Minimum at an endpoint.
  r = convex_min_1d([](double a) { return a; }, 0.0, 1.0, 1e-10);
  CHECK(r.value <= 1e-10);
  CHECK_THROWS_AS(convex_min_1d([](double a) { return a; }, 1.0, 1.0, 1e-8), InvalidArgument);
}

TEST_CASE("convex_min_1d on random hinge functions") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    // Convex piecewise linear: sorted slopes between sorted knots.
    std::vector<double> knots(10);
    std::vector<double> slopes(11);
    for (auto& k : knots) k = rng.uniform();
    for (auto& s : slopes) s = 4 * rng.uniform() - 2;
    std::sort(knots.begin(), knots.end());
    std::sort(slopes.begin(), slopes.end());
    const auto f = [&](double x) {
      double v = slopes[0] * (x - knots[0]);
      for (std::size_t i = 0; i < knots.size(); ++i)
        if (x > knots[i]) v += (slopes[i + 1] - slopes[i]) * (x - knots[i]);
      return v;
    };
    const double scan = oracle::grid_scan_min(f, 0.0, 1.0, 1000000);
    const auto r = convex_min_1d(f, 0.0, 1.0, 1e-12);
    CHECK(r.value <= scan + 1e-9);
    CHECK(r.value <= f(0.0));
    CHECK(r.value <= f(1.0));
  }
}

TEST_CASE("select_kth") {
  const double v[] = {3, 1, 2};
  CHECK(select_kth(v, 1) == 2);
  const double one[] = {5};
  CHECK(select_kth(one, 0) == 5);
  CHECK_THROWS_AS(select_kth(v, 3), InvalidArgument);

  Rng rng(2);
  std::vector<double> big(10000);
  for (auto& x : big) x = rng.uniform();
  auto sorted = big;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k : {std::size_t{0}, big.size() / 4, big.size() / 2, big.size() - 1})
    CHECK(select_kth(big, k) == sorted[k]);

  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(200);
    std::vector<double> x(n);
    for (auto& e : x) e = std::floor(10 * rng.uniform());  // many ties
    auto s = x;
    std::sort(s.begin(), s.end());
    const std::size_t k = rng.below(n);
    CHECK(select_kth(x, k) == s[k]);
    CHECK(select_kth(x, k, SelectMethod::Sort) == s[k]);
  }
}

TEST_CASE("box constraints") {
  BoxConstraints box{{0.0, -1.0}, {kTwoPi, 1.0}, {true, false}};
  box.validate();
  std::vector<double> x = {-0.5, 3.0};
  box.project(x);
  CHECK(x[0] == doctest::Approx(kTwoPi - 0.5));
  CHECK(x[1] == 1.0);
  BoxConstraints bad{{0.0}, {1.0}, {true}};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  BoxConstraints inverted{{1.0}, {0.0}, {false}};
  CHECK_THROWS_AS(inverted.validate(), InvalidArgument);
}

TEST_CASE("powell_min") {
  const std::vector<double> c = {0.3, -1.2, 2.5};
  const BoxConstraints box3{{-10, -10, -10}, {10, 10, 10}, {false, false, false}};
  auto r = powell_min(
      [&](std::span<const double> x) {
        double s = 0;
        for (int i = 0; i < 3; ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
        return s;
      },
      {0, 0, 0}, box3, 1e-12, 200);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(r.argmin[i] - c[i]) <= 1e-6);
  CHECK(r.converged);

  const BoxConstraints periodic{{0.0, -5}, {kTwoPi, 5}, {true, false}};
  r = powell_min(
      [](std::span<const double> x) {
        return 1 - std::cos(x[0] - 6.2) + (x[1] - 1) * (x[1] - 1);
      },
      {0.5, 0.0}, periodic, 1e-12, 200);
  CHECK(r.argmin[0] >= 0.0);
  CHECK(r.argmin[0] < kTwoPi);
  CHECK(circ_dist(r.argmin[0], 6.2) <= 1e-6);

  const auto rosen = [](std::span<const double> x) {
    return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
  };
  const BoxConstraints box2{{-5, -5}, {5, 5}, {false, false}};
  r = powell_min(rosen, {-1.2, 1.0}, box2, 1e-14, 200);
  CHECK(r.value <= 1e-8);
  const auto longer = powell_min(rosen, {-1.2, 1.0}, box2, 1e-15, 10000);
  CHECK(std::fabs(longer.argmin[0] - 1) <= 1e-4);
  CHECK(std::fabs(longer.argmin[1] - 1) <= 1e-4);

  // Value matches the objective at the reported point.
  CHECK(rosen(r.argmin) == r.value);

  const auto capped = powell_min(rosen, {-1.2, 1.0}, box2, 1e-15, 1);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("powell on positive-definite quadratics") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + rng.below(4);
    // A = L L^T + I, minimizer c.
    std::vector<double> l(d * d);
    std::vector<double> c(d);
    for (auto& v : l) v = rng.uniform() - 0.5;
    for (auto& v : c) v = 2 * rng.uniform() - 1;
    const auto f = [&](std::span<const double> x) {
      double s = 0;
      for (std::size_t i = 0; i < d; ++i) {
        double li = 0;
        for (std::size_t j = 0; j <= i; ++j) li += l[i * d + j] * (x[j] - c[j]);
        s += li * li + (x[i] - c[i]) * (x[i] - c[i]);
      }
      return s;
    };
    BoxConstraints box{std::vector<double>(d, -10), std::vector<double>(d, 10), std::vector<bool>(d, false)};
    const auto r = powell_min(f, std::vector<double>(d, 0.0), box, 1e-12, d + 2);
    CHECK(r.value <= 1e-8);
  }
}

TEST_CASE("diff_evolution_min") {
  const BoxConstraints unit{{0.0}, {1.0}, {false}};
  DeSettings s;
  s.pop = 16;
  s.gens = 50;
  s.seed = 4;
  auto r = diff_evolution_min([](std::span<const double>) { return 3.0; }, unit, s);
  CHECK(r.value == 3.0);
  CHECK(r.argmin.size() == 1);

  r = diff_evolution_min([](std::span<const double> x) { return (x[0] - 0.5) * (x[0] - 0.5); }, unit, s);
  CHECK(r.value <= 1e-6);

  const auto multi = [](std::span<const double> x) {
    return std::sin(5 * x[0]) + 0.1 * x[0] * x[0];
  };
  const BoxConstraints wide{{-3.0}, {3.0}, {false}};
  DeSettings m;
  m.pop = 30;
  m.gens = 200;
  m.seed = 9;
  r = diff_evolution_min(multi, wide, m);
  const double scan = oracle::grid_scan_min([&](double x) { return multi(std::span(&x, 1)); },
                                            -3.0, 3.0, 1000000);
  CHECK(std::fabs(r.value - scan) <= 1e-3);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
}

TEST_CASE("differential evolution is deterministic across thread counts") {
  const auto f = [](std::span<const double> x) {
    return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.05 * (x[0] * x[0] + x[1] * x[1]) + x[2] * x[2];
  };
  const BoxConstraints box{{-4, -4, -1}, {4, 4, 1}, {false, false, false}};
  DeSettings s;
  s.gens = 80;
  s.seed = 17;
  s.threads = 1;
  const auto a = diff_evolution_min(f, box, s);
  s.threads = 4;
  const auto b = diff_evolution_min(f, box, s);
  CHECK(a.argmin == b.argmin);
  CHECK(a.value == b.value);
  CHECK(a.trace == b.trace);
  s.seed = 18;
  const auto c = diff_evolution_min(f, box, s);
  CHECK(c.trace != a.trace);
}

TEST_CASE("differential evolution keeps a good start point") {
  const auto f = [](std::span<const double> x) { return std::fabs(x[0] - 0.123456); };
  const BoxConstraints box{{-100}, {100}, {false}};
  DeSettings s;
  s.pop = 5;
  s.gens = 1;
  s.seed = 3;
  const double start[] = {0.123456};
  const auto r = diff_evolution_min(f, box, s, start);
  CHECK(r.value == 0.0);
}

TEST_CASE("differential evolution wraps periodic dimensions") {
  const auto f = [](std::span<const double> x) { return 1 - std::cos(x[0] - 0.05); };
  const BoxConstraints box{{0.0}, {kTwoPi}, {true}};
  DeSettings s;
  s.pop = 20;
  s.gens = 100;
  s.seed = 1;
  const auto r = diff_evolution_min(f, box, s);
  CHECK(r.argmin[0] >= 0.0);
  CHECK(r.argmin[0] < kTwoPi);
  CHECK(circ_dist(r.argmin[0], 0.05) <= 1e-3);
}
