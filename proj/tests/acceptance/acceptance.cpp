// Acceptance gate: one PASS/FAIL line per criterion. Arguments select
// criteria by number (e.g. `acceptance 1 3 13`); no arguments runs all.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "circw/bessel.hpp"
#include "circw/estimate.hpp"
#include "circw/families.hpp"
#include "circw/harness.hpp"
#include "circw/optimize.hpp"
#include "circw/rng.hpp"
#include "circw/transport.hpp"
#include "oracles.hpp"

using namespace circw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few violations of a criterion.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << " [" << checks_ << " checks";
    if (failures_) s << ", " << failures_ << " failed: " << notes_;
    s << "]";
    return {failures_ == 0, s.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string notes_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

ExperimentConfig recipe(const std::string& file) {
  return ExperimentConfig::from_file(std::string(CIRCW_CONFIG_DIR) + "/" + file);
}

std::vector<double> draw(Rng& rng, std::size_t n) {
  return rng.uniform() < 0.5 ? oracle::random_angles(rng, n) : oracle::clustered_angles(rng, n);
}

std::vector<double> rotated(const std::vector<double>& v, double delta) {
  std::vector<double> r;
  for (double x : v) r.push_back(normalize_angle(x + delta));
  std::sort(r.begin(), r.end());
  return r;
}

// Ratios for every parameter at one sweep value; appends to the tally.
void check_ratios(Tally& t, const MseTable& table, const std::string& num, double lo, double hi,
                  std::string& summary) {
  for (const auto& r : mse_ratio(table, num, "MLE")) {
    summary += " " + num + "/MLE(" + r.parameter + ")=" + fmt("%.3f", r.ratio);
    t.expect(r.ratio >= lo && r.ratio <= hi,
             num + " " + r.parameter + " ratio " + fmt("%.4f", r.ratio) + " outside " +
                 fmt("[%g, %g]", lo, hi));
  }
}

// 1. wp_discrete = wp_bruteforce; bruteforce = permutation oracle for n <= 8.
Outcome transport_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(101);
  const double orders[] = {1.0, 1.5, 2.0};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(63);
    const double p = orders[trial % 3];
    const auto a = draw(rng, n);
    const auto b = draw(rng, n);
    const double fast = wp_discrete(a, b, WassersteinOrder(p));
    const double slow = wp_bruteforce(a, b, WassersteinOrder(p));
    worst = std::max(worst, std::fabs(fast - slow));
    t.expect(std::fabs(fast - slow) <= 1e-12, fmt("n=%g p=%g diff %.3g", n, p, fast - slow));
  }
  double worst_perm = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    const double p = orders[trial % 3];
    const auto a = draw(rng, n);
    const auto b = draw(rng, n);
    const double slow = wp_bruteforce(a, b, WassersteinOrder(p));
    const double perm = oracle::wp_permutations(a, b, p);
    worst_perm = std::max(worst_perm, std::fabs(slow - perm));
    t.expect(std::fabs(slow - perm) <= 1e-12, fmt("perm n=%g diff %.3g", n, slow - perm));
  }
  const double secs = seconds_since(t0);
  t.expect(secs < 10.0, fmt("runtime %.1f s", secs));
  return t.outcome(fmt("max |fast-brute| %.2e, max |brute-perm| %.2e, %.2f s", worst, worst_perm, secs));
}

// 2. Grid W1 against the general solver and the CDF search.
Outcome w1_consistency() {
  Tally t;
  Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.below(1000);
    const auto theta = FamilyParams::von_mises(kTwoPi * rng.uniform(), 0.1 + 20 * rng.uniform());
    const auto s = family_sample(theta, 1 + rng.below(1000), rng.below(1u << 30));
    const auto other = FamilyParams::wrapped_cauchy(kTwoPi * rng.uniform(), 0.9 * rng.uniform());
    const auto gs = grid_cdf_of(s, d);
    const auto gm = grid_cdf_of(other, d);
    const double grid = w1_grid(gs, gm);
    const double general =
        wp_general(grid_discretization(gs), grid_discretization(gm), WassersteinOrder(1));
    worst = std::max(worst, std::fabs(grid - general));
    t.expect(std::fabs(grid - general) <= 1e-9, fmt("D=%g diff %.3g", d, grid - general));
  }
  double worst_gap = 0.0;
  for (std::size_t d : {64u, 256u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CircularModel a(FamilyParams::von_mises(kTwoPi * rng.uniform(), 0.2 + 10 * rng.uniform()));
      const CircularModel b(trial % 2 ? FamilyParams::von_mises(kTwoPi * rng.uniform(), 0.2 + 10 * rng.uniform())
                                      : FamilyParams::sine_skewed(kTwoPi * rng.uniform(), 0.2 + 5 * rng.uniform(),
                                                                  2 * rng.uniform() - 1));
      const double grid = w1_grid(grid_cdf_of(a, d), grid_cdf_of(b, d));
      for (std::size_t q : {d, std::size_t{20000}}) {
        const double search = w1_cdf_search(a.cdf_view(), b.cdf_view(), q);
        const double gap = std::fabs(search - grid);
        worst_gap = std::max(worst_gap, gap * d / (4 * kPi));
        t.expect(gap <= 4 * kPi / d + 1e-6, fmt("D=%g quad=%g gap %.3g", d, q, gap));
      }
    }
  }
  return t.outcome(fmt("max |grid-general| %.2e, max gap/(4pi/D) %.3f", worst, worst_gap));
}

// 3. Metric axioms and rotation invariance for W1 and W2.
Outcome metric_properties() {
  Tally t;
  Rng rng(303);
  double worst_tri = -HUGE_VAL;
  double worst_rot = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const auto a = draw(rng, n);
    const auto b = draw(rng, n);
    const auto c = draw(rng, n);
    for (double p : {1.0, 2.0}) {
      const WassersteinOrder order(p);
      const double ab = wp_discrete(a, b, order);
      t.expect(ab == wp_discrete(b, a, order), "symmetry");
      t.expect(wp_discrete(a, a, order) == 0.0, "identity");
      const double excess = wp_discrete(a, c, order) - ab - wp_discrete(b, c, order);
      worst_tri = std::max(worst_tri, excess);
      t.expect(excess <= 1e-9, fmt("triangle excess %.3g", excess));
      const double delta = kTwoPi * rng.uniform();
      const double rot = std::fabs(wp_discrete(rotated(a, delta), rotated(b, delta), order) - ab);
      worst_rot = std::max(worst_rot, rot);
      t.expect(rot <= 1e-12, fmt("rotation diff %.3g", rot));
    }
    t.expect(wp_discrete(a, b, WassersteinOrder(1)) <= wp_discrete(a, b, WassersteinOrder(2)) + 1e-12,
             "W1 <= W2");
  }
  return t.outcome(fmt("max triangle excess %.2e, max rotation diff %.2e", worst_tri, worst_rot));
}

// 4. Median optimality of the grid formula and exact selection.
Outcome median_formula() {
  Tally t;
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + rng.below(300);
    std::vector<double> diff(d);
    for (auto& v : diff) v = rng.uniform() - 0.5;
    if (trial % 4 == 0)
      for (auto& v : diff) v = std::round(v * 10) / 10;  // heavy ties
    const std::vector<double> zeros(d, 0.0);
    std::vector<double> scratch;
    const double got = w1_grid(diff, zeros, scratch) * d / kTwoPi;
    double best = HUGE_VAL;
    for (double m : diff) {
      double s = 0.0;
      for (double v : diff) s += std::fabs(v - m);
      best = std::min(best, s);
    }
    t.expect(std::fabs(got - best) <= 1e-12 * std::max(1.0, best), fmt("D=%g sum %.17g vs %.17g", d, got, best));

    auto sorted = diff;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = rng.below(d);
    t.expect(select_kth(diff, k) == sorted[k], "select_kth random k");
    t.expect(select_kth(diff, (d - 1) / 2) == sorted[(d - 1) / 2], "select_kth median");
  }
  return t.outcome("grid sums equal the best candidate median; selection exact");
}

// 5. Family invariants.
Outcome family_checks() {
  Tally t;
  Rng rng(505);
  const auto random_params = [&](Family f) {
    const double mu = kTwoPi * rng.uniform();
    switch (f) {
      case Family::VonMises: return FamilyParams::von_mises(mu, 0.05 + 30 * rng.uniform());
      case Family::WrappedCauchy: return FamilyParams::wrapped_cauchy(mu, 0.95 * rng.uniform());
      case Family::SineSkewedVonMises:
        return FamilyParams::sine_skewed(mu, 0.05 + 20 * rng.uniform(), 2 * rng.uniform() - 1);
      case Family::ContaminatedVonMises:
        return FamilyParams::contaminated(mu, 0.05 + 30 * rng.uniform(), rng.uniform());
      case Family::Uniform: break;
    }
    return FamilyParams::uniform();
  };
  const Family all[] = {Family::VonMises, Family::WrappedCauchy, Family::SineSkewedVonMises,
                        Family::Uniform, Family::ContaminatedVonMises};
  double worst_mass = 0.0;
  double worst_inv = 0.0;
  for (auto f : all) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto theta = random_params(f);
      const CircularModel m(theta);
      const double mass = oracle::integrate([&](double x) { return m.pdf(x); }, 0.0, kTwoPi, 1e-11);
      worst_mass = std::max(worst_mass, std::fabs(mass - 1));
      t.expect(std::fabs(mass - 1) <= 1e-8, fmt("mass %.12g", mass));
      for (int k = 1; k <= 99; ++k) {
        const double u = k / 100.0;
        const double err = std::fabs(m.cdf(m.quantile(u)) - u);
        worst_inv = std::max(worst_inv, err);
        t.expect(err <= 1e-9, fmt("cdf(quantile(%g)) off by %.3g", u, err));
      }
    }
  }
  double worst_ss = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double mu = kTwoPi * rng.uniform();
    const double kappa = 0.1 + 20 * rng.uniform();
    const auto ss = FamilyParams::sine_skewed(mu, kappa, 0.0);
    const auto vm = FamilyParams::von_mises(mu, kappa);
    for (int i = 0; i < 100; ++i) {
      const double x = kTwoPi * i / 100;
      const double diff = std::fabs(family_pdf(ss, x) - family_pdf(vm, x));
      worst_ss = std::max(worst_ss, diff);
      t.expect(diff <= 1e-12, fmt("ssvm(0) vs vm %.3g", diff));
    }
  }
  for (auto f : {Family::VonMises, Family::WrappedCauchy, Family::SineSkewedVonMises}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto theta = random_params(f);
      theta.lambda *= 0.99;
      const auto m = family_fisher(theta);
      bool sym = true;
      for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j) sym = sym && m(i, j) == m(j, i);
      t.expect(sym, "Fisher symmetric");
      // Smallest eigenvalue via Sylvester-style check on all principal minors.
      const double d2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
      t.expect(m(0, 0) >= -1e-9 && m(1, 1) >= -1e-9 && d2 >= -1e-9, "Fisher PSD (2x2)");
      if (m.dim == 3) {
        t.expect(m(1, 2) == 0.0 && m(2, 1) == 0.0, "I_kappa_lambda = 0");
        const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        const double d13 = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        t.expect(m(2, 2) >= -1e-9 && d13 >= -1e-9 && det >= -1e-9, "Fisher PSD (3x3)");
      }
    }
  }
  const auto wc = family_fisher(FamilyParams::wrapped_cauchy(0.0, 0.5));
  t.expect(std::fabs(wc(0, 0) - 8.0 / 9) <= 1e-12 && std::fabs(wc(1, 1) - 32.0 / 9) <= 1e-12 &&
               wc(0, 1) == 0.0 && wc(1, 0) == 0.0,
           "wC Fisher at rho = 0.5");
  return t.outcome(fmt("max |mass-1| %.2e, max inverse error %.2e, max ssvm/vm diff %.2e", worst_mass,
                       worst_inv, worst_ss));
}

// 6. Likelihood equations for vM; wC MLE against a 2-D maximization oracle.
Outcome mle_correctness() {
  Tally t;
  double worst_eq = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = family_sample(FamilyParams::von_mises(0.3 * trial, 0.5 + trial), 1000, 600 + trial);
    const auto r = mle_von_mises(s);
    double c = 0;
    double sn = 0;
    for (double x : s.angles()) {
      c += std::cos(x);
      sn += std::sin(x);
    }
    const double rbar = std::hypot(c, sn) / s.size();
    const double eq = std::fabs(bessel_a1(r.theta_hat.kappa) - rbar);
    worst_eq = std::max(worst_eq, eq);
    t.expect(eq <= 1e-8, fmt("A(kappa) - R %.3g", eq));
    t.expect(circ_dist(r.theta_hat.mu, std::atan2(sn, c)) <= 1e-12, "mean direction");
  }
  double worst_gap = -HUGE_VAL;
  for (int trial = 0; trial < 20; ++trial) {
    const auto truth = FamilyParams::wrapped_cauchy(kTwoPi * trial / 20, 0.05 + 0.045 * trial);
    const auto s = family_sample(truth, 1000, 700 + trial);
    const std::vector<double> x(s.angles().begin(), s.angles().end());
    const auto r = mle_wrapped_cauchy(s);
    const double ours = oracle::wc_loglik(x, r.theta_hat.mu, r.theta_hat.rho);
    const double best = oracle::maximize_2d(
        [&](double mu, double rho) { return oracle::wc_loglik(x, mu, rho); }, 0.0, kTwoPi, 0.0, 0.999);
    worst_gap = std::max(worst_gap, best - ours);
    t.expect(ours >= best - 1e-6, fmt("wC log-likelihood short by %.3g", best - ours));
    t.expect(r.report.converged, "wC converged");
  }
  return t.outcome(fmt("max |A(kappa)-R| %.2e, max oracle excess %.2e", worst_eq, worst_gap));
}

// 7. Median estimation error of W1 shrinks from n = 100 to n = 10^4.
Outcome consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::string summary;
  for (const auto& truth : {FamilyParams::von_mises(0.3, 2.0), FamilyParams::wrapped_cauchy(kPi / 8, 0.4)}) {
    double medians[2];
    int idx = 0;
    for (std::size_t n : {100u, 10000u}) {
      std::vector<double> errors;
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = family_sample(truth, n, derive_seed(7000 + n, seed));
        auto spec = parse_estimator("w1");
        spec.optimizer.seed = seed;
        const auto r = wasserstein_fit(s, truth.family, spec);
        const double second = truth.family == Family::VonMises ? r.theta_hat.kappa - truth.kappa
                                                               : r.theta_hat.rho - truth.rho;
        errors.push_back(std::sqrt(circular_sq_error(Angle(r.theta_hat.mu), Angle(truth.mu)) + second * second));
      }
      std::nth_element(errors.begin(), errors.begin() + 25, errors.end());
      const double hi = errors[25];
      std::nth_element(errors.begin(), errors.begin() + 24, errors.end());
      medians[idx++] = 0.5 * (hi + errors[24]);
    }
    summary += std::string(family_name(truth.family)) + fmt(": %.4f -> %.4f  ", medians[0], medians[1]);
    t.expect(medians[1] < medians[0], std::string(family_name(truth.family)) + " median did not decrease");
  }
  const double secs = seconds_since(t0);
  t.expect(secs < 300.0, fmt("runtime %.0f s", secs));
  return t.outcome(summary + fmt("%.0f s", secs));
}

Outcome figure_ratios(const std::string& file, double log10n, std::size_t reps,
                      std::vector<std::string> estimators, double lo, double hi, double budget) {
  const auto t0 = std::chrono::steady_clock::now();
  auto cfg = recipe(file);
  cfg.sweep_values = {log10n};
  cfg.replications = reps;
  cfg.workers = worker_count();
  const auto table = run_experiment(cfg);
  Tally t;
  std::string summary;
  for (const auto& row : table.rows) t.expect(row.failures == 0, row.estimator + " had failures");
  for (const auto& e : estimators) check_ratios(t, table, e, lo, hi, summary);
  const double secs = seconds_since(t0);
  if (budget > 0) t.expect(secs < budget, fmt("runtime %.0f s", secs));
  return t.outcome(summary.substr(1) + fmt(", %.0f s", secs));
}

// 11. Contaminated von Mises: W1 beats MLE for kappa; MLE kappa biased low.
Outcome robustness() {
  const auto t0 = std::chrono::steady_clock::now();
  auto cfg = recipe("fig7_contam_n.json");
  cfg.sweep_values = {4.0};
  cfg.replications = 100;
  cfg.workers = worker_count();
  cfg.estimators.erase(std::remove_if(cfg.estimators.begin(), cfg.estimators.end(),
                                      [](const EstimatorEntry& e) { return e.label == "W2"; }),
                       cfg.estimators.end());
  const auto res = run_experiment_detailed(cfg);
  Tally t;
  double ratio = NAN;
  for (const auto& r : mse_ratio(res.table, "W1", "MLE"))
    if (r.parameter == "kappa") ratio = r.ratio;
  t.expect(ratio < 1.0, fmt("kappa ratio %.4f", ratio));
  double sum = 0;
  std::size_t count = 0;
  for (const auto& rec : res.records) {
    if (rec.estimator != "MLE" || rec.failed) continue;
    sum += rec.theta_hat.kappa;
    ++count;
  }
  const double mean = sum / count;
  t.expect(count == 100, "MLE failures");
  t.expect(mean < 5.0, fmt("mean MLE kappa %.4f", mean));
  return t.outcome(fmt("W1/MLE(kappa)=%.3f, mean MLE kappa=%.3f, %.0f s", ratio, mean, seconds_since(t0)));
}

// 12. The n = 10^5 recipes parse and carry the long-running settings.
Outcome full_scale_recipes() {
  Tally t;
  const struct {
    const char* file;
    SweepAxis axis;
  } recipes[] = {{"fig2_vm_kappa.json", SweepAxis::Kappa},
                 {"fig4_wc_rho.json", SweepAxis::Rho},
                 {"fig6_ssvm_lambda.json", SweepAxis::Lambda},
                 {"fig8_contam_epsilon.json", SweepAxis::Epsilon}};
  for (const auto& r : recipes) {
    try {
      const auto cfg = recipe(r.file);
      t.expect(cfg.sweep == r.axis, std::string(r.file) + " sweep axis");
      t.expect(cfg.n == 100000, std::string(r.file) + " n");
      t.expect(replications_for(cfg, cfg.n) == 20, std::string(r.file) + " replications");
      t.expect(cfg.sweep_values.size() >= 5, std::string(r.file) + " sweep values");
      bool has_w1 = false;
      for (const auto& e : cfg.estimators) has_w1 = has_w1 || e.label == "W1";
      t.expect(has_w1, std::string(r.file) + " W1 estimator");
    } catch (const std::exception& e) {
      t.expect(false, std::string(r.file) + ": " + e.what());
    }
  }
  for (const char* f : {"fig1_vm_n.json", "fig3_wc_n.json", "fig5_ssvm_n.json", "fig7_contam_n.json"}) {
    try {
      const auto cfg = recipe(f);
      t.expect(cfg.sweep_values.back() == 5.0, std::string(f) + " reaches n = 10^5");
    } catch (const std::exception& e) {
      t.expect(false, std::string(f) + ": " + e.what());
    }
  }
  return t.outcome("figure 2/4/6/8 recipes at n = 10^5 with 20 replications");
}

// 13. Bit-identical results for any worker count.
Outcome determinism() {
  Tally t;
  auto cfg = recipe("smoke.json");
  cfg.estimators.push_back({"W1-equal-mass", parse_estimator("w1-equal-mass")});
  cfg.estimators.back().spec.optimizer.de_gens = 40;
  std::string reference;
  std::vector<ReplicationRecord> first;
  for (unsigned workers : {1u, 2u, 5u}) {
    cfg.workers = workers;
    const auto res = run_experiment_detailed(cfg);
    std::ostringstream csv;
    write_csv(csv, res.table);
    if (reference.empty()) {
      reference = csv.str();
      first = res.records;
      continue;
    }
    t.expect(csv.str() == reference, fmt("table differs with %g workers", workers));
    bool same = res.records.size() == first.size();
    for (std::size_t i = 0; same && i < first.size(); ++i)
      same = res.records[i].theta_hat == first[i].theta_hat;
    t.expect(same, fmt("estimates differ with %g workers", workers));
  }
  return t.outcome("1, 2 and 5 workers give identical CSV and estimates");
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "transport oracle equivalence", transport_oracles},
      {2, "W1 grid consistency", w1_consistency},
      {3, "metric properties", metric_properties},
      {4, "median formula", median_formula},
      {5, "families", family_checks},
      {6, "MLE correctness", mle_correctness},
      {7, "consistency of the W1 estimator", consistency},
      {8, "figure 1 desk scale (vM)",
       [] { return figure_ratios("fig1_vm_n.json", 3.0, 300, {"W1", "W2"}, 0.9, 1.3, 600); }},
      {9, "figure 3 desk scale (wC)",
       [] { return figure_ratios("fig3_wc_n.json", 3.0, 300, {"W1", "W2"}, 0.85, 1.5, 0); }},
      {10, "figure 5 desk scale (ssvM)",
       [] { return figure_ratios("fig5_ssvm_n.json", 3.0, 200, {"W1"}, 0.0, 4.0, 0); }},
      {11, "robustness under contamination", robustness},
      {12, "full-scale recipes", full_scale_recipes},
      {13, "determinism", determinism},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s C%d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
