#include "circw/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "circw/error.hpp"
#include "circw/rng.hpp"
#include "json.hpp"

namespace circw {

using nlohmann::json;

std::string_view sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Log10N: return "log10N";
    case SweepAxis::Kappa: return "kappa";
    case SweepAxis::Rho: return "rho";
    case SweepAxis::Lambda: return "lambda";
    case SweepAxis::Epsilon: return "epsilon";
  }
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  for (auto a : {SweepAxis::Log10N, SweepAxis::Kappa, SweepAxis::Rho,
                 SweepAxis::Lambda, SweepAxis::Epsilon})
    if (sweep_axis_name(a) == name) return a;
  throw InvalidArgument("unknown sweep '" + std::string(name) + "'");
}

std::size_t default_replications(std::size_t n) {
  if (n <= 1000) return 300;
  if (n <= 10000) return 100;
  return 20;
}

Family fitted_family(Family truth) {
  return truth == Family::ContaminatedVonMises ? Family::VonMises : truth;
}

std::size_t sweep_sample_size(const ExperimentConfig& cfg, double value) {
  if (cfg.sweep != SweepAxis::Log10N) return cfg.n;
  return static_cast<std::size_t>(std::llround(std::pow(10.0, value)));
}

FamilyParams sweep_truth(const ExperimentConfig& cfg, double value) {
  FamilyParams t = cfg.theta0;
  switch (cfg.sweep) {
    case SweepAxis::Log10N: break;
    case SweepAxis::Kappa: t.kappa = value; break;
    case SweepAxis::Rho: t.rho = value; break;
    case SweepAxis::Lambda: t.lambda = value; break;
    case SweepAxis::Epsilon: t.epsilon = value; break;
  }
  return t;
}

std::size_t replications_for(const ExperimentConfig& cfg, std::size_t n) {
  return cfg.replications != 0 ? cfg.replications : default_replications(n);
}

std::uint64_t replication_seed(std::uint64_t master, std::size_t sweep_index,
                               std::size_t replication) {
  return derive_seed(derive_seed(master, sweep_index), replication);
}

void ExperimentConfig::validate() const {
  if (sweep_values.empty()) throw InvalidArgument("sweep needs at least one value");
  for (std::size_t i = 1; i < sweep_values.size(); ++i)
    if (!(sweep_values[i] > sweep_values[i - 1]))
      throw InvalidArgument("sweep values must be strictly increasing");
  if (estimators.empty()) throw InvalidArgument("no estimators configured");
  std::set<std::string> labels;
  for (const auto& e : estimators) {
    e.spec.validate();
    if (!labels.insert(e.label).second)
      throw InvalidArgument("duplicate estimator '" + e.label + "'");
  }
  if (theta0.family == Family::Uniform) throw InvalidArgument("cannot fit family 'uniform'");
  const bool axis_ok = [&] {
    switch (sweep) {
      case SweepAxis::Log10N: return true;
      case SweepAxis::Kappa:
        return theta0.family != Family::WrappedCauchy;
      case SweepAxis::Rho: return theta0.family == Family::WrappedCauchy;
      case SweepAxis::Lambda: return theta0.family == Family::SineSkewedVonMises;
      case SweepAxis::Epsilon: return theta0.family == Family::ContaminatedVonMises;
    }
    return false;
  }();
  if (!axis_ok)
    throw InvalidArgument("sweep '" + std::string(sweep_axis_name(sweep)) +
                          "' does not apply to family '" +
                          std::string(family_name(theta0.family)) + "'");
  for (double v : sweep_values) {
    if (!std::isfinite(v)) throw InvalidArgument("sweep values must be finite");
    sweep_truth(*this, v).validate();
    if (sweep_sample_size(*this, v) < 4)
      throw InvalidArgument("sample size must be at least 4");
  }
}

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys,
                    const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw InvalidArgument(std::string("unknown key '") + key + "' in " + where);
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  ExperimentConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    reject_unknown(j,
                   {"family", "theta0", "sweep", "n", "replications", "estimators",
                    "master_seed", "workers", "optimizer"},
                   "config");

    const Family family = parse_family(j.at("family").get<std::string>());
    const json theta = j.value("theta0", json::object());
    reject_unknown(theta, {"mu", "kappa", "rho", "lambda", "epsilon"}, "theta0");
    cfg.theta0.family = family;
    cfg.theta0.mu = normalize_angle(get_or(theta, "mu", 0.0));
    cfg.theta0.kappa = get_or(theta, "kappa", 0.0);
    cfg.theta0.rho = get_or(theta, "rho", 0.0);
    cfg.theta0.lambda = get_or(theta, "lambda", 0.0);
    cfg.theta0.epsilon = get_or(theta, "epsilon", 0.0);

    const json& sweep = j.at("sweep");
    reject_unknown(sweep, {"name", "values"}, "sweep");
    cfg.sweep = parse_sweep_axis(sweep.at("name").get<std::string>());
    cfg.sweep_values = sweep.at("values").get<std::vector<double>>();

    cfg.n = get_or<std::size_t>(j, "n", 0);
    if (cfg.sweep != SweepAxis::Log10N && cfg.n == 0)
      throw InvalidArgument("config needs 'n' unless the sweep is over log10N");
    if (j.contains("replications")) {
      cfg.replications = j.at("replications").get<std::size_t>();
      if (cfg.replications == 0) throw InvalidArgument("replications must be >= 1");
    }
    cfg.master_seed = get_or<std::uint64_t>(j, "master_seed", 0);
    cfg.workers = get_or<unsigned>(j, "workers", 1);

    OptimizerSettings opt;
    if (j.contains("optimizer")) {
      const json& o = j.at("optimizer");
      reject_unknown(o, {"method", "de_pop", "de_gens", "de_tol", "tol"}, "optimizer");
      if (o.contains("method"))
        opt.method = parse_optimizer_method(o.at("method").get<std::string>());
      opt.de_pop = get_or(o, "de_pop", opt.de_pop);
      opt.de_gens = get_or(o, "de_gens", opt.de_gens);
      opt.de_tol = get_or(o, "de_tol", opt.de_tol);
      opt.tol = get_or(o, "tol", opt.tol);
    }
    for (const auto& e : j.at("estimators")) {
      EstimatorEntry entry;
      entry.spec = parse_estimator(e.get<std::string>());
      entry.spec.optimizer = opt;
      entry.label = entry.spec.label();
      cfg.estimators.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

bool operator==(const MseRow& a, const MseRow& b) {
  const auto same = [](double x, double y) {
    return x == y || (std::isnan(x) && std::isnan(y));
  };
  return a.sweep_name == b.sweep_name && same(a.sweep_value, b.sweep_value) &&
         a.estimator == b.estimator && a.parameter == b.parameter &&
         same(a.mse, b.mse) && same(a.log10_mse, b.log10_mse) &&
         a.replications == b.replications && a.failures == b.failures;
}

ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg) {
  cfg.validate();
  const Family fit_family = fitted_family(cfg.theta0.family);
  const auto params = parameter_names(fit_family);
  const std::size_t n_est = cfg.estimators.size();

  struct Task {
    std::size_t sweep_index;
    std::size_t replication;
  };
  std::vector<Task> tasks;
  std::vector<std::size_t> sweep_offset;
  for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si) {
    sweep_offset.push_back(tasks.size());
    const auto reps = replications_for(cfg, sweep_sample_size(cfg, cfg.sweep_values[si]));
    for (std::size_t r = 0; r < reps; ++r) tasks.push_back({si, r});
  }

  // One slot per (task, estimator); each worker writes only its own slots.
  std::vector<ReplicationRecord> slots(tasks.size() * n_est);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const auto [si, r] = tasks[t];
      const double value = cfg.sweep_values[si];
      const auto truth = sweep_truth(cfg, value);
      const std::uint64_t seed = replication_seed(cfg.master_seed, si, r);
      const auto sample = family_sample(truth, sweep_sample_size(cfg, value), seed);
      for (std::size_t e = 0; e < n_est; ++e) {
        auto& rec = slots[t * n_est + e];
        rec.sweep_index = si;
        rec.replication = r;
        rec.estimator = cfg.estimators[e].label;
        EstimatorSpec spec = cfg.estimators[e].spec;
        spec.optimizer.seed = derive_seed(seed, hash_label(rec.estimator));
        spec.optimizer.threads = 1;
        try {
          rec.theta_hat = fit(sample, fit_family, spec).theta_hat;
        } catch (const std::exception& ex) {
          rec.failed = true;
          rec.error = ex.what();
        }
      }
    }
  };

  unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(tasks.size(), 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ExperimentResult result;
  const std::string sweep_name(sweep_axis_name(cfg.sweep));
  for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si) {
    const double value = cfg.sweep_values[si];
    const auto truth = sweep_truth(cfg, value);
    const std::size_t first = sweep_offset[si];
    const std::size_t last = si + 1 < sweep_offset.size() ? sweep_offset[si + 1] : tasks.size();
    for (std::size_t e = 0; e < n_est; ++e) {
      for (const auto& name : params) {
        const double true_value = parameter_value(truth, name);
        double sum = 0.0;
        std::size_t ok = 0;
        std::size_t failures = 0;
        for (std::size_t t = first; t < last; ++t) {
          const auto& rec = slots[t * n_est + e];
          if (rec.failed) {
            ++failures;
            continue;
          }
          const double est = parameter_value(rec.theta_hat, name);
          const double err = name == "mu"
                                 ? circular_sq_error(Angle(est), Angle(true_value))
                                 : (est - true_value) * (est - true_value);
          sum += err;
          ++ok;
        }
        MseRow row;
        row.sweep_name = sweep_name;
        row.sweep_value = value;
        row.estimator = cfg.estimators[e].label;
        row.parameter = name;
        row.replications = last - first;
        row.failures = failures;
        row.mse = ok > 0 ? sum / static_cast<double>(ok) : std::nan("");
        row.log10_mse = std::log10(row.mse);
        result.table.rows.push_back(std::move(row));
      }
    }
  }
  result.records = std::move(slots);
  return result;
}

MseTable run_experiment(const ExperimentConfig& cfg) {
  return run_experiment_detailed(cfg).table;
}

std::vector<RatioRow> mse_ratio(const MseTable& table, std::string_view num,
                                std::string_view den) {
  const auto present = [&](std::string_view est) {
    return std::any_of(table.rows.begin(), table.rows.end(),
                       [&](const MseRow& r) { return r.estimator == est; });
  };
  for (auto est : {num, den})
    if (!present(est))
      throw InvalidArgument("estimator '" + std::string(est) + "' not in table");
  std::vector<RatioRow> out;
  for (const auto& a : table.rows) {
    if (a.estimator != num) continue;
    const auto b = std::find_if(table.rows.begin(), table.rows.end(), [&](const MseRow& r) {
      return r.estimator == den && r.parameter == a.parameter &&
             r.sweep_value == a.sweep_value;
    });
    if (b == table.rows.end())
      throw InvalidArgument("estimator '" + std::string(den) + "' has no row for " +
                            a.parameter);
    out.push_back({a.sweep_value, a.parameter, a.mse / b->mse});
  }
  return out;
}

}  // namespace circw
