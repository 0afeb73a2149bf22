// circw command line: distances, fits, sampling, Fisher matrices and Monte
// Carlo experiments. Talks to the library through the C interface only.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circw/circw.h"
#include "json.hpp"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;

struct Failure {
  int code;
  std::string message;
};

void check(circw_status s) {
  if (s == CIRCW_OK) return;
  throw Failure{s == CIRCW_ERR_NUMERICAL ? kNumerical : kUsage, circw_last_error()};
}

std::string real(double x, const char* fmt = "%.17g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::vector<std::string> parameter_names(circw_family f) {
  switch (f) {
    case CIRCW_VON_MISES:
    case CIRCW_CONTAMINATED_VON_MISES: return {"mu", "kappa"};
    case CIRCW_WRAPPED_CAUCHY: return {"mu", "rho"};
    case CIRCW_SINE_SKEWED_VON_MISES: return {"mu", "kappa", "lambda"};
    case CIRCW_UNIFORM: break;
  }
  return {};
}

double field(const circw_params& p, const std::string& name) {
  if (name == "mu") return p.mu;
  if (name == "kappa") return p.kappa;
  if (name == "rho") return p.rho;
  if (name == "lambda") return p.lambda;
  return p.epsilon;
}

// Family parameters given as --params "mu=0.3,kappa=2" and/or individual
// flags; the individual flags win.
struct ParamOptions {
  std::string family;
  std::string list;
  std::map<std::string, double> values;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--family", family, "vm, wc, ssvm, uniform or vm-contam")->required();
    cmd->add_option("--params", list, "comma separated name=value pairs");
    for (const char* name : {"mu", "kappa", "rho", "lambda", "epsilon"}) {
      cmd->add_option_function<double>(
          std::string("--") + name, [this, name](double v) { values[name] = v; },
          std::string("value of ") + name);
    }
  }

  circw_params resolve() const {
    circw_params p{};
    check(circw_family_from_name(family.c_str(), &p.family));
    std::map<std::string, double> all;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Failure{kUsage, "bad --params entry '" + item + "'"};
      const std::string key = item.substr(0, eq);
      const std::string text = item.substr(eq + 1);
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (text.empty() || *end != '\0')
        throw Failure{kUsage, "bad value for '" + key + "'"};
      all[key] = v;
    }
    for (const auto& [k, v] : values) all[k] = v;
    for (const auto& [k, v] : all) {
      if (k == "mu") p.mu = v;
      else if (k == "kappa") p.kappa = v;
      else if (k == "rho") p.rho = v;
      else if (k == "lambda") p.lambda = v;
      else if (k == "epsilon") p.epsilon = v;
      else throw Failure{kUsage, "unknown parameter '" + k + "'"};
    }
    check(circw_params_validate(&p));
    return p;
  }
};

struct SampleHandle {
  circw_sample* ptr = nullptr;
  ~SampleHandle() { circw_sample_destroy(ptr); }
};

struct TableHandle {
  circw_table* ptr = nullptr;
  ~TableHandle() { circw_table_destroy(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein projection estimators for circular data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", circw_version());

  // dist
  auto* dist = app.add_subcommand("dist", "W_p distance between two sample files");
  double dist_p = 1.0;
  std::string dist_method = "exact";
  std::size_t dist_grid = 0;
  std::string file_a;
  std::string file_b;
  dist->add_option("--p", dist_p, "order p >= 1")->capture_default_str();
  dist->add_option("--method", dist_method, "exact, bruteforce or grid")
      ->check(CLI::IsMember({"exact", "bruteforce", "grid"}))
      ->capture_default_str();
  dist->add_option("--grid", dist_grid, "grid size for --method grid (default: larger n)");
  dist->add_option("a", file_a, "first sample file")->required();
  dist->add_option("b", file_b, "second sample file")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "estimate family parameters from a sample");
  std::string fit_family;
  std::string fit_estimator = "mle";
  std::string fit_method;
  std::size_t fit_size = 0;
  std::string fit_data;
  std::uint64_t fit_seed = 0;
  bool fit_json = false;
  std::string fit_opt = "de+powell";
  std::size_t fit_pop = 0;
  std::size_t fit_gens = 0;
  double fit_tol = 0.0;
  fit->add_option("--family", fit_family, "vm, wc or ssvm")->required();
  fit->add_option("--estimator", fit_estimator, "mle, w1, w2, w<p>[-grid|-equal-mass]")
      ->capture_default_str();
  fit->add_option("--method", fit_method, "discretization: grid or equal-mass")
      ->check(CLI::IsMember({"grid", "equal-mass"}));
  fit->add_option("--size", fit_size, "grid points or atoms (default: n)");
  fit->add_option("--data", fit_data, "sample file")->required();
  fit->add_option("--seed", fit_seed, "optimizer seed")->capture_default_str();
  fit->add_flag("--json", fit_json, "single-line JSON output");
  fit->add_option("--opt", fit_opt, "de, powell or de+powell")
      ->check(CLI::IsMember({"de", "powell", "de+powell"}))
      ->capture_default_str();
  fit->add_option("--de-pop", fit_pop, "DE population (default 15 per dimension)");
  fit->add_option("--de-gens", fit_gens, "DE generations");
  fit->add_option("--tol", fit_tol, "Powell tolerance");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a sample from a family");
  ParamOptions sample_params;
  sample_params.add_to(sample);
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out = "-";
  sample->add_option("--n", sample_n, "sample size")->required();
  sample->add_option("--seed", sample_seed, "random seed")->capture_default_str();
  sample->add_option("--out", sample_out, "output file, - for stdout")->capture_default_str();

  // fisher
  auto* fisher = app.add_subcommand("fisher", "Fisher information per observation");
  ParamOptions fisher_params;
  fisher_params.add_to(fisher);
  bool fisher_json = false;
  fisher->add_flag("--json", fisher_json, "JSON output");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment");
  std::string exp_config;
  std::string exp_out = "-";
  bool exp_wide = false;
  unsigned exp_workers = 0;
  experiment->add_option("--config", exp_config, "JSON config file")->required();
  experiment->add_option("--out", exp_out, "CSV output, - for stdout")->capture_default_str();
  experiment->add_flag("--wide", exp_wide, "one row per sweep value, log10 MSE columns");
  experiment->add_option("--workers", exp_workers, "worker threads (default: config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*dist) {
      SampleHandle a;
      SampleHandle b;
      check(circw_sample_read(file_a.c_str(), &a.ptr));
      check(circw_sample_read(file_b.c_str(), &b.ptr));
      const circw_distance_method m = dist_method == "grid"         ? CIRCW_DISTANCE_GRID
                                      : dist_method == "bruteforce" ? CIRCW_DISTANCE_BRUTEFORCE
                                                                    : CIRCW_DISTANCE_EXACT;
      double d = 0.0;
      check(circw_distance(a.ptr, b.ptr, dist_p, m, dist_grid, &d));
      std::cout << real(d) << '\n';
    } else if (*fit) {
      circw_family family;
      check(circw_family_from_name(fit_family.c_str(), &family));
      circw_fit_options opt;
      circw_fit_options_default(&opt);
      check(circw_fit_options_set_estimator(&opt, fit_estimator.c_str()));
      if (!fit_method.empty())
        opt.discretization = fit_method == "grid" ? CIRCW_GRID : CIRCW_EQUAL_MASS;
      opt.discretization_size = fit_size;
      opt.optimizer = fit_opt == "de"       ? CIRCW_OPT_DE
                      : fit_opt == "powell" ? CIRCW_OPT_POWELL
                                            : CIRCW_OPT_DE_POWELL;
      if (fit_pop != 0) opt.de_pop = fit_pop;
      if (fit_gens != 0) opt.de_gens = fit_gens;
      if (fit_tol > 0.0) opt.tol = fit_tol;
      opt.seed = fit_seed;

      SampleHandle s;
      check(circw_sample_read(fit_data.c_str(), &s.ptr));
      circw_fit_result r;
      check(circw_fit(s.ptr, family, &opt, &r));
      const auto names = parameter_names(family);
      if (fit_json) {
        nlohmann::ordered_json j;
        j["family"] = fit_family;
        j["estimator"] = fit_estimator;
        j["theta_hat"] = nlohmann::ordered_json::object();
        for (const auto& n : names) j["theta_hat"][n] = field(r.theta_hat, n);
        j["objective"] = r.objective;
        j["evaluations"] = r.evaluations;
        j["converged"] = r.converged != 0;
        j["clamped"] = r.clamped != 0;
        std::cout << j.dump() << '\n';
      } else {
        for (const auto& n : names) std::cout << n << ' ' << real(field(r.theta_hat, n)) << '\n';
        std::cout << "objective " << real(r.objective) << '\n'
                  << "evaluations " << r.evaluations << '\n'
                  << "converged " << (r.converged ? "true" : "false") << '\n';
        if (r.clamped) std::cerr << "warning: estimate clamped to the parameter box\n";
      }
    } else if (*sample) {
      const auto p = sample_params.resolve();
      SampleHandle s;
      check(circw_sample_draw(&p, sample_n, sample_seed, &s.ptr));
      check(circw_sample_write(s.ptr, sample_out.c_str()));
    } else if (*fisher) {
      const auto p = fisher_params.resolve();
      double m[9];
      std::size_t dim = 0;
      check(circw_fisher(&p, m, 9, &dim));
      if (fisher_json) {
        nlohmann::ordered_json j;
        j["family"] = fisher_params.family;
        j["parameters"] = parameter_names(p.family);
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < dim; ++i)
          rows.push_back(std::vector<double>(m + i * dim, m + (i + 1) * dim));
        j["matrix"] = rows;
        std::cout << j.dump() << '\n';
      } else {
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t k = 0; k < dim; ++k)
            std::cout << (k ? " " : "") << real(m[i * dim + k], "%.6f");
          std::cout << '\n';
        }
      }
    } else if (*experiment) {
      TableHandle t;
      check(circw_experiment_run_file(exp_config.c_str(), exp_workers, &t.ptr));
      check(circw_table_write_csv(t.ptr, exp_out.c_str(), exp_wide ? 1 : 0));
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  return kOk;
}
