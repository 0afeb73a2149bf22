#include "circw/circw.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <string>

#include "circw/error.hpp"
#include "circw/estimate.hpp"
#include "circw/harness.hpp"
#include "circw/transport.hpp"

struct circw_sample {
  circw::CircularSample sample;
};

struct circw_table {
  circw::MseTable table;
};

namespace {

thread_local std::string last_error;

circw_status fail(circw_status code, const char* what) {
  last_error = what;
  return code;
}

// Runs `body` and maps exceptions to status codes.
template <class F>
circw_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CIRCW_OK;
  } catch (const circw::InvalidArgument& e) {
    return fail(CIRCW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const circw::NumericalError& e) {
    return fail(CIRCW_ERR_NUMERICAL, e.what());
  } catch (const circw::IoError& e) {
    return fail(CIRCW_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CIRCW_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(CIRCW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CIRCW_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw circw::InvalidArgument(what);
}

circw::Family to_family(circw_family f) {
  switch (f) {
    case CIRCW_VON_MISES: return circw::Family::VonMises;
    case CIRCW_WRAPPED_CAUCHY: return circw::Family::WrappedCauchy;
    case CIRCW_SINE_SKEWED_VON_MISES: return circw::Family::SineSkewedVonMises;
    case CIRCW_UNIFORM: return circw::Family::Uniform;
    case CIRCW_CONTAMINATED_VON_MISES: return circw::Family::ContaminatedVonMises;
  }
  throw circw::InvalidArgument("unknown family code");
}

circw_family from_family(circw::Family f) {
  switch (f) {
    case circw::Family::VonMises: return CIRCW_VON_MISES;
    case circw::Family::WrappedCauchy: return CIRCW_WRAPPED_CAUCHY;
    case circw::Family::SineSkewedVonMises: return CIRCW_SINE_SKEWED_VON_MISES;
    case circw::Family::Uniform: return CIRCW_UNIFORM;
    case circw::Family::ContaminatedVonMises: return CIRCW_CONTAMINATED_VON_MISES;
  }
  return CIRCW_UNIFORM;
}

circw::FamilyParams to_params(const circw_params* p) {
  require(p != nullptr, "params is null");
  circw::FamilyParams t;
  t.family = to_family(p->family);
  require(std::isfinite(p->mu), "mu must be finite");
  t.mu = circw::normalize_angle(p->mu);
  t.kappa = p->kappa;
  t.rho = p->rho;
  t.lambda = p->lambda;
  t.epsilon = p->epsilon;
  t.validate();
  return t;
}

circw_params from_params(const circw::FamilyParams& t) {
  return {from_family(t.family), t.mu, t.kappa, t.rho, t.lambda, t.epsilon};
}

void write_to(const char* path, const std::string& text) {
  require(path != nullptr, "path is null");
  if (std::strcmp(path, "-") == 0) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path);
  if (!out) throw circw::IoError(std::string("cannot write file: ") + path);
  out << text;
  if (!out) throw circw::IoError(std::string("cannot write file: ") + path);
}

std::string table_text(const circw::MseTable& t, int wide) {
  std::ostringstream out;
  if (wide) circw::write_wide_csv(out, t); else circw::write_csv(out, t);
  return out.str();
}

void run_config(circw::ExperimentConfig cfg, unsigned workers, circw_table** out) {
  if (workers != 0) cfg.workers = workers;
  *out = new circw_table{circw::run_experiment(cfg)};
}

}  // namespace

extern "C" {

const char* circw_version(void) { return "0.1.0"; }

const char* circw_last_error(void) { return last_error.c_str(); }

const char* circw_status_string(circw_status status) {
  switch (status) {
    case CIRCW_OK: return "ok";
    case CIRCW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CIRCW_ERR_NUMERICAL: return "numerical failure";
    case CIRCW_ERR_IO: return "i/o error";
    case CIRCW_ERR_OUT_OF_MEMORY: return "out of memory";
    case CIRCW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

circw_status circw_family_from_name(const char* name, circw_family* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = from_family(circw::parse_family(name));
  });
}

const char* circw_family_name(circw_family family) {
  try {
    return circw::family_name(to_family(family)).data();
  } catch (...) {
    return nullptr;
  }
}

circw_status circw_params_validate(circw_params* params) {
  return guarded([&] { *params = from_params(to_params(params)); });
}

circw_status circw_sample_create(const double* values, size_t n, circw_sample** out) {
  return guarded([&] {
    require(out != nullptr && (values != nullptr || n == 0), "null argument");
    auto s = circw::CircularSample::from(std::span<const double>(values, n));
    *out = new circw_sample{std::move(s)};
  });
}

circw_status circw_sample_read(const char* path, circw_sample** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new circw_sample{circw::read_sample_file(path)};
  });
}

circw_status circw_sample_write(const circw_sample* sample, const char* path) {
  return guarded([&] {
    require(sample != nullptr, "sample is null");
    std::ostringstream text;
    circw::write_sample(text, sample->sample);
    write_to(path, text.str());
  });
}

circw_status circw_sample_draw(const circw_params* params, size_t n, uint64_t seed,
                               circw_sample** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    require(n > 0, "sample size must be positive");
    *out = new circw_sample{circw::family_sample(to_params(params), n, seed)};
  });
}

size_t circw_sample_size(const circw_sample* sample) {
  return sample ? sample->sample.size() : 0;
}

const double* circw_sample_values(const circw_sample* sample) {
  return sample ? sample->sample.angles().data() : nullptr;
}

void circw_sample_destroy(circw_sample* sample) { delete sample; }

circw_status circw_pdf(const circw_params* params, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = circw::family_pdf(to_params(params), x);
  });
}

circw_status circw_cdf(const circw_params* params, double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = circw::family_cdf(to_params(params), x);
  });
}

circw_status circw_quantile(const circw_params* params, double u, double* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = circw::family_quantile(to_params(params), u);
  });
}

circw_status circw_log_likelihood(const circw_params* params,
                                  const circw_sample* sample, double* out) {
  return guarded([&] {
    require(sample != nullptr && out != nullptr, "null argument");
    *out = circw::log_likelihood(to_params(params), sample->sample);
  });
}

circw_status circw_fisher(const circw_params* params, double* matrix,
                          size_t capacity, size_t* dim) {
  return guarded([&] {
    require(matrix != nullptr && dim != nullptr, "null argument");
    const auto f = circw::family_fisher(to_params(params));
    require(capacity >= f.entries.size(), "matrix buffer too small");
    std::copy(f.entries.begin(), f.entries.end(), matrix);
    *dim = f.dim;
  });
}

circw_status circw_distance(const circw_sample* a, const circw_sample* b, double p,
                            circw_distance_method method, size_t grid_size,
                            double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    const circw::WassersteinOrder order(p);
    const auto& x = a->sample;
    const auto& y = b->sample;
    switch (method) {
      case CIRCW_DISTANCE_EXACT:
        if (x.size() == y.size())
          *out = circw::wp_discrete(x.angles(), y.angles(), order);
        else
          *out = circw::wp_general(circw::discrete_from_sample(x),
                                   circw::discrete_from_sample(y), order);
        return;
      case CIRCW_DISTANCE_BRUTEFORCE:
        require(x.size() == y.size(), "bruteforce needs samples of equal size");
        *out = circw::wp_bruteforce(x.angles(), y.angles(), order);
        return;
      case CIRCW_DISTANCE_GRID: {
        require(p == 1.0, "grid distance requires p = 1");
        const size_t d = grid_size != 0 ? grid_size : std::max(x.size(), y.size());
        *out = circw::w1_grid(circw::grid_cdf_of(x, d), circw::grid_cdf_of(y, d));
        return;
      }
    }
    throw circw::InvalidArgument("unknown distance method");
  });
}

void circw_fit_options_default(circw_fit_options* options) {
  if (!options) return;
  const circw::OptimizerSettings d;
  options->kind = CIRCW_MLE;
  options->p = 1.0;
  options->discretization = CIRCW_GRID;
  options->discretization_size = 0;
  options->optimizer = CIRCW_OPT_DE_POWELL;
  options->de_pop = d.de_pop;
  options->de_gens = d.de_gens;
  options->de_tol = d.de_tol;
  options->tol = d.tol;
  options->seed = d.seed;
  options->threads = d.threads;
}

circw_status circw_fit_options_set_estimator(circw_fit_options* options,
                                             const char* name) {
  return guarded([&] {
    require(options != nullptr && name != nullptr, "null argument");
    const auto spec = circw::parse_estimator(name);
    options->kind = spec.kind == circw::EstimatorKind::MLE ? CIRCW_MLE : CIRCW_WASSERSTEIN;
    options->p = spec.p;
    options->discretization = spec.discretization.kind == circw::DiscretizationKind::Grid
                                  ? CIRCW_GRID
                                  : CIRCW_EQUAL_MASS;
  });
}

circw_status circw_fit(const circw_sample* sample, circw_family family,
                       const circw_fit_options* options, circw_fit_result* out) {
  return guarded([&] {
    require(sample != nullptr && options != nullptr && out != nullptr, "null argument");
    circw::EstimatorSpec spec;
    spec.kind = options->kind == CIRCW_MLE ? circw::EstimatorKind::MLE
                                           : circw::EstimatorKind::WassersteinProjection;
    spec.p = options->p;
    spec.discretization.kind = options->discretization == CIRCW_GRID
                                   ? circw::DiscretizationKind::Grid
                                   : circw::DiscretizationKind::EqualMass;
    spec.discretization.size = options->discretization_size;
    switch (options->optimizer) {
      case CIRCW_OPT_DE: spec.optimizer.method = circw::OptimizerMethod::DE; break;
      case CIRCW_OPT_POWELL: spec.optimizer.method = circw::OptimizerMethod::Powell; break;
      case CIRCW_OPT_DE_POWELL:
        spec.optimizer.method = circw::OptimizerMethod::DEPowell;
        break;
      default: throw circw::InvalidArgument("unknown optimizer");
    }
    spec.optimizer.de_pop = options->de_pop;
    spec.optimizer.de_gens = options->de_gens;
    spec.optimizer.de_tol = options->de_tol;
    spec.optimizer.tol = options->tol;
    spec.optimizer.seed = options->seed;
    spec.optimizer.threads = options->threads == 0 ? 1 : options->threads;
    spec.validate();

    const auto r = circw::fit(sample->sample, to_family(family), spec);
    out->theta_hat = from_params(r.theta_hat);
    out->objective = r.objective;
    out->evaluations = r.report.evaluations;
    out->iterations = r.report.iterations;
    out->converged = r.report.converged ? 1 : 0;
    out->clamped = r.clamped ? 1 : 0;
  });
}

circw_status circw_experiment_run_json(const char* json, unsigned workers,
                                       circw_table** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    run_config(circw::ExperimentConfig::from_json(json), workers, out);
  });
}

circw_status circw_experiment_run_file(const char* path, unsigned workers,
                                       circw_table** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    run_config(circw::ExperimentConfig::from_file(path), workers, out);
  });
}

size_t circw_table_size(const circw_table* table) {
  return table ? table->table.rows.size() : 0;
}

circw_status circw_table_row_at(const circw_table* table, size_t index,
                                circw_table_row* out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "null argument");
    require(index < table->table.rows.size(), "row index out of range");
    const auto& r = table->table.rows[index];
    *out = {r.sweep_name.c_str(), r.sweep_value, r.estimator.c_str(),
            r.parameter.c_str(),  r.mse,         r.log10_mse,
            r.replications,       r.failures};
  });
}

circw_status circw_table_mse_ratio(const circw_table* table, const char* num,
                                   const char* den, double sweep_value,
                                   const char* parameter, double* out) {
  return guarded([&] {
    require(table && num && den && parameter && out, "null argument");
    for (const auto& r : circw::mse_ratio(table->table, num, den)) {
      if (r.sweep_value == sweep_value && r.parameter == parameter) {
        *out = r.ratio;
        return;
      }
    }
    throw circw::InvalidArgument("no row for that sweep value and parameter");
  });
}

circw_status circw_table_write_csv(const circw_table* table, const char* path,
                                   int wide) {
  return guarded([&] {
    require(table != nullptr, "table is null");
    write_to(path, table_text(table->table, wide));
  });
}

circw_status circw_table_to_csv(const circw_table* table, int wide, char** out) {
  return guarded([&] {
    require(table != nullptr && out != nullptr, "null argument");
    const auto text = table_text(table->table, wide);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

circw_status circw_table_from_csv(const char* csv, circw_table** out) {
  return guarded([&] {
    require(csv != nullptr && out != nullptr, "null argument");
    std::istringstream in(csv);
    *out = new circw_table{circw::parse_csv(in)};
  });
}

void circw_table_destroy(circw_table* table) { delete table; }

void circw_string_free(char* s) { std::free(s); }

}  // extern "C"
