#ifndef CIRCW_CIRCW_H
#define CIRCW_CIRCW_H

/* C interface to the circw library: circular samples, parametric families,
 * Wasserstein distances, estimators and Monte Carlo experiments.
 *
 * Every function returning circw_status reports failures through the code;
 * circw_last_error() then holds a message for the calling thread. Output
 * parameters are left untouched on failure. Objects created by the library
 * are released with the matching *_destroy / *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(CIRCW_BUILDING_LIBRARY)
#define CIRCW_API __attribute__((visibility("default")))
#else
#define CIRCW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CIRCW_OK = 0,
  CIRCW_ERR_INVALID_ARGUMENT = 1,
  CIRCW_ERR_NUMERICAL = 2,
  CIRCW_ERR_IO = 3,
  CIRCW_ERR_OUT_OF_MEMORY = 4,
  CIRCW_ERR_INTERNAL = 5
} circw_status;

typedef enum {
  CIRCW_VON_MISES = 0,
  CIRCW_WRAPPED_CAUCHY = 1,
  CIRCW_SINE_SKEWED_VON_MISES = 2,
  CIRCW_UNIFORM = 3,
  CIRCW_CONTAMINATED_VON_MISES = 4
} circw_family;

/* Only the fields of `family` are used; the others must be zero. */
typedef struct {
  circw_family family;
  double mu;
  double kappa;
  double rho;
  double lambda;
  double epsilon;
} circw_params;

typedef struct circw_sample circw_sample;
typedef struct circw_table circw_table;

CIRCW_API const char* circw_version(void);
CIRCW_API const char* circw_last_error(void);
CIRCW_API const char* circw_status_string(circw_status status);

/* Names: "vm", "wc", "ssvm", "uniform", "vm-contam". */
CIRCW_API circw_status circw_family_from_name(const char* name, circw_family* out);
CIRCW_API const char* circw_family_name(circw_family family);
/* Normalizes mu into [0, 2pi) and checks the domain. */
CIRCW_API circw_status circw_params_validate(circw_params* params);

/* Samples are sorted, normalized to [0, 2pi) and immutable. */
CIRCW_API circw_status circw_sample_create(const double* values, size_t n,
                                           circw_sample** out);
CIRCW_API circw_status circw_sample_read(const char* path, circw_sample** out);
/* path "-" writes to standard output. */
CIRCW_API circw_status circw_sample_write(const circw_sample* sample,
                                          const char* path);
CIRCW_API circw_status circw_sample_draw(const circw_params* params, size_t n,
                                         uint64_t seed, circw_sample** out);
CIRCW_API size_t circw_sample_size(const circw_sample* sample);
CIRCW_API const double* circw_sample_values(const circw_sample* sample);
CIRCW_API void circw_sample_destroy(circw_sample* sample);

CIRCW_API circw_status circw_pdf(const circw_params* params, double x, double* out);
CIRCW_API circw_status circw_cdf(const circw_params* params, double x, double* out);
CIRCW_API circw_status circw_quantile(const circw_params* params, double u,
                                      double* out);
CIRCW_API circw_status circw_log_likelihood(const circw_params* params,
                                            const circw_sample* sample,
                                            double* out);
/* Writes the row-major Fisher matrix per observation into `matrix`
 * (capacity >= 9 suffices for every family) and its dimension into `dim`. */
CIRCW_API circw_status circw_fisher(const circw_params* params, double* matrix,
                                    size_t capacity, size_t* dim);

typedef enum {
  /* Equal sizes: best cyclic shift; otherwise the general alpha search. */
  CIRCW_DISTANCE_EXACT = 0,
  /* Exhaustive shift scan; equal sizes only. */
  CIRCW_DISTANCE_BRUTEFORCE = 1,
  /* Grid W1 of the two empirical CDFs; p must be 1. */
  CIRCW_DISTANCE_GRID = 2
} circw_distance_method;

/* grid_size 0 selects the larger sample size. */
CIRCW_API circw_status circw_distance(const circw_sample* a, const circw_sample* b,
                                      double p, circw_distance_method method,
                                      size_t grid_size, double* out);

typedef enum { CIRCW_MLE = 0, CIRCW_WASSERSTEIN = 1 } circw_estimator_kind;
typedef enum { CIRCW_EQUAL_MASS = 0, CIRCW_GRID = 1 } circw_discretization;
typedef enum {
  CIRCW_OPT_DE = 0,
  CIRCW_OPT_POWELL = 1,
  CIRCW_OPT_DE_POWELL = 2
} circw_optimizer;

typedef struct {
  circw_estimator_kind kind;
  double p;
  circw_discretization discretization;
  size_t discretization_size; /* 0: sample size */
  circw_optimizer optimizer;
  size_t de_pop;              /* 0: 15 per dimension */
  size_t de_gens;
  double de_tol;
  double tol;
  uint64_t seed;
  unsigned threads;
} circw_fit_options;

typedef struct {
  circw_params theta_hat;
  double objective;
  size_t evaluations;
  size_t iterations;
  int converged;
  int clamped;
} circw_fit_result;

CIRCW_API void circw_fit_options_default(circw_fit_options* options);
/* Sets kind, p and discretization from "mle", "w1", "w2", "w<p>",
 * "w<p>-grid" or "w<p>-equal-mass". */
CIRCW_API circw_status circw_fit_options_set_estimator(circw_fit_options* options,
                                                       const char* name);
CIRCW_API circw_status circw_fit(const circw_sample* sample, circw_family family,
                                 const circw_fit_options* options,
                                 circw_fit_result* out);

/* Runs a JSON experiment config. workers 0 keeps the config's value. */
CIRCW_API circw_status circw_experiment_run_json(const char* json, unsigned workers,
                                                 circw_table** out);
CIRCW_API circw_status circw_experiment_run_file(const char* path, unsigned workers,
                                                 circw_table** out);

typedef struct {
  const char* sweep_name;
  double sweep_value;
  const char* estimator;
  const char* parameter;
  double mse;
  double log10_mse;
  size_t replications;
  size_t failures;
} circw_table_row;

CIRCW_API size_t circw_table_size(const circw_table* table);
/* Strings stay valid while the table lives. */
CIRCW_API circw_status circw_table_row_at(const circw_table* table, size_t index,
                                          circw_table_row* out);
CIRCW_API circw_status circw_table_mse_ratio(const circw_table* table,
                                             const char* num, const char* den,
                                             double sweep_value,
                                             const char* parameter, double* out);
/* wide != 0 selects the one-row-per-sweep-value layout. path "-" writes to
 * standard output. */
CIRCW_API circw_status circw_table_write_csv(const circw_table* table,
                                             const char* path, int wide);
/* Allocated string; release with circw_string_free. */
CIRCW_API circw_status circw_table_to_csv(const circw_table* table, int wide,
                                          char** out);
CIRCW_API circw_status circw_table_from_csv(const char* csv, circw_table** out);
CIRCW_API void circw_table_destroy(circw_table* table);
CIRCW_API void circw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CIRCW_CIRCW_H */
