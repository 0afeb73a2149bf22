#pragma once

// Monte Carlo experiments: for every sweep value and replication, draw a
// sample from the true model, run each estimator on it and aggregate mean
// squared errors per parameter.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "circw/estimate.hpp"
#include "circw/families.hpp"

namespace circw {

enum class SweepAxis { Log10N, Kappa, Rho, Lambda, Epsilon };

/// "log10N", "kappa", "rho", "lambda", "epsilon".
std::string_view sweep_axis_name(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);

struct EstimatorEntry {
  std::string label;
  EstimatorSpec spec;
};

struct ExperimentConfig {
  /// True law before the sweep value is applied. The contaminated family
  /// is fitted with the plain von Mises model.
  FamilyParams theta0;
  SweepAxis sweep = SweepAxis::Log10N;
  std::vector<double> sweep_values;
  /// Sample size when the sweep is not over log10N.
  std::size_t n = 0;
  /// 0 selects the default for the sample size.
  std::size_t replications = 0;
  std::vector<EstimatorEntry> estimators;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;

  /// Throws InvalidArgument.
  void validate() const;

  /// JSON keys: family, theta0{mu,kappa,rho,lambda,epsilon},
  /// sweep{name,values}, n, replications, estimators[], master_seed, and
  /// optionally workers and optimizer{method,de_pop,de_gens,de_tol,tol}.
  static ExperimentConfig from_json(std::string_view text);
  static ExperimentConfig from_file(const std::string& path);
};

/// 300 for n <= 1000, 100 up to 10^4, 20 above.
std::size_t default_replications(std::size_t n);

/// Family fitted to data drawn from `truth`.
Family fitted_family(Family truth);

/// Sample size and true parameters at one sweep value.
std::size_t sweep_sample_size(const ExperimentConfig& cfg, double value);
FamilyParams sweep_truth(const ExperimentConfig& cfg, double value);
std::size_t replications_for(const ExperimentConfig& cfg, std::size_t n);

/// Child seed of a replication, independent of scheduling.
std::uint64_t replication_seed(std::uint64_t master, std::size_t sweep_index,
                               std::size_t replication);

struct MseRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string estimator;
  std::string parameter;
  double mse = 0.0;
  double log10_mse = 0.0;
  std::size_t replications = 0;
  std::size_t failures = 0;
};

/// NaN fields compare equal to NaN.
bool operator==(const MseRow& a, const MseRow& b);

struct MseTable {
  std::vector<MseRow> rows;
  friend bool operator==(const MseTable&, const MseTable&) = default;
};

struct ReplicationRecord {
  std::size_t sweep_index = 0;
  std::size_t replication = 0;
  std::string estimator;
  bool failed = false;
  std::string error;
  FamilyParams theta_hat;
};

struct ExperimentResult {
  MseTable table;
  /// Ordered by sweep index, replication, estimator.
  std::vector<ReplicationRecord> records;
};

ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg);
MseTable run_experiment(const ExperimentConfig& cfg);

struct RatioRow {
  double sweep_value = 0.0;
  std::string parameter;
  double ratio = 0.0;
};

/// mse_num / mse_den per sweep value and parameter. Throws InvalidArgument
/// when either estimator is absent.
std::vector<RatioRow> mse_ratio(const MseTable& table, std::string_view num,
                                std::string_view den);

/// Header: sweep_name,sweep_value,estimator,parameter,mse,log10_mse,
/// replications,failures. Reals are written with 17 significant digits.
void write_csv(std::ostream& out, const MseTable& table);
MseTable parse_csv(std::istream& in);

/// One row per sweep value, one log10 MSE column per estimator and
/// parameter: log10N,MLE_mu,W1_mu,...
void write_wide_csv(std::ostream& out, const MseTable& table);

}  // namespace circw
