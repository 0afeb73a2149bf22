#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "circw/error.hpp"
#include "circw/estimate.hpp"
#include "circw/transport.hpp"
#include "search_space.hpp"

namespace circw {

std::string_view optimizer_method_name(OptimizerMethod m) {
  switch (m) {
    case OptimizerMethod::DE: return "de";
    case OptimizerMethod::Powell: return "powell";
    case OptimizerMethod::DEPowell: return "de+powell";
  }
  return "?";
}

OptimizerMethod parse_optimizer_method(std::string_view name) {
  if (name == "de") return OptimizerMethod::DE;
  if (name == "powell") return OptimizerMethod::Powell;
  if (name == "de+powell") return OptimizerMethod::DEPowell;
  throw InvalidArgument("unknown optimizer '" + std::string(name) + "'");
}

EstimatorSpec EstimatorSpec::mle() { return EstimatorSpec{}; }

EstimatorSpec EstimatorSpec::wasserstein(double p, Discretization d) {
  EstimatorSpec spec;
  spec.kind = EstimatorKind::WassersteinProjection;
  spec.p = p;
  spec.discretization = d;
  spec.validate();
  return spec;
}

void EstimatorSpec::validate() const {
  if (kind == EstimatorKind::MLE) return;
  WassersteinOrder order(p);
  if (discretization.kind == DiscretizationKind::Grid && p != 1.0)
    throw InvalidArgument("grid discretization requires p = 1");
  if (discretization.kind == DiscretizationKind::Grid && discretization.size == 1)
    throw InvalidArgument("grid needs at least 2 points");
}

namespace {

std::string format_order(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

}  // namespace

std::string EstimatorSpec::label() const {
  if (kind == EstimatorKind::MLE) return "MLE";
  std::string s = "W" + format_order(p);
  const bool grid = discretization.kind == DiscretizationKind::Grid;
  if (p == 1.0 && !grid) s += "-equal-mass";
  return s;
}

EstimatorSpec parse_estimator(std::string_view name) {
  if (name == "mle" || name == "MLE") return EstimatorSpec::mle();
  if (name.empty() || (name[0] != 'w' && name[0] != 'W'))
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
  std::string rest(name.substr(1));
  std::string suffix;
  if (const auto dash = rest.find('-'); dash != std::string::npos) {
    suffix = rest.substr(dash + 1);
    rest = rest.substr(0, dash);
  }
  char* end = nullptr;
  const double p = std::strtod(rest.c_str(), &end);
  if (rest.empty() || *end != '\0')
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
  Discretization d;
  if (suffix.empty())
    d.kind = p == 1.0 ? DiscretizationKind::Grid : DiscretizationKind::EqualMass;
  else if (suffix == "grid")
    d.kind = DiscretizationKind::Grid;
  else if (suffix == "equal-mass")
    d.kind = DiscretizationKind::EqualMass;
  else
    throw InvalidArgument("unknown discretization '" + suffix + "'");
  return EstimatorSpec::wasserstein(p, d);
}

namespace {

// theta -> distance between the sample and the model. Thread-safe.
class DistanceObjective {
 public:
  DistanceObjective(const CircularSample& s, const EstimatorSpec& spec)
      : sample_(s), order_(spec.p) {
    const std::size_t n = s.size();
    size_ = spec.discretization.size == 0 ? n : spec.discretization.size;
    grid_ = spec.discretization.kind == DiscretizationKind::Grid;
    if (grid_) {
      const auto g = grid_cdf_of(s, size_);
      sample_grid_.assign(g.values().begin(), g.values().end());
    } else if (size_ != n) {
      sample_dist_.emplace(discrete_from_sample(s));
    }
  }

  double operator()(const FamilyParams& theta) const {
    const CircularModel model(theta);
    if (grid_) {
      const auto model_grid = model.cdf_on_grid(size_);
      std::vector<double> scratch;
      return w1_grid(sample_grid_, model_grid, scratch);
    }
    const auto atoms = equal_mass_atoms(model, size_);
    if (!sample_dist_) return wp_discrete(sample_.angles(), atoms, order_);
    return wp_general(*sample_dist_, DiscreteCircularDist::uniform_over(atoms), order_);
  }

 private:
  const CircularSample& sample_;
  WassersteinOrder order_;
  std::size_t size_ = 0;
  bool grid_ = false;
  std::vector<double> sample_grid_;
  std::optional<DiscreteCircularDist> sample_dist_;
};

}  // namespace

FitResult wasserstein_fit(const CircularSample& s, Family family,
                          const EstimatorSpec& spec) {
  if (spec.kind != EstimatorKind::WassersteinProjection)
    throw InvalidArgument("wasserstein_fit needs a Wasserstein estimator");
  spec.validate();
  const auto space = detail::search_space(family);
  const DistanceObjective distance(s, spec);
  const Objective objective = [&](std::span<const double> x) {
    try {
      return distance(space.to_params(x));
    } catch (const NumericalError&) {
      return HUGE_VAL;
    }
  };

  const auto start = space.from_params(detail::moment_start(s, family));
  auto report = detail::run_optimizer(objective, space, start, spec.optimizer);
  if (!std::isfinite(report.value))
    throw NumericalError("Wasserstein fit: objective not finite anywhere");

  FitResult out;
  out.theta_hat = space.to_params(report.argmin);
  out.objective = report.value;
  out.clamped = space.on_boundary(report.argmin);
  out.report = std::move(report);
  return out;
}

FitResult fit(const CircularSample& s, Family family, const EstimatorSpec& spec) {
  if (spec.kind == EstimatorKind::WassersteinProjection)
    return wasserstein_fit(s, family, spec);
  switch (family) {
    case Family::VonMises: return mle_von_mises(s);
    case Family::WrappedCauchy: return mle_wrapped_cauchy(s);
    case Family::SineSkewedVonMises: return mle_ssvm(s, spec.optimizer);
    default:
      throw InvalidArgument("cannot fit family '" + std::string(family_name(family)) + "'");
  }
}

}  // namespace circw
