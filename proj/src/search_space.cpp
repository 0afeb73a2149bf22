#include "search_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circw/error.hpp"

namespace circw::detail {

namespace {

const double kLogKappaMin = std::log(kKappaMin);
const double kLogKappaMax = std::log(kKappaMax);

}  // namespace

SearchSpace search_space(Family family) {
  SearchSpace sp{family, {}};
  switch (family) {
    case Family::VonMises:
      sp.box = {{0.0, kLogKappaMin}, {kTwoPi, kLogKappaMax}, {true, false}};
      break;
    case Family::WrappedCauchy:
      sp.box = {{0.0, 0.0}, {kTwoPi, kRhoMax}, {true, false}};
      break;
    case Family::SineSkewedVonMises:
      sp.box = {{0.0, kLogKappaMin, -kLambdaMax},
                {kTwoPi, kLogKappaMax, kLambdaMax},
                {true, false, false}};
      break;
    default:
      throw InvalidArgument("cannot fit family '" + std::string(family_name(family)) + "'");
  }
  return sp;
}

FamilyParams SearchSpace::to_params(std::span<const double> x) const {
  switch (family) {
    case Family::VonMises:
      return FamilyParams::von_mises(x[0], std::exp(x[1]));
    case Family::WrappedCauchy:
      return FamilyParams::wrapped_cauchy(x[0], x[1]);
    default:
      return FamilyParams::sine_skewed(x[0], std::exp(x[1]), x[2]);
  }
}

std::vector<double> SearchSpace::from_params(const FamilyParams& theta) const {
  const auto log_kappa = [](double k) {
    return std::log(std::clamp(k, kKappaMin, kKappaMax));
  };
  std::vector<double> x;
  switch (family) {
    case Family::VonMises:
      x = {theta.mu, log_kappa(theta.kappa)};
      break;
    case Family::WrappedCauchy:
      x = {theta.mu, theta.rho};
      break;
    default:
      x = {theta.mu, log_kappa(theta.kappa), theta.lambda};
      break;
  }
  box.project(x);
  return x;
}

bool SearchSpace::on_boundary(std::span<const double> x) const {
  for (std::size_t d = 0; d < box.dim(); ++d) {
    if (box.periodic[d]) continue;
    if (x[d] <= box.lower[d] || x[d] >= box.upper[d]) return true;
  }
  return false;
}

Resultant mean_resultant(const CircularSample& s) {
  double c = 0.0;
  double sn = 0.0;
  for (double x : s.angles()) {
    c += std::cos(x);
    sn += std::sin(x);
  }
  const double n = static_cast<double>(s.size());
  c /= n;
  sn /= n;
  return {c, sn, std::hypot(c, sn), normalize_angle(std::atan2(sn, c))};
}

FamilyParams moment_start(const CircularSample& s, Family family) {
  const auto r = mean_resultant(s);
  const double len = std::min(r.length, 1.0 - 1e-9);
  switch (family) {
    case Family::VonMises:
      return FamilyParams::von_mises(
          r.direction, std::clamp(invert_bessel_ratio(len), kKappaMin, kKappaMax));
    case Family::WrappedCauchy:
      return FamilyParams::wrapped_cauchy(r.direction, std::min(len, kRhoMax));
    case Family::SineSkewedVonMises:
      return FamilyParams::sine_skewed(
          r.direction, std::clamp(invert_bessel_ratio(len), kKappaMin, kKappaMax), 0.0);
    default:
      throw InvalidArgument("cannot fit family '" + std::string(family_name(family)) + "'");
  }
}

OptimizerReport run_optimizer(const Objective& f, const SearchSpace& space,
                              std::vector<double> start,
                              const OptimizerSettings& settings) {
  const auto& box = space.box;
  DeSettings de;
  de.pop = settings.de_pop == 0 ? 15 * box.dim() : settings.de_pop;
  de.gens = settings.de_gens;
  de.tol = settings.de_tol;
  de.atol = 1e-14;
  de.seed = settings.seed;
  de.threads = settings.threads;

  switch (settings.method) {
    case OptimizerMethod::DE:
      return diff_evolution_min(f, box, de, start);
    case OptimizerMethod::Powell:
      return powell_min(f, std::move(start), box, settings.tol,
                        settings.powell_max_iter);
    case OptimizerMethod::DEPowell:
      break;
  }
  auto global = diff_evolution_min(f, box, de, start);
  auto local = powell_min(f, global.argmin, box, settings.tol, settings.powell_max_iter);
  local.evaluations += global.evaluations;
  local.iterations += global.iterations;
  global.trace.insert(global.trace.end(), local.trace.begin(), local.trace.end());
  local.trace = std::move(global.trace);
  if (global.value < local.value) {
    local.argmin = global.argmin;
    local.value = global.value;
  }
  return local;
}

}  // namespace circw::detail
