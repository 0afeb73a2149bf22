#include "circw/families.hpp"

#include <algorithm>
#include <cmath>

#include "circw/bessel.hpp"
#include "circw/error.hpp"
#include "circw/rng.hpp"

namespace circw {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::VonMises: return "vm";
    case Family::WrappedCauchy: return "wc";
    case Family::SineSkewedVonMises: return "ssvm";
    case Family::Uniform: return "uniform";
    case Family::ContaminatedVonMises: return "vm-contam";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "vm") return Family::VonMises;
  if (name == "wc") return Family::WrappedCauchy;
  if (name == "ssvm") return Family::SineSkewedVonMises;
  if (name == "uniform") return Family::Uniform;
  if (name == "vm-contam") return Family::ContaminatedVonMises;
  throw InvalidArgument("unknown family: " + std::string(name));
}

FamilyParams FamilyParams::von_mises(double mu, double kappa) {
  FamilyParams p;
  p.family = Family::VonMises;
  p.mu = normalize_angle(mu);
  p.kappa = kappa;
  p.validate();
  return p;
}

FamilyParams FamilyParams::wrapped_cauchy(double mu, double rho) {
  FamilyParams p;
  p.family = Family::WrappedCauchy;
  p.mu = normalize_angle(mu);
  p.rho = rho;
  p.validate();
  return p;
}

FamilyParams FamilyParams::sine_skewed(double mu, double kappa, double lambda) {
  FamilyParams p;
  p.family = Family::SineSkewedVonMises;
  p.mu = normalize_angle(mu);
  p.kappa = kappa;
  p.lambda = lambda;
  p.validate();
  return p;
}

FamilyParams FamilyParams::uniform() { return FamilyParams{}; }

FamilyParams FamilyParams::contaminated(double mu, double kappa,
                                        double epsilon) {
  FamilyParams p;
  p.family = Family::ContaminatedVonMises;
  p.mu = normalize_angle(mu);
  p.kappa = kappa;
  p.epsilon = epsilon;
  p.validate();
  return p;
}

void FamilyParams::validate() const {
  const auto fail = [this](const char* what) {
    throw InvalidArgument(std::string(family_name(family)) + ": " + what);
  };
  if (!(mu >= 0.0 && mu < kTwoPi)) fail("mu must lie in [0, 2pi)");
  const bool uses_kappa = family == Family::VonMises ||
                          family == Family::SineSkewedVonMises ||
                          family == Family::ContaminatedVonMises;
  if (uses_kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) fail("kappa must be > 0");
  } else if (kappa != 0.0) {
    fail("kappa is not a parameter of this family");
  }
  if (family == Family::WrappedCauchy) {
    if (!(rho >= 0.0 && rho < 1.0)) fail("rho must lie in [0, 1)");
  } else if (rho != 0.0) {
    fail("rho is not a parameter of this family");
  }
  if (family == Family::SineSkewedVonMises) {
    if (!(lambda >= -1.0 && lambda <= 1.0)) fail("lambda must lie in [-1, 1]");
  } else if (lambda != 0.0) {
    fail("lambda is not a parameter of this family");
  }
  if (family == Family::ContaminatedVonMises) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
  } else if (epsilon != 0.0) {
    fail("epsilon is not a parameter of this family");
  }
  if (family == Family::Uniform && mu != 0.0) fail("uniform has no mu");
}

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::VonMises:
    case Family::ContaminatedVonMises: return {"mu", "kappa"};
    case Family::WrappedCauchy: return {"mu", "rho"};
    case Family::SineSkewedVonMises: return {"mu", "kappa", "lambda"};
    case Family::Uniform: return {};
  }
  return {};
}

double parameter_value(const FamilyParams& theta, std::string_view name) {
  if (name == "mu") return theta.mu;
  if (name == "kappa") return theta.kappa;
  if (name == "rho") return theta.rho;
  if (name == "lambda") return theta.lambda;
  if (name == "epsilon") return theta.epsilon;
  throw InvalidArgument("unknown parameter: " + std::string(name));
}

namespace {

bool has_vm_part(Family f) {
  return f == Family::VonMises || f == Family::SineSkewedVonMises ||
         f == Family::ContaminatedVonMises;
}

// Centred wrapped Cauchy CDF: integral of the density of mu=0 from 0 to y,
// continuous and non-decreasing on the whole line.
double wc_centred(double y, double ratio) {
  const double k = std::nearbyint(y / kTwoPi);
  const double r = y - kTwoPi * k;
  return k + std::atan2(ratio * std::sin(0.5 * r), std::cos(0.5 * r)) / kPi;
}

double wc_centred_inverse(double v, double ratio) {
  const double k = std::floor(v + 0.5);
  const double w = v - k;
  return kTwoPi * k +
         2.0 * std::atan2(std::sin(kPi * w), ratio * std::cos(kPi * w));
}

// Best & Fisher (1979) rejection sampler for von Mises(0, kappa).
double sample_von_mises_centred(double kappa, Rng& rng) {
  if (kappa < 1e-8) return kTwoPi * rng.uniform() - kPi;
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  double f = 0.0;
  for (;;) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double z = std::cos(kPi * u1);
    f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0) break;
    if (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  f = std::clamp(f, -1.0, 1.0);
  const double u3 = rng.uniform();
  return u3 > 0.5 ? std::acos(f) : -std::acos(f);
}

}  // namespace

CircularModel::CircularModel(const FamilyParams& theta) : theta_(theta) {
  theta_.validate();
  if (has_vm_part(theta_.family)) {
    const double kappa = theta_.kappa;
    const double i0s = bessel_i0_scaled(kappa);
    scaled_norm_ = 1.0 / (kTwoPi * i0s);
    log_norm_ = -std::log(kTwoPi * i0s) - kappa;
    const auto jmax =
        static_cast<std::size_t>(30.0 + std::ceil(8.0 * std::sqrt(kappa)));
    const auto ratios = bessel_ratios(kappa, jmax);
    for (std::size_t j = 1; j <= jmax; ++j) {
      const double c = ratios[j] / static_cast<double>(j);
      if (c < 1e-14) break;
      coef_.push_back(c);
    }
    series_at_mu_ = vm_series(std::cos(theta_.mu), std::sin(theta_.mu));
    if (theta_.family == Family::SineSkewedVonMises) {
      skew_scale_ = theta_.lambda * scaled_norm_ / kappa;
      skew_origin_ = std::cos(theta_.mu);
    }
  } else if (theta_.family == Family::WrappedCauchy) {
    wc_ratio_ = (1.0 + theta_.rho) / (1.0 - theta_.rho);
    wc_origin_ = wc_centred(-theta_.mu, wc_ratio_);
  }
}

// Clenshaw summation of sum_j coef_j sin(j t) given cos t and sin t.
double CircularModel::vm_series(double cos_t, double sin_t) const {
  const double two_cos = 2.0 * cos_t;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = coef_.size(); j-- > 0;) {
    const double b0 = coef_[j] + two_cos * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1 * sin_t;
}

double CircularModel::pdf(double x) const {
  const double t = x - theta_.mu;
  switch (theta_.family) {
    case Family::Uniform: return 1.0 / kTwoPi;
    case Family::VonMises:
      return std::exp(theta_.kappa * (std::cos(t) - 1.0)) * scaled_norm_;
    case Family::SineSkewedVonMises:
      return std::max(0.0, std::exp(theta_.kappa * (std::cos(t) - 1.0)) *
                               scaled_norm_ *
                               (1.0 + theta_.lambda * std::sin(t)));
    case Family::ContaminatedVonMises:
      return (1.0 - theta_.epsilon) *
                 std::exp(theta_.kappa * (std::cos(t) - 1.0)) * scaled_norm_ +
             theta_.epsilon / kTwoPi;
    case Family::WrappedCauchy: {
      const double rho = theta_.rho;
      return (1.0 - rho * rho) /
             (kTwoPi * (1.0 + rho * rho - 2.0 * rho * std::cos(t)));
    }
  }
  return 0.0;
}

double CircularModel::logpdf(double x) const {
  const double t = x - theta_.mu;
  switch (theta_.family) {
    case Family::Uniform: return -std::log(kTwoPi);
    case Family::VonMises: return theta_.kappa * std::cos(t) + log_norm_;
    case Family::SineSkewedVonMises: {
      const double skew = theta_.lambda * std::sin(t);
      if (1.0 + skew <= 0.0) return -HUGE_VAL;
      return theta_.kappa * std::cos(t) + log_norm_ + std::log1p(skew);
    }
    default: return std::log(pdf(x));
  }
}

double CircularModel::cdf_base(double x) const {
  switch (theta_.family) {
    case Family::Uniform: return x / kTwoPi;
    case Family::WrappedCauchy:
      return wc_centred(x - theta_.mu, wc_ratio_) - wc_origin_;
    default: break;
  }
  const double t = x - theta_.mu;
  const double c = std::cos(t);
  double value = x / kTwoPi + (vm_series(c, std::sin(t)) + series_at_mu_) / kPi;
  if (theta_.family == Family::SineSkewedVonMises) {
    const double kappa = theta_.kappa;
    value += skew_scale_ * std::exp(kappa * (c - 1.0)) *
             std::expm1(kappa * (skew_origin_ - c));
  } else if (theta_.family == Family::ContaminatedVonMises) {
    value = (1.0 - theta_.epsilon) * value + theta_.epsilon * x / kTwoPi;
  }
  // The series carries rounding noise of a few ulps around 0 and 1.
  return std::clamp(value, 0.0, 1.0);
}

double CircularModel::cdf(double x) const {
  if (x >= 0.0 && x < kTwoPi) return cdf_base(x);
  const double k = std::floor(x / kTwoPi);
  double y = x - kTwoPi * k;
  double wind = k;
  if (y < 0.0) {
    y += kTwoPi;
    wind -= 1.0;
  }
  if (y >= kTwoPi) {
    y -= kTwoPi;
    wind += 1.0;
  }
  return cdf_base(y) + wind;
}

CircularCdf CircularModel::cdf_view() const {
  return CircularCdf([model = *this](double x) { return model.cdf_base(x); });
}

// Safeguarded Newton on a bracket [lo, hi] with cdf(lo) <= u <= cdf(hi).
double CircularModel::refine_quantile(double u, double lo, double hi,
                                      double x) const {
  // Newton can bounce between flat shoulders; bisect whenever a step fails
  // to halve the residual.
  double prev = HUGE_VAL;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = cdf_base(x) - u;
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    if (std::fabs(f) <= 1e-14 || hi - lo <= 1e-15) return x;
    const double slope = pdf(x);
    double next = x - f / slope;
    const bool slow = std::fabs(f) > 0.5 * prev;
    prev = std::fabs(f);
    if (slow || !(slope > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

double CircularModel::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("quantile level outside [0, 1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return kTwoPi;
  switch (theta_.family) {
    case Family::Uniform: return kTwoPi * u;
    case Family::WrappedCauchy: {
      const double y = wc_centred_inverse(u + wc_origin_, wc_ratio_);
      return std::clamp(theta_.mu + y, 0.0, kTwoPi);
    }
    default: return refine_quantile(u, 0.0, kTwoPi, kTwoPi * u);
  }
}

std::vector<double> CircularModel::quantiles(
    std::span<const double> sorted_levels) const {
  std::vector<double> out(sorted_levels.size());
  if (theta_.family == Family::Uniform ||
      theta_.family == Family::WrappedCauchy) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = quantile(sorted_levels[i]);
    return out;
  }
  const std::size_t cells =
      std::clamp<std::size_t>(sorted_levels.size(), 64, 1u << 16);
  const auto grid = cdf_on_grid(cells);
  const double step = kTwoPi / static_cast<double>(cells);
  std::size_t cell = 0;
  double prev = -1.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double u = sorted_levels[i];
    if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("quantile level outside [0, 1]");
    if (u < prev) throw InvalidArgument("quantile levels must be ascending");
    prev = u;
    if (u == 0.0) { out[i] = 0.0; continue; }
    if (u == 1.0) { out[i] = kTwoPi; continue; }
    while (cell + 1 < cells && grid[cell] < u) ++cell;
    const double lo = step * static_cast<double>(cell);
    const double hi = step * static_cast<double>(cell + 1);
    const double f_lo = cell == 0 ? 0.0 : grid[cell - 1];
    const double f_hi = grid[cell];
    double x = 0.5 * (lo + hi);
    if (f_hi > f_lo) x = lo + (u - f_lo) / (f_hi - f_lo) * step;
    out[i] = refine_quantile(u, lo, hi, std::clamp(x, lo, hi));
  }
  return out;
}

std::vector<double> CircularModel::cdf_on_grid(std::size_t grid_size) const {
  if (grid_size < 1) throw InvalidArgument("grid size must be positive");
  std::vector<double> values(grid_size);
  const double step = kTwoPi / static_cast<double>(grid_size);
  if (!has_vm_part(theta_.family)) {
    const double origin = cdf_base(0.0);
    for (std::size_t i = 0; i + 1 < grid_size; ++i)
      values[i] = cdf_base(step * static_cast<double>(i + 1)) - origin;
  } else {
    // Rotate (cos, sin) of x - mu incrementally; resync every 64 steps.
    const double cd = std::cos(step);
    const double sd = std::sin(step);
    const double kappa = theta_.kappa;
    double c = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < grid_size; ++i) {
      const double x = step * static_cast<double>(i + 1);
      if (i % 64 == 0) {
        c = std::cos(x - theta_.mu);
        s = std::sin(x - theta_.mu);
      } else {
        const double cn = c * cd - s * sd;
        s = s * cd + c * sd;
        c = cn;
      }
      double v = x / kTwoPi + (vm_series(c, s) + series_at_mu_) / kPi;
      if (theta_.family == Family::SineSkewedVonMises) {
        v += skew_scale_ * std::exp(kappa * (c - 1.0)) *
             std::expm1(kappa * (skew_origin_ - c));
      } else if (theta_.family == Family::ContaminatedVonMises) {
        v = (1.0 - theta_.epsilon) * v + theta_.epsilon * x / kTwoPi;
      }
      values[i] = v;
    }
  }
  values[grid_size - 1] = 1.0;
  return values;
}

double family_pdf(const FamilyParams& theta, double x) {
  return CircularModel(theta).pdf(x);
}

double family_logpdf(const FamilyParams& theta, double x) {
  return CircularModel(theta).logpdf(x);
}

double family_cdf(const FamilyParams& theta, double x) {
  return CircularModel(theta).cdf(x);
}

double family_quantile(const FamilyParams& theta, double u) {
  return CircularModel(theta).quantile(u);
}

CircularSample family_sample(const FamilyParams& theta, std::size_t n,
                             std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be positive");
  theta.validate();
  Rng rng(seed);
  std::vector<double> out(n);
  switch (theta.family) {
    case Family::Uniform:
      for (double& v : out) v = kTwoPi * rng.uniform();
      break;
    case Family::VonMises:
      for (double& v : out) v = theta.mu + sample_von_mises_centred(theta.kappa, rng);
      break;
    case Family::WrappedCauchy: {
      const CircularModel model(theta);
      for (double& v : out) v = model.quantile(rng.uniform());
      break;
    }
    case Family::SineSkewedVonMises:
      for (double& v : out) {
        const double x = sample_von_mises_centred(theta.kappa, rng);
        const double keep = 0.5 * (1.0 + theta.lambda * std::sin(x));
        v = rng.uniform() < keep ? theta.mu + x : theta.mu - x;
      }
      break;
    case Family::ContaminatedVonMises:
      for (double& v : out) {
        if (rng.uniform() < theta.epsilon)
          v = kTwoPi * rng.uniform();
        else
          v = theta.mu + sample_von_mises_centred(theta.kappa, rng);
      }
      break;
  }
  return CircularSample::from(out);
}

double log_likelihood(const FamilyParams& theta, const CircularSample& s) {
  const CircularModel model(theta);
  double acc = 0.0;
  for (double x : s.angles()) acc += model.logpdf(x);
  return acc;
}

}  // namespace circw
