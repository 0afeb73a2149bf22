#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "circw/bessel.hpp"
#include "circw/error.hpp"
#include "circw/estimate.hpp"
#include "search_space.hpp"

namespace circw {

double invert_bessel_ratio(double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw InvalidArgument("invert_bessel_ratio: r must lie in [0, 1)");
  if (r == 0.0) return 0.0;

  // Starting guess from the usual piecewise approximation.
  double k;
  if (r < 0.53)
    k = 2.0 * r + r * r * r + 5.0 * std::pow(r, 5) / 6.0;
  else if (r < 0.85)
    k = -0.4 + 1.39 * r + 0.43 / (1.0 - r);
  else
    k = 1.0 / (r * r * r - 4.0 * r * r + 3.0 * r);

  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * k);
  while (bessel_a1(hi) < r) {
    lo = hi;
    hi *= 2.0;
  }
  k = std::clamp(k, lo, hi);

  for (int it = 0; it < 200; ++it) {
    const double a = bessel_a1(k);
    const double g = a - r;
    if (g == 0.0) return k;
    if (g < 0.0) lo = k; else hi = k;
    const double slope = k < 1e-8 ? 0.5 : 1.0 - a / k - a * a;
    double next = slope > 0.0 ? k - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - k) <= 1e-15 * std::max(1.0, k)) return next;
    k = next;
  }
  return k;
}

FitResult mle_von_mises(const CircularSample& s) {
  if (s.size() < 2) throw InvalidArgument("von Mises MLE needs n >= 2");
  const auto r = detail::mean_resultant(s);
  if (!(r.length >= 1e-12)) throw NumericalError("mean direction undefined");

  FitResult out;
  double kappa;
  if (r.length >= 1.0 - 1e-12) {
    kappa = kKappaMax;
    out.clamped = true;
  } else {
    kappa = invert_bessel_ratio(r.length);
    if (kappa > kKappaMax || kappa < kKappaMin) {
      kappa = std::clamp(kappa, kKappaMin, kKappaMax);
      out.clamped = true;
    }
  }
  out.theta_hat = FamilyParams::von_mises(r.direction, kappa);
  out.objective = -log_likelihood(out.theta_hat, s) / static_cast<double>(s.size());
  out.report.argmin = {out.theta_hat.mu, kappa};
  out.report.value = out.objective;
  out.report.evaluations = 1;
  out.report.converged = true;
  return out;
}

FitResult mle_wrapped_cauchy(const CircularSample& s, double tol,
                             std::size_t max_iter) {
  if (s.size() < 3) throw InvalidArgument("wrapped Cauchy MLE needs n >= 3");
  if (!(tol > 0.0)) throw InvalidArgument("wrapped Cauchy MLE: tol must be > 0");
  const auto x = s.angles();
  std::vector<std::complex<double>> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = std::polar(1.0, x[i]);

  // In eta = 2 rho e^{i mu} / (1 + rho^2) the weights 1 / (1 + rho^2 -
  // 2 rho cos(x - mu)) become proportional to 1 / (1 - Re(conj(eta) z)).
  double mu = 0.0;
  double rho = 0.0;
  FitResult out;
  bool converged = false;
  std::size_t it = 0;
  while (it < max_iter) {
    ++it;
    const std::complex<double> eta = std::polar(2.0 * rho / (1.0 + rho * rho), mu);
    std::complex<double> num = 0.0;
    double den = 0.0;
    for (const auto& zi : z) {
      const double w = 1.0 / (1.0 - (std::conj(eta) * zi).real());
      num += w * zi;
      den += w;
    }
    const std::complex<double> next = num / den;
    const double m = std::min(std::abs(next), 1.0);
    double rho_next = m < 1e-8 ? 0.5 * m : (1.0 - std::sqrt((1.0 - m) * (1.0 + m))) / m;
    if (rho_next > kRhoMax) {
      rho_next = kRhoMax;
      out.clamped = true;
    } else {
      out.clamped = false;
    }
    const double mu_next = normalize_angle(std::arg(next));
    const double change =
        std::max(std::fabs(wrap_difference(mu_next - mu)), std::fabs(rho_next - rho));
    mu = mu_next;
    rho = rho_next;
    out.report.trace.push_back(rho);
    if (change < tol) {
      converged = true;
      break;
    }
  }
  out.theta_hat = FamilyParams::wrapped_cauchy(mu, rho);
  out.objective = -log_likelihood(out.theta_hat, s) / static_cast<double>(s.size());
  out.report.argmin = {out.theta_hat.mu, rho};
  out.report.value = out.objective;
  out.report.iterations = it;
  out.report.evaluations = it;
  out.report.converged = converged;
  return out;
}

FitResult mle_ssvm(const CircularSample& s, const OptimizerSettings& opt) {
  if (s.size() < 4) throw InvalidArgument("sine-skewed MLE needs n >= 4");
  const auto x = s.angles();
  const std::size_t n = x.size();
  std::vector<double> c(n);
  std::vector<double> sn(n);
  double sum_c = 0.0;
  double sum_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = std::cos(x[i]);
    sn[i] = std::sin(x[i]);
    sum_c += c[i];
    sum_s += sn[i];
  }

  const auto space = detail::search_space(Family::SineSkewedVonMises);
  // Mean negative log-likelihood; +inf where the density vanishes.
  const Objective objective = [&](std::span<const double> v) {
    const double kappa = std::exp(v[1]);
    const double lambda = v[2];
    const double cm = std::cos(v[0]);
    const double sm = std::sin(v[0]);
    double skew = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 1.0 + lambda * (sn[i] * cm - c[i] * sm);
      if (!(t > 0.0)) return HUGE_VAL;
      skew += std::log(t);
    }
    const double tilt = kappa * (sum_c * cm + sum_s * sm);
    const double log_norm = std::log(kTwoPi * bessel_i0_scaled(kappa)) + kappa;
    return -(tilt + skew) / static_cast<double>(n) + log_norm;
  };

  const auto start = space.from_params(detail::moment_start(s, Family::SineSkewedVonMises));
  auto report = detail::run_optimizer(objective, space, start, opt);
  if (!std::isfinite(report.value))
    throw NumericalError("sine-skewed MLE: every candidate has zero likelihood");

  FitResult out;
  out.theta_hat = space.to_params(report.argmin);
  out.objective = report.value;
  out.clamped = space.on_boundary(report.argmin);
  out.report = std::move(report);
  return out;
}

double circular_sq_error(Angle est, Angle truth) {
  const double d = circ_dist(est, truth);
  return d * d;
}

}  // namespace circw
