#include <cmath>
#include <functional>

#include "circw/bessel.hpp"
#include "circw/error.hpp"
#include "circw/families.hpp"

namespace circw {

namespace {

// Trapezoid rule for a smooth 2pi-periodic integrand over [-pi, pi]; the
// node count doubles until successive estimates agree.
double periodic_integral(const std::function<double(double)>& g) {
  std::size_t nodes = 64;
  double h = kTwoPi / static_cast<double>(nodes);
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) sum += g(-kPi + h * static_cast<double>(k));
  double estimate = h * sum;
  while (nodes < (1u << 22)) {
    double extra = 0.0;
    for (std::size_t k = 0; k < nodes; ++k)
      extra += g(-kPi + h * (static_cast<double>(k) + 0.5));
    sum += extra;
    nodes *= 2;
    h *= 0.5;
    const double next = h * sum;
    const bool done = std::fabs(next - estimate) <= 1e-13 * std::max(1.0, std::fabs(next));
    estimate = next;
    if (done) return estimate;
  }
  throw NumericalError("Fisher quadrature did not converge");
}

FisherMatrix diagonal(double a, double b) {
  return FisherMatrix{2, {a, 0.0, 0.0, b}};
}

}  // namespace

FisherMatrix family_fisher(const FamilyParams& theta) {
  theta.validate();
  switch (theta.family) {
    case Family::VonMises: {
      const double k = theta.kappa;
      const auto r = bessel_ratios(k, 2);
      return diagonal(k * r[1], 0.5 + 0.5 * r[2] - r[1] * r[1]);
    }
    case Family::WrappedCauchy: {
      const double rho = theta.rho;
      const double gap = 1.0 - rho * rho;
      if (1.0 - rho < 1e-9)
        throw NumericalError("Fisher undefined/divergent at boundary (rho -> 1)");
      const double g2 = gap * gap;
      return diagonal(2.0 * rho * rho / g2, 2.0 / g2);
    }
    case Family::SineSkewedVonMises: {
      const double k = theta.kappa;
      const double l = theta.lambda;
      if (std::fabs(l) >= 1.0)
        throw NumericalError("Fisher undefined/divergent at boundary (|lambda| = 1)");
      const auto r = bessel_ratios(k, 2);
      // exp(kappa cos x) / (2 pi I_0(kappa)), scaled to avoid overflow.
      const double norm = 1.0 / (kTwoPi * bessel_i0_scaled(k));
      const auto weight = [k, norm](double x) {
        return std::exp(k * (std::cos(x) - 1.0)) * norm;
      };
      const double mu_mu =
          k * r[1] + l * periodic_integral([&](double x) {
            const double s = std::sin(x);
            return weight(x) * (l + s) / (1.0 + l * s);
          });
      const double mu_kappa = 0.5 * l * (r[2] - 1.0) + 0.0;  // no negative zero at lambda = 0
      const double mu_lambda = periodic_integral([&](double x) {
        return weight(x) * std::cos(x) / (1.0 + l * std::sin(x));
      });
      const double kappa_kappa = 0.5 + 0.5 * r[2] - r[1] * r[1];
      const double lambda_lambda = periodic_integral([&](double x) {
        const double s = std::sin(x);
        return weight(x) * s * s / (1.0 + l * s);
      });
      return FisherMatrix{3,
                          {mu_mu, mu_kappa, mu_lambda,
                           mu_kappa, kappa_kappa, 0.0,
                           mu_lambda, 0.0, lambda_lambda}};
    }
    case Family::Uniform:
      throw InvalidArgument("uniform: no free parameters, no Fisher matrix");
    case Family::ContaminatedVonMises:
      throw InvalidArgument("vm-contam: Fisher matrix not available");
  }
  throw InvalidArgument("unknown family");
}

}  // namespace circw
