#include "circw/bessel.hpp"

#include <cmath>
#include <numbers>

#include "circw/error.hpp"

namespace circw {

namespace {

constexpr double kSeriesLimit = 20.0;

double i0_series(double z) {
  const double q = 0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 1000; ++m) {
    term *= q / (static_cast<double>(m) * m);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Hankel expansion of exp(-z) I_0(z); every term is positive for order 0.
double i0_scaled_asymptotic(double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd / (8.0 * z * k);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

// Backward recurrence on t_j = I_j / I_{j-1} = 1 / (2j/z + t_{j+1}).
std::size_t recurrence_start(std::size_t jmax, double z) {
  return jmax + 60 + static_cast<std::size_t>(8.0 * std::sqrt(z));
}

}  // namespace

double bessel_i0_scaled(double z) {
  if (!(z >= 0.0)) throw InvalidArgument("bessel: argument must be >= 0");
  if (z <= kSeriesLimit) return i0_series(z) * std::exp(-z);
  return i0_scaled_asymptotic(z);
}

std::vector<double> bessel_ratios(double z, std::size_t jmax) {
  if (!(z >= 0.0)) throw InvalidArgument("bessel: argument must be >= 0");
  std::vector<double> r(jmax + 1, 0.0);
  r[0] = 1.0;
  if (jmax == 0 || z == 0.0) return r;
  const std::size_t start = recurrence_start(jmax, z);
  std::vector<double> t(jmax + 1, 0.0);
  double tj = 0.0;
  for (std::size_t j = start; j >= 1; --j) {
    tj = 1.0 / (2.0 * static_cast<double>(j) / z + tj);
    if (j <= jmax) t[j] = tj;
  }
  for (std::size_t j = 1; j <= jmax; ++j) r[j] = r[j - 1] * t[j];
  return r;
}

double bessel_ratio(int order, double z) {
  if (order < 0) throw InvalidArgument("bessel: order must be >= 0");
  return bessel_ratios(z, static_cast<std::size_t>(order))[order];
}

double bessel_a1(double kappa) {
  if (!(kappa >= 0.0)) throw InvalidArgument("bessel: argument must be >= 0");
  if (kappa > 1e6) {
    const double inv = 1.0 / kappa;
    return 1.0 - inv * (0.5 + inv * (0.125 + inv * 0.125));
  }
  return bessel_ratio(1, kappa);
}

double bessel_i(int order, double z) {
  if (order < 0) throw InvalidArgument("bessel: order must be >= 0");
  if (!(z >= 0.0) || z > 700.0)
    throw InvalidArgument("bessel: argument out of range [0, 700]");
  if (z == 0.0) return order == 0 ? 1.0 : 0.0;
  const double i0 = z <= kSeriesLimit ? i0_series(z)
                                      : i0_scaled_asymptotic(z) * std::exp(z);
  if (order == 0) return i0;
  return i0 * bessel_ratio(order, z);
}

}  // namespace circw
