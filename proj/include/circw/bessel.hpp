#pragma once

#include <cstddef>
#include <vector>

namespace circw {

/// Modified Bessel function of the first kind I_order(z), for 0 <= z <= 700.
double bessel_i(int order, double z);

/// exp(-z) I_0(z); finite for every z >= 0.
double bessel_i0_scaled(double z);

/// I_order(z) / I_0(z) for z >= 0. No overflow for any z.
double bessel_ratio(int order, double z);

/// Ratios I_j(z) / I_0(z) for j = 0..jmax (entry 0 is 1).
std::vector<double> bessel_ratios(double z, std::size_t jmax);

/// Mean resultant length of a von Mises law: A(kappa) = I_1(kappa)/I_0(kappa).
double bessel_a1(double kappa);

}  // namespace circw
