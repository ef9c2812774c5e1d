#pragma once

// Error functions and the erfc factorization used by the receiver transforms.

namespace mcrx {

/// erf(x) to double precision. Throws std::invalid_argument on NaN/inf.
double erf_exact(double x);

/// erfc(x) to double precision, without the cancellation of 1 - erf(x).
double erfc_exact(double x);

/// Lether's elementary approximation erfc(x) ~ exp(-(16/23)x^2 - (2/sqrt(pi))x).
///
/// Defined for x >= 0 only; negative arguments throw std::domain_error. The
/// induced erf = 1 - erfc_lether(x) is within 1% relative of erf(x) on
/// [0, 2.5]; outside that interval no accuracy is promised.
double erfc_lether(double x);

/// Factor A(t) that separates the receiver radius out of the absorbing-CIR
/// erfc argument:
///
///   erfc((d - r) / sqrt(4Dt)) ~ erfc(d / sqrt(4Dt)) * A(t)
///
/// with A(t) = exp( r/sqrt(Dt) * (4(2d - r)/(23 sqrt(Dt)) + 1/sqrt(pi)) ).
/// A(t) >= 1, decreasing in t, and tends to 1 as t grows.
double a_factor(double t, double distance, double rx_radius, double diff_coef);

/// erfc(d / sqrt(4Dt)) * A(t): the factorized stand-in for
/// erfc((d - r) / sqrt(4Dt)). Poor when t is very small.
double erfc_factorized(double t, double distance, double rx_radius, double diff_coef);

} // namespace mcrx
