#include "mcrx/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mcrx {

namespace {

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string(what) + ": argument must be finite");
}

void check_factor_domain(double t, double distance, double rx_radius, double diff_coef)
{
    if (!(t > 0.0))
        throw std::domain_error("a_factor: t must be > 0 (A diverges as t -> 0)");
    if (!(diff_coef > 0.0))
        throw std::domain_error("a_factor: diffusion coefficient must be > 0");
    if (!(rx_radius > 0.0 && rx_radius < distance))
        throw std::domain_error("a_factor: requires 0 < rx_radius < distance");
}

} // namespace

double erf_exact(double x)
{
    require_finite(x, "erf_exact");
    return std::erf(x);
}

double erfc_exact(double x)
{
    require_finite(x, "erfc_exact");
    return std::erfc(x);
}

double erfc_lether(double x)
{
    require_finite(x, "erfc_lether");
    if (x < 0.0)
        throw std::domain_error("erfc_lether: defined only for x >= 0");
    return std::exp(-(16.0 / 23.0) * x * x - 2.0 * std::numbers::inv_sqrtpi * x);
}

double a_factor(double t, double distance, double rx_radius, double diff_coef)
{
    check_factor_domain(t, distance, rx_radius, diff_coef);
    const double root_dt = std::sqrt(diff_coef * t);
    const double exponent = (rx_radius / root_dt)
        * (4.0 * (2.0 * distance - rx_radius) / (23.0 * root_dt) + std::numbers::inv_sqrtpi);
    return std::exp(exponent);
}

double erfc_factorized(double t, double distance, double rx_radius, double diff_coef)
{
    const double a = a_factor(t, distance, rx_radius, diff_coef);
    return erfc_exact(distance / std::sqrt(4.0 * diff_coef * t)) * a;
}

} // namespace mcrx
