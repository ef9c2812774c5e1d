#include "mcrx/transforms.hpp"
#include "mcrx/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcrx {

namespace {

using std::numbers::pi;

void require_time(double t, const char* what)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error(std::string(what) + ": requires finite t > 0");
}

void require_dimension(const SystemConfig& cfg, Dimension dim, const char* what)
{
    if (cfg.dimension != dim)
        throw std::invalid_argument(std::string(what) + ": system dimension mismatch");
}

double a_of(const SystemConfig& cfg, double t)
{
    return a_factor(t, cfg.distance, cfg.rx_radius, cfg.diff_coef);
}

// exp(r (2d - r) / (4 D t)): ratio of the passive and absorbing Gaussian tails.
double tail_ratio(const SystemConfig& cfg, double t)
{
    const double r = cfg.rx_radius;
    return std::exp(r * (2.0 * cfg.distance - r) / (4.0 * cfg.diff_coef * t));
}

// 3D constant factors.
double sprime_3d_factor(const SystemConfig& cfg)
{
    return 3.0 * cfg.diff_coef / (cfg.rx_radius * cfg.rx_radius);
}

double sdprime_3d_factor(const SystemConfig& cfg)
{
    const double r = cfg.rx_radius;
    return 3.0 * cfg.diff_coef * (cfg.distance - r) / (r * r * cfg.distance);
}

double sdprime_1d_factor(const SystemConfig& cfg, double t)
{
    return (cfg.distance - cfg.rx_radius) / (2.0 * cfg.rx_radius * t);
}

// N sqrt(t / (pi D)), optionally times exp(-d^2 / (4Dt)).
double sprime_1d_source(const SystemConfig& cfg, double t, bool with_tail)
{
    const double base = cfg.n() * std::sqrt(t / (pi * cfg.diff_coef));
    if (!with_tail) return base;
    const double d = cfg.distance;
    return base * std::exp(-d * d / (4.0 * cfg.diff_coef * t));
}

} // namespace

SignalFamily TransformSpec::input_family() const
{
    const bool fwd = direction == TransformDirection::Forward;
    if (family == TransformFamily::SPrime)
        return fwd ? SignalFamily::PassiveEd : SignalFamily::AbsorbingCir;
    return fwd ? SignalFamily::PassiveCir : SignalFamily::AbsorptionRate;
}

SignalFamily TransformSpec::output_family() const
{
    return inverted().input_family();
}

TransformSpec TransformSpec::inverted() const
{
    TransformSpec out = *this;
    out.direction = direction == TransformDirection::Forward ? TransformDirection::Inverse
                                                             : TransformDirection::Forward;
    return out;
}

double s_prime_3d(double ed_value, double t, const SystemConfig& cfg)
{
    require_time(t, "s_prime_3d");
    return sprime_3d_factor(cfg) * a_of(cfg, t) * ed_value;
}

double s_prime_3d_asym(double ed_value, const SystemConfig& cfg)
{
    return sprime_3d_factor(cfg) * ed_value;
}

double s_dprime_3d(double passive_cir_value, double t, const SystemConfig& cfg)
{
    require_time(t, "s_dprime_3d");
    return sdprime_3d_factor(cfg) * passive_cir_value * tail_ratio(cfg, t);
}

double s_dprime_3d_asym(double passive_cir_value, const SystemConfig& cfg)
{
    return sdprime_3d_factor(cfg) * passive_cir_value;
}

double s_prime_1d(double ed_value, double t, const SystemConfig& cfg)
{
    require_time(t, "s_prime_1d");
    const double scale = 2.0 * cfg.diff_coef * a_of(cfg, t) / cfg.distance;
    return scale * (sprime_1d_source(cfg, t, true) - ed_value / (2.0 * cfg.rx_radius));
}

double s_prime_1d_asym(double ed_value, double t, const SystemConfig& cfg)
{
    require_time(t, "s_prime_1d_asym");
    const double scale = 2.0 * cfg.diff_coef / cfg.distance;
    return scale * (sprime_1d_source(cfg, t, false) - ed_value / (2.0 * cfg.rx_radius));
}

double s_dprime_1d(double passive_cir_value, double t, const SystemConfig& cfg)
{
    require_time(t, "s_dprime_1d");
    return sdprime_1d_factor(cfg, t) * passive_cir_value * tail_ratio(cfg, t);
}

double s_dprime_1d_asym(double passive_cir_value, double t, const SystemConfig& cfg)
{
    require_time(t, "s_dprime_1d_asym");
    return sdprime_1d_factor(cfg, t) * passive_cir_value;
}

AffineMap forward_map(const TransformSpec& spec, double t, const SystemConfig& cfg)
{
    require_time(t, "forward_map");
    require_dimension(cfg, spec.dimension, "forward_map");
    const bool full = spec.variant == TransformVariant::Full;
    if (spec.dimension == Dimension::Three) {
        if (spec.family == TransformFamily::SPrime)
            return {sprime_3d_factor(cfg) * (full ? a_of(cfg, t) : 1.0), 0.0};
        return {sdprime_3d_factor(cfg) * (full ? tail_ratio(cfg, t) : 1.0), 0.0};
    }
    if (spec.family == TransformFamily::SPrime) {
        const double scale = 2.0 * cfg.diff_coef * (full ? a_of(cfg, t) : 1.0) / cfg.distance;
        return {-scale / (2.0 * cfg.rx_radius), scale * sprime_1d_source(cfg, t, full)};
    }
    return {sdprime_1d_factor(cfg, t) * (full ? tail_ratio(cfg, t) : 1.0), 0.0};
}

double apply_forward(const TransformSpec& spec, double value, double t, const SystemConfig& cfg)
{
    require_dimension(cfg, spec.dimension, "apply_forward");
    const bool full = spec.variant == TransformVariant::Full;
    if (spec.dimension == Dimension::Three) {
        require_time(t, "apply_forward");
        if (spec.family == TransformFamily::SPrime)
            return full ? s_prime_3d(value, t, cfg) : s_prime_3d_asym(value, cfg);
        return full ? s_dprime_3d(value, t, cfg) : s_dprime_3d_asym(value, cfg);
    }
    if (spec.family == TransformFamily::SPrime)
        return full ? s_prime_1d(value, t, cfg) : s_prime_1d_asym(value, t, cfg);
    return full ? s_dprime_1d(value, t, cfg) : s_dprime_1d_asym(value, t, cfg);
}

double apply_inverse(const TransformSpec& spec, double value, double t, const SystemConfig& cfg)
{
    if (spec.dimension == Dimension::One && spec.family == TransformFamily::SPrime) {
        require_time(t, "apply_inverse");
        require_dimension(cfg, spec.dimension, "apply_inverse");
        // x = 2r (source - y d / (2 D A)); same grouping as the forward map.
        const bool full = spec.variant == TransformVariant::Full;
        const double scale = 2.0 * cfg.diff_coef * (full ? a_of(cfg, t) : 1.0) / cfg.distance;
        return 2.0 * cfg.rx_radius * (sprime_1d_source(cfg, t, full) - value / scale);
    }
    const AffineMap map = forward_map(spec, t, cfg);
    return (value - map.offset) / map.slope;
}

double apply(const TransformSpec& spec, double value, double t, const SystemConfig& cfg)
{
    return spec.direction == TransformDirection::Forward ? apply_forward(spec, value, t, cfg)
                                                         : apply_inverse(spec, value, t, cfg);
}

TimeSeries transform_series(const TransformSpec& spec, const TimeSeries& input, const SystemConfig& cfg)
{
    const SignalKind& in = input.kind();
    if (in.family != spec.input_family())
        throw std::invalid_argument("transform_series: input signal kind '" + std::string(to_string(in.family))
                                    + "' does not match transform input '"
                                    + std::string(to_string(spec.input_family())) + "'");
    if (in.dimension != spec.dimension)
        throw std::invalid_argument("transform_series: input dimension does not match transform");
    if (input.units() != natural_units(in.family))
        throw std::invalid_argument("transform_series: input must be in natural (unnormalized) units");

    std::vector<double> out;
    out.reserve(input.size());
    const auto times = input.times();
    const auto values = input.values();
    for (std::size_t i = 0; i < input.size(); ++i)
        out.push_back(apply(spec, values[i], times[i], cfg));

    SignalKind kind{spec.output_family(), spec.dimension,
                    spec.variant == TransformVariant::Full ? Provenance::Transformed
                                                           : Provenance::AsymptoticTransformed};
    return TimeSeries({times.begin(), times.end()}, std::move(out), kind);
}

} // namespace mcrx
