#include "mcrx/channel_models.hpp"
#include "mcrx/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcrx {

namespace {

using std::numbers::pi;

void require_positive_time(double t, const char* what)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error(std::string(what) + ": requires finite t > 0");
}

double sphere_volume(double r) { return 4.0 / 3.0 * pi * r * r * r; }

} // namespace

double cir_absorbing_3d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "cir_absorbing_3d");
    const double gap = cfg.distance - cfg.rx_radius;
    return cfg.n() * cfg.rx_radius / cfg.distance * erfc_exact(gap / std::sqrt(4.0 * cfg.diff_coef * t));
}

double cir_passive_point_3d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "cir_passive_point_3d");
    const double four_dt = 4.0 * cfg.diff_coef * t;
    return cfg.n() / std::pow(pi * four_dt, 1.5) * std::exp(-cfg.distance * cfg.distance / four_dt);
}

double cir_passive_3d(const SystemConfig& cfg, double t)
{
    return sphere_volume(cfg.rx_radius) * cir_passive_point_3d(cfg, t);
}

double ed_passive_3d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "ed_passive_3d");
    const double prefactor = cfg.n() * sphere_volume(cfg.rx_radius) / (4.0 * pi * cfg.diff_coef * cfg.distance);
    return prefactor * erfc_exact(cfg.distance / std::sqrt(4.0 * cfg.diff_coef * t));
}

double rate_absorbing_3d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "rate_absorbing_3d");
    const double gap = cfg.distance - cfg.rx_radius;
    const double four_dt = 4.0 * cfg.diff_coef * t;
    return cfg.n() * cfg.rx_radius * gap / (cfg.distance * std::sqrt(pi * four_dt * t * t))
        * std::exp(-gap * gap / four_dt);
}

double cir_absorbing_1d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "cir_absorbing_1d");
    const double gap = cfg.distance - cfg.rx_radius;
    return cfg.n() * erfc_exact(gap / std::sqrt(4.0 * cfg.diff_coef * t));
}

double cir_passive_point_1d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "cir_passive_point_1d");
    const double four_dt = 4.0 * cfg.diff_coef * t;
    return cfg.n() / std::sqrt(pi * four_dt) * std::exp(-cfg.distance * cfg.distance / four_dt);
}

double cir_passive_1d(const SystemConfig& cfg, double t)
{
    return 2.0 * cfg.rx_radius * cir_passive_point_1d(cfg, t);
}

double ed_passive_1d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "ed_passive_1d");
    const double d = cfg.distance;
    const double diff = cfg.diff_coef;
    const double four_dt = 4.0 * diff * t;
    const double bracket = std::sqrt(t / (pi * diff)) * std::exp(-d * d / four_dt)
        - d / (2.0 * diff) * erfc_exact(d / std::sqrt(four_dt));
    return 2.0 * cfg.rx_radius * cfg.n() * bracket;
}

double rate_absorbing_1d(const SystemConfig& cfg, double t)
{
    require_positive_time(t, "rate_absorbing_1d");
    const double gap = cfg.distance - cfg.rx_radius;
    const double four_dt = 4.0 * cfg.diff_coef * t;
    return cfg.n() * gap / std::sqrt(pi * four_dt * t * t) * std::exp(-gap * gap / four_dt);
}

double evaluate(const SystemConfig& cfg, SignalFamily family, double t)
{
    const bool three = cfg.dimension == Dimension::Three;
    switch (family) {
    case SignalFamily::PassiveCir: return three ? cir_passive_3d(cfg, t) : cir_passive_1d(cfg, t);
    case SignalFamily::AbsorbingCir: return three ? cir_absorbing_3d(cfg, t) : cir_absorbing_1d(cfg, t);
    case SignalFamily::PassiveEd: return three ? ed_passive_3d(cfg, t) : ed_passive_1d(cfg, t);
    case SignalFamily::AbsorptionRate: return three ? rate_absorbing_3d(cfg, t) : rate_absorbing_1d(cfg, t);
    }
    throw std::invalid_argument("evaluate: unknown signal family");
}

TimeSeries evaluate_series(const SystemConfig& cfg, SignalKind kind, std::span<const double> grid)
{
    validate_time_grid(grid);
    if (kind.dimension != cfg.dimension)
        throw std::invalid_argument("evaluate_series: kind dimension differs from system dimension");
    kind.provenance = Provenance::Analytical;
    std::vector<double> values;
    values.reserve(grid.size());
    for (double t : grid)
        values.push_back(evaluate(cfg, kind.family, t));
    return TimeSeries({grid.begin(), grid.end()}, std::move(values), kind);
}

double peak_time(const SystemConfig& cfg, SignalFamily family)
{
    const double d = cfg.distance;
    switch (family) {
    case SignalFamily::PassiveCir:
        return cfg.dimension == Dimension::Three ? d * d / (6.0 * cfg.diff_coef) : d * d / (2.0 * cfg.diff_coef);
    case SignalFamily::AbsorptionRate: {
        const double gap = d - cfg.rx_radius;
        return gap * gap / (6.0 * cfg.diff_coef);
    }
    default:
        throw std::invalid_argument("peak_time: family is monotone, no interior peak");
    }
}

} // namespace mcrx
