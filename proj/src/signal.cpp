#include "mcrx/signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mcrx {

void SystemConfig::validate() const
{
    if (dimension != Dimension::One && dimension != Dimension::Three)
        throw std::invalid_argument("dimension must be 1 or 3");
    if (n_released < 1)
        throw std::invalid_argument("n_released must be >= 1");
    if (!(diff_coef > 0.0) || !std::isfinite(diff_coef))
        throw std::invalid_argument("diff_coef must be > 0");
    if (!(rx_radius > 0.0) || !std::isfinite(rx_radius))
        throw std::invalid_argument("rx_radius must be > 0");
    if (!(distance > rx_radius) || !std::isfinite(distance))
        throw std::invalid_argument("distance must exceed rx_radius (transmitter outside receiver)");
    if (!(sampling_period > 0.0) || !std::isfinite(sampling_period))
        throw std::invalid_argument("sampling_period must be > 0");
    if (sample_count < 1)
        throw std::invalid_argument("sample_count must be >= 1");
    if (realizations < 1)
        throw std::invalid_argument("realizations must be >= 1");
}

std::vector<double> SystemConfig::sample_times() const
{
    std::vector<double> t(sample_count);
    for (std::size_t m = 0; m < sample_count; ++m)
        t[m] = static_cast<double>(m + 1) * sampling_period;
    return t;
}

std::vector<double> SystemConfig::midpoint_times(std::size_t count) const
{
    std::vector<double> t(count);
    for (std::size_t m = 0; m < count; ++m)
        t[m] = (static_cast<double>(m + 1) + 0.5) * sampling_period;
    return t;
}

Units natural_units(SignalFamily family)
{
    switch (family) {
    case SignalFamily::PassiveCir:
    case SignalFamily::AbsorbingCir: return Units::Mol;
    case SignalFamily::PassiveEd: return Units::MolSeconds;
    case SignalFamily::AbsorptionRate: return Units::MolPerSecond;
    }
    throw std::invalid_argument("unknown signal family");
}

namespace {

constexpr std::array family_names{
    std::pair{SignalFamily::PassiveCir, std::string_view{"passive_cir"}},
    std::pair{SignalFamily::AbsorbingCir, std::string_view{"absorbing_cir"}},
    std::pair{SignalFamily::PassiveEd, std::string_view{"passive_ed"}},
    std::pair{SignalFamily::AbsorptionRate, std::string_view{"absorption_rate"}},
};

constexpr std::array provenance_names{
    std::pair{Provenance::Analytical, std::string_view{"analytical"}},
    std::pair{Provenance::Simulated, std::string_view{"simulated"}},
    std::pair{Provenance::Transformed, std::string_view{"transformed"}},
    std::pair{Provenance::AsymptoticTransformed, std::string_view{"asymptotic_transformed"}},
};

constexpr std::array unit_names{
    std::pair{Units::Mol, std::string_view{"mol"}},
    std::pair{Units::MolSeconds, std::string_view{"mol*s"}},
    std::pair{Units::MolPerSecond, std::string_view{"mol/s"}},
    std::pair{Units::MolPerCubicMetre, std::string_view{"mol/m^3"}},
    std::pair{Units::MolPerMetre, std::string_view{"mol/m"}},
    std::pair{Units::Dimensionless, std::string_view{"1"}},
};

template <typename Table, typename E>
std::string_view name_of(const Table& table, E value)
{
    for (const auto& [v, name] : table)
        if (v == value) return name;
    throw std::invalid_argument("enum value without a name");
}

template <typename Table>
auto value_of(const Table& table, std::string_view name, const char* what)
{
    for (const auto& [v, n] : table)
        if (n == name) return v;
    throw std::invalid_argument(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

} // namespace

std::string_view to_string(SignalFamily family) { return name_of(family_names, family); }
std::string_view to_string(Provenance provenance) { return name_of(provenance_names, provenance); }
std::string_view to_string(Units units) { return name_of(unit_names, units); }
std::string_view to_string(Dimension dimension) { return dimension == Dimension::One ? "1d" : "3d"; }

SignalFamily parse_family(std::string_view name) { return value_of(family_names, name, "signal kind"); }
Provenance parse_provenance(std::string_view name) { return value_of(provenance_names, name, "provenance"); }
Units parse_units(std::string_view name) { return value_of(unit_names, name, "units"); }

void validate_time_grid(std::span<const double> times)
{
    if (times.empty())
        throw std::invalid_argument("time grid is empty");
    double prev = 0.0;
    for (double t : times) {
        if (!std::isfinite(t) || !(t > prev))
            throw std::invalid_argument("time grid must be positive and strictly increasing");
        prev = t;
    }
}

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values, SignalKind kind, Units units)
    : times_(std::move(times)), values_(std::move(values)), kind_(kind), units_(units)
{
    validate_time_grid(times_);
    if (times_.size() != values_.size())
        throw std::invalid_argument("time series: times and values differ in length");
    if (units_ != Units::Dimensionless && units_ != natural_units(kind_.family))
        throw std::invalid_argument("time series: units do not match signal kind");
}

double TimeSeries::max_value() const
{
    return *std::max_element(values_.begin(), values_.end());
}

TimeSeries TimeSeries::prefix(std::size_t count) const
{
    if (count == 0 || count > size())
        throw std::invalid_argument("time series prefix: bad length");
    return TimeSeries({times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(count)},
                      {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)},
                      kind_, units_);
}

} // namespace mcrx
