#pragma once

#include "mcrx/system_config.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mcrx {

enum class SignalFamily { PassiveCir, AbsorbingCir, PassiveEd, AbsorptionRate };

enum class Provenance { Analytical, Simulated, Transformed, AsymptoticTransformed };

enum class Units { Mol, MolSeconds, MolPerSecond, MolPerCubicMetre, MolPerMetre, Dimensionless };

struct SignalKind {
    SignalFamily family = SignalFamily::PassiveCir;
    Dimension dimension = Dimension::Three;
    Provenance provenance = Provenance::Analytical;

    friend bool operator==(const SignalKind&, const SignalKind&) = default;
};

/// Natural units of a signal family (mol, mol*s or mol/s).
Units natural_units(SignalFamily family);

std::string_view to_string(SignalFamily family);
std::string_view to_string(Provenance provenance);
std::string_view to_string(Units units);
std::string_view to_string(Dimension dimension);

// Inverse lookups; throw std::invalid_argument on unknown names.
SignalFamily parse_family(std::string_view name);
Provenance parse_provenance(std::string_view name);
Units parse_units(std::string_view name);

/// A sampled signal. Times are strictly increasing and positive; units are
/// either the family's natural units or Dimensionless (after normalization).
class TimeSeries {
public:
    TimeSeries(std::vector<double> times, std::vector<double> values, SignalKind kind, Units units);
    TimeSeries(std::vector<double> times, std::vector<double> values, SignalKind kind)
        : TimeSeries(std::move(times), std::move(values), kind, natural_units(kind.family)) {}

    std::span<const double> times() const { return times_; }
    std::span<const double> values() const { return values_; }
    const SignalKind& kind() const { return kind_; }
    Units units() const { return units_; }
    std::size_t size() const { return times_.size(); }

    double max_value() const;

    /// First `count` points, same kind and units.
    TimeSeries prefix(std::size_t count) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> times_;
    std::vector<double> values_;
    SignalKind kind_;
    Units units_;
};

/// Throws std::invalid_argument unless the grid is nonempty, finite, positive
/// and strictly increasing.
void validate_time_grid(std::span<const double> times);

} // namespace mcrx
