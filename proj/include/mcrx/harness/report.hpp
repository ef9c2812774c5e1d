#pragma once

#include "mcrx/signal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mcrx::harness {

/// Divides every value by reference_max (> 0); units become Dimensionless,
/// kind and provenance are kept.
TimeSeries normalize_series(const TimeSeries& series, double reference_max);

struct CurveComparison {
    double max_rel_error = 0.0;
    double median_rel_error = 0.0;
    double t_at_max = 0.0;
    std::size_t points = 0;
};

/// Relative error |a - b| / |b| over the points with t >= t_min. The two grids
/// must be identical; throws std::invalid_argument otherwise, or when no point
/// falls in range.
CurveComparison compare_curves(const TimeSeries& a, const TimeSeries& b, double t_min);

struct CurveMaximum {
    std::string curve;
    double value = 0.0;
    std::string units;
    double time = 0.0;
};

struct PairSummary {
    std::string curve;
    std::string reference;
    double t_min = 0.0;
    CurveComparison errors;
};

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Runtime {
    std::string task;
    double seconds = 0.0;
};

struct VerificationReport {
    std::string system;
    std::uint64_t seed = 0;
    std::size_t realizations = 0;
    bool total_time_derived = false;
    double total_time = 0.0;
    std::vector<CurveMaximum> maxima;      // normalization references, one per signal family
    std::vector<PairSummary> pairs;
    std::vector<CheckOutcome> checks;
    std::vector<Runtime> runtimes;
    std::vector<std::string> files;

    bool all_passed() const;
};

std::string format_text(const VerificationReport& report);
std::string format_json(const VerificationReport& report);

} // namespace mcrx::harness
