#pragma once

// Discrete integrator and differentiator for uniformly sampled receiver
// observations. Outputs are placed at the interval midpoints t_m + dt_M / 2.

#include "mcrx/signal.hpp"

#include <span>
#include <vector>

namespace mcrx {

/// Receiver samples N(t_m) at t_m = m * sampling_period, m = 1..M.
struct SampledObservation {
    double sampling_period = 0.0;
    std::vector<double> counts;
    Dimension dimension = Dimension::Three;
    Provenance provenance = Provenance::Simulated;

    /// Throws std::invalid_argument for dt <= 0 or negative/non-finite counts.
    void validate() const;
    std::vector<double> sample_times() const;
};

using WeightVector = std::vector<double>;

/// sum_m w_m N(t_m). Lengths must agree.
double weighted_sum(const SampledObservation& obs, std::span<const double> weights);

/// Equal-weight detector (w_m = 1). Not scaled by dt_M, so it is not an
/// energy measure.
double equal_weight_sum(const SampledObservation& obs);

/// ED(t_m + dt/2) = dt * sum_{l <= m} N(t_l), m = 1..M.
TimeSeries energy_detector(const SampledObservation& obs);

/// (N(t_{m+1}) - N(t_m)) / dt at t_m + dt/2, m = 1..M-1. Needs >= 2
/// samples. Negative differences are kept as they are.
TimeSeries absorption_rate_detector(const SampledObservation& obs);

} // namespace mcrx
