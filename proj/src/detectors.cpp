#include "mcrx/detectors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mcrx {

void SampledObservation::validate() const
{
    if (!(sampling_period > 0.0) || !std::isfinite(sampling_period))
        throw std::invalid_argument("observation: sampling period must be > 0");
    for (double c : counts)
        if (!std::isfinite(c) || c < 0.0)
            throw std::invalid_argument("observation: counts must be finite and >= 0");
}

std::vector<double> SampledObservation::sample_times() const
{
    std::vector<double> t(counts.size());
    for (std::size_t m = 0; m < counts.size(); ++m)
        t[m] = static_cast<double>(m + 1) * sampling_period;
    return t;
}

double weighted_sum(const SampledObservation& obs, std::span<const double> weights)
{
    if (weights.size() != obs.counts.size())
        throw std::invalid_argument("weighted_sum: " + std::to_string(weights.size()) + " weights for "
                                    + std::to_string(obs.counts.size()) + " samples");
    double sum = 0.0;
    for (std::size_t m = 0; m < weights.size(); ++m)
        sum += weights[m] * obs.counts[m];
    return sum;
}

double equal_weight_sum(const SampledObservation& obs)
{
    const WeightVector ones(obs.counts.size(), 1.0);
    return weighted_sum(obs, ones);
}

TimeSeries energy_detector(const SampledObservation& obs)
{
    obs.validate();
    if (obs.counts.empty())
        throw std::invalid_argument("energy_detector: empty observation");
    const double dt = obs.sampling_period;
    std::vector<double> times(obs.counts.size());
    std::vector<double> values(obs.counts.size());
    double running = 0.0;
    for (std::size_t m = 0; m < obs.counts.size(); ++m) {
        running += obs.counts[m];
        times[m] = (static_cast<double>(m + 1) + 0.5) * dt;
        values[m] = dt * running;
    }
    return TimeSeries(std::move(times), std::move(values),
                      {SignalFamily::PassiveEd, obs.dimension, obs.provenance});
}

TimeSeries absorption_rate_detector(const SampledObservation& obs)
{
    obs.validate();
    if (obs.counts.size() < 2)
        throw std::invalid_argument("absorption_rate_detector: needs at least 2 samples");
    const double dt = obs.sampling_period;
    const std::size_t out = obs.counts.size() - 1;
    std::vector<double> times(out);
    std::vector<double> values(out);
    for (std::size_t m = 0; m < out; ++m) {
        times[m] = (static_cast<double>(m + 1) + 0.5) * dt;
        values[m] = (obs.counts[m + 1] - obs.counts[m]) / dt;
    }
    return TimeSeries(std::move(times), std::move(values),
                      {SignalFamily::AbsorptionRate, obs.dimension, obs.provenance});
}

} // namespace mcrx
