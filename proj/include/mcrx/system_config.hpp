#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mcrx {

enum class Dimension : int { One = 1, Three = 3 };

/// Physical scenario plus receiver sampling.
///
/// The transmitter is a point at the origin; the receiver (a sphere in 3D, a
/// segment of length 2 * rx_radius in 1D) is centred at `distance` along the
/// first axis. Samples are taken at t_m = m * sampling_period, m = 1..M.
struct SystemConfig {
    Dimension dimension = Dimension::Three;
    std::uint64_t n_released = 0;   // N [mol]
    double diff_coef = 0.0;         // D [m^2/s]
    double distance = 0.0;          // d [m]
    double rx_radius = 0.0;         // r_RX [m]
    double sampling_period = 0.0;   // dt_M [s]
    std::size_t sample_count = 0;   // M
    std::size_t realizations = 1;

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;

    double total_time() const { return static_cast<double>(sample_count) * sampling_period; }
    double n() const { return static_cast<double>(n_released); }
    int dims() const { return static_cast<int>(dimension); }

    /// t_m = m * dt_M for m = 1..M.
    std::vector<double> sample_times() const;
    /// t_m + dt_M / 2 for m = 1..count, the detector output instants.
    std::vector<double> midpoint_times(std::size_t count) const;
};

} // namespace mcrx
