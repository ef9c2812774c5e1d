#pragma once

// Brownian-dynamics Monte Carlo for passive and perfectly absorbing receivers.
//
// Molecules start at the origin at t = 0 and diffuse freely in an unbounded
// medium; the receiver is centred at (d, 0, 0) (3D) or d (1D) and is a closed
// set. An absorbing receiver removes a molecule when the straight segment of
// one simulation step touches it.
//
// Two stepping modes produce the same distribution of counts:
//  - Fine: every molecule takes every dt_sim step (diffuse_step +
//    absorb_crossing over a ParticleState).
//  - Adaptive: each molecule is walked on its own. While it is far from the
//    receiver, consecutive steps are merged into one Gaussian jump; a merge is
//    only taken when the chance that any merged step reaches the receiver is
//    below 3e-15 (see far_field_sigmas). Near the
//    receiver it falls back to single dt_sim steps with the segment test.
//    Passive counts only depend on positions at sampling instants, so the
//    passive walk moves a whole sampling interval per draw.

#include "mcrx/detectors.hpp"
#include "mcrx/signal.hpp"
#include "mcrx/system_config.hpp"

#include <cstdint>
#include <boost/random/mersenne_twister.hpp>
#include <span>
#include <vector>

namespace mcrx {

enum class RxModel { Passive, Absorbing };
enum class StepMode { Fine, Adaptive };

/// Clearance, in per-axis standard deviations of the merged jump, required
/// before steps are merged: 2 P(chi_1 >= 8) = 2.5e-15, 2 P(chi_3 >= 8.5) = 2.8e-15.
constexpr double far_field_sigmas(int dims) { return dims == 1 ? 8.0 : 8.5; }

struct SimConfig {
    SystemConfig system;
    RxModel rx_model = RxModel::Passive;
    std::uint64_t seed = 0;
    double sim_time_step = 0.0;
    StepMode stepping = StepMode::Adaptive;

    /// Throws std::invalid_argument; sampling_period must be an integer
    /// multiple (>= 1) of sim_time_step.
    void validate() const;
    std::size_t steps_per_sample() const;
};

using Rng = boost::random::mt19937_64;

/// Positions (dims coordinates per molecule, flattened) and alive flags.
struct ParticleState {
    ParticleState(Dimension dimension, std::size_t count);

    int dims;
    std::vector<double> coords;
    std::vector<std::uint8_t> alive;
    std::uint64_t absorbed = 0;

    std::size_t size() const { return alive.size(); }
    std::span<const double> position(std::size_t i) const;
    std::uint64_t live_count() const { return size() - absorbed; }
};

/// Adds an independent N(0, 2 D dt_sim) draw to every coordinate of every live
/// molecule. Dead molecules neither move nor consume random numbers.
void diffuse_step(ParticleState& state, const SimConfig& cfg, Rng& rng);

/// Molecules with |x - c| <= r_RX.
std::uint64_t count_passive(const ParticleState& state, const SimConfig& cfg);

/// True if the segment p0 -> p1 touches the closed receiver.
bool segment_hits_receiver(std::span<const double> p0, std::span<const double> p1, const SystemConfig& system);

/// Marks live molecules whose step from prev_coords to their current position
/// touched the receiver as dead; returns how many were newly absorbed.
std::uint64_t absorb_crossing(std::span<const double> prev_coords, ParticleState& state, const SimConfig& cfg);

/// One realization: M counts, instantaneous (passive) or cumulative absorbed
/// (absorbing). Deterministic in realization_seed.
std::vector<std::uint32_t> run_realization(const SimConfig& cfg, std::uint64_t realization_seed);

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of realization `index`: splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index);

struct EnsembleResult {
    std::vector<double> sample_times;
    std::vector<double> mean_counts;
    std::vector<double> variance;       // unbiased; 0 for a single realization
    std::vector<double> ci_halfwidth;   // 1.96 sqrt(variance / R)
    std::size_t realization_count = 0;
    std::uint64_t seed = 0;
    RxModel rx_model = RxModel::Passive;
    Dimension dimension = Dimension::Three;
    double sampling_period = 0.0;
    double elapsed_seconds = 0.0;
};

/// Runs cfg.system.realizations realizations on `threads` workers (0 = one
/// per hardware thread). Results do not depend on the thread count.
EnsembleResult run_ensemble(const SimConfig& cfg, unsigned threads = 0);

SampledObservation to_observation(const EnsembleResult& result);
/// Mean counts as a Simulated PassiveCir or AbsorbingCir series.
TimeSeries to_series(const EnsembleResult& result);

} // namespace mcrx
