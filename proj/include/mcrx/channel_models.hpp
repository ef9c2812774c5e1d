#pragma once

// Closed-form expected receiver signals for an impulsive point release in an
// unbounded 1D or 3D medium.
//
// Every function takes t > 0 and throws std::domain_error otherwise. Passive
// counts assume the concentration is uniform across the receiver (d >> r_RX).

#include "mcrx/signal.hpp"
#include "mcrx/system_config.hpp"

#include <span>

namespace mcrx {

// 3D, spherical receiver.

/// Molecules absorbed by time t: (N r / d) erfc((d - r) / sqrt(4Dt)).
double cir_absorbing_3d(const SystemConfig& cfg, double t);
/// Point concentration at the receiver centre [mol/m^3].
double cir_passive_point_3d(const SystemConfig& cfg, double t);
/// Molecules inside the passive sphere: V_RX times the point concentration.
double cir_passive_3d(const SystemConfig& cfg, double t);
/// Time integral of cir_passive_3d from 0 to t [mol*s].
double ed_passive_3d(const SystemConfig& cfg, double t);
/// d/dt of cir_absorbing_3d [mol/s].
double rate_absorbing_3d(const SystemConfig& cfg, double t);

// 1D, receiver is the segment [d - r, d + r].

double cir_absorbing_1d(const SystemConfig& cfg, double t);
/// Point concentration [mol/m].
double cir_passive_point_1d(const SystemConfig& cfg, double t);
/// 2 r times the point concentration.
double cir_passive_1d(const SystemConfig& cfg, double t);
double ed_passive_1d(const SystemConfig& cfg, double t);
double rate_absorbing_1d(const SystemConfig& cfg, double t);

/// Dispatches on family and cfg.dimension.
double evaluate(const SystemConfig& cfg, SignalFamily family, double t);

/// Pointwise evaluation over a grid; provenance is always Analytical.
/// Throws std::invalid_argument for an empty or non-increasing grid, or when
/// kind.dimension disagrees with cfg.dimension.
TimeSeries evaluate_series(const SystemConfig& cfg, SignalKind kind, std::span<const double> grid);

/// Location of the maximum for the unimodal families (PassiveCir,
/// AbsorptionRate): d^2/(6D), d^2/(2D) or (d - r)^2/(6D).
double peak_time(const SystemConfig& cfg, SignalFamily family);

} // namespace mcrx
