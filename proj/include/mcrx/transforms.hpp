#pragma once

// Maps between passive-receiver and absorbing-receiver signals.
//
//   SPrime:       passive ED       <-> absorbing CIR    (approximate, via A(t))
//   SDoublePrime: passive CIR      <-> absorption rate  (exact identity)
//
// Forward goes passive -> absorbing. Every map is affine in the signal value
// with nonzero slope at any t > 0, so the inverse is the algebraic inversion
// of the forward map.

#include "mcrx/signal.hpp"
#include "mcrx/system_config.hpp"

namespace mcrx {

enum class TransformFamily { SPrime, SDoublePrime };
enum class TransformVariant { Full, Asymptotic };
enum class TransformDirection { Forward, Inverse };

struct TransformSpec {
    TransformFamily family = TransformFamily::SPrime;
    Dimension dimension = Dimension::Three;
    TransformVariant variant = TransformVariant::Full;
    TransformDirection direction = TransformDirection::Forward;

    /// Signal family consumed by this spec (direction included).
    SignalFamily input_family() const;
    SignalFamily output_family() const;
    TransformSpec inverted() const;

    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

// 3D forward maps.
double s_prime_3d(double ed_value, double t, const SystemConfig& cfg);
double s_prime_3d_asym(double ed_value, const SystemConfig& cfg);
double s_dprime_3d(double passive_cir_value, double t, const SystemConfig& cfg);
double s_dprime_3d_asym(double passive_cir_value, const SystemConfig& cfg);

// 1D forward maps. The S' pair is affine: it needs N and t, not only the ED.
double s_prime_1d(double ed_value, double t, const SystemConfig& cfg);
double s_prime_1d_asym(double ed_value, double t, const SystemConfig& cfg);
double s_dprime_1d(double passive_cir_value, double t, const SystemConfig& cfg);
double s_dprime_1d_asym(double passive_cir_value, double t, const SystemConfig& cfg);

/// y = slope * x + offset, the forward map at a fixed t.
struct AffineMap {
    double slope = 1.0;
    double offset = 0.0;
};

/// Forward coefficients for spec (its direction is ignored).
AffineMap forward_map(const TransformSpec& spec, double t, const SystemConfig& cfg);

/// Evaluate the forward map named by spec (direction ignored).
double apply_forward(const TransformSpec& spec, double value, double t, const SystemConfig& cfg);
/// Exact inverse of apply_forward at the same t.
double apply_inverse(const TransformSpec& spec, double value, double t, const SystemConfig& cfg);
/// apply_forward or apply_inverse according to spec.direction.
double apply(const TransformSpec& spec, double value, double t, const SystemConfig& cfg);

/// Pointwise transform of a whole series. The input family must equal
/// spec.input_family() and its dimension must match; the output carries
/// spec.output_family() and provenance Transformed or AsymptoticTransformed.
TimeSeries transform_series(const TransformSpec& spec, const TimeSeries& input, const SystemConfig& cfg);

} // namespace mcrx
