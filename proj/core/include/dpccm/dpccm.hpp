// SPDX-License-Identifier: Apache-2.0
//
// Chaotic oscillator (two feedback-connected map applications per iteration)
// and the dynamic parameter-controlled cascade: a seed oscillator whose
// output, after an affine transform, is the control voltage of a second
// (controlled) oscillator at every iteration.
#pragma once

#include <cstdint>

#include "dpccm/map.hpp"

namespace dpccm {

struct OscillatorState {
    Voltage x = 0.0;  // held state, fed into the first map
    Voltage c = 0.0;  // control voltage shared by both maps
    std::uint64_t iteration = 0;

    friend bool operator==(const OscillatorState&, const OscillatorState&) = default;
};

struct OscillatorStep {
    Voltage v1;  // first map output
    Voltage v2;  // second map output, becomes the next state
    OscillatorState next;
};

/// v1 = f(x; c), v2 = f(v1; c).
OscillatorStep oscillator_step(const MapConfig& cfg, const OscillatorState& s);

/// Affine control transform
///   V_control = (b_max - b_min) / (a_max - a_min) * (a_max - V_seed) + b_min
/// mapping the seed span [a_min, a_max] onto [b_min, b_max], reversed.
struct LinearTransform {
    Voltage a_min = 0.0;
    Voltage a_max = kDefaultVdd;
    Voltage b_min = 0.0;
    Voltage b_max = kDefaultVdd;

    void validate() const;

    friend bool operator==(const LinearTransform&, const LinearTransform&) = default;
};

/// Seed values outside [a_min, a_max] are clamped first, so the result never
/// leaves [b_min, b_max].
Voltage transform_eval(const LinearTransform& t, Voltage v_seed);

/// Start voltage used by calibration and the analysis defaults.
inline constexpr double kDefaultStartFraction = 0.37;
inline constexpr std::uint64_t kDefaultTransient = 1000;
inline constexpr std::uint64_t kMinCalibrationIterations = 10'000;
inline constexpr Voltage kCalibrationMargin = 1e-9;
inline constexpr Voltage kMinCalibrationSpan = 1e-6;

/// Runs the seed oscillator for transient + n iterations and spans the
/// transform over the observed post-transient outputs (widened by 1 nV on
/// each side). Throws CalibrationError when the orbit is narrower than 1 uV.
LinearTransform calibrate_transform(const MapConfig& cfg, Voltage c_seed, Voltage b_min, Voltage b_max,
                                    std::uint64_t n = 100'000, std::uint64_t transient = kDefaultTransient);

struct DpccmState {
    OscillatorState seed;
    OscillatorState controlled;
    LinearTransform transform;

    /// Seed and controlled oscillators start at the same voltage x0; the
    /// controlled map's initial control is the transform of x0.
    static DpccmState start(Voltage x0, Voltage seed_control, const LinearTransform& transform);

    friend bool operator==(const DpccmState&, const DpccmState&) = default;
};

struct DpccmStep {
    Voltage seed_out;    // seed oscillator v2
    Voltage control;     // control voltage applied to the controlled map
    Voltage v1;          // controlled oscillator first output
    Voltage out;         // controlled oscillator v2, the cascade output
    DpccmState next;
};

DpccmStep dpccm_step(const MapConfig& cfg, const DpccmState& d);

}  // namespace dpccm
