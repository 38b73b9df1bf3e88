// SPDX-License-Identifier: Apache-2.0
#include "dpccm/dpccm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpccm/error.hpp"

namespace dpccm {

OscillatorStep oscillator_step(const MapConfig& cfg, const OscillatorState& s) {
    const Voltage v1 = map_eval(cfg, s.x, s.c);
    const Voltage v2 = map_eval(cfg, v1, s.c);
    return {v1, v2, OscillatorState{v2, s.c, s.iteration + 1}};
}

void LinearTransform::validate() const {
    if (!std::isfinite(a_min) || !std::isfinite(a_max) || !std::isfinite(b_min) || !std::isfinite(b_max))
        throw UsageError("transform bounds must be finite");
    if (!(a_max > a_min)) throw UsageError("transform requires a_max > a_min");
    if (!(b_max > b_min)) throw UsageError("transform requires b_max > b_min");
}

Voltage transform_eval(const LinearTransform& t, Voltage v_seed) {
    const Voltage v = std::clamp(v_seed, t.a_min, t.a_max);
    const Voltage out = (t.b_max - t.b_min) / (t.a_max - t.a_min) * (t.a_max - v) + t.b_min;
    // Round-off at the endpoints may overshoot by an ulp.
    return std::clamp(out, t.b_min, t.b_max);
}

LinearTransform calibrate_transform(const MapConfig& cfg, Voltage c_seed, Voltage b_min, Voltage b_max,
                                    std::uint64_t n, std::uint64_t transient) {
    if (n < kMinCalibrationIterations)
        throw UsageError("calibration needs at least " + std::to_string(kMinCalibrationIterations) +
                         " iterations");
    OscillatorState s{kDefaultStartFraction * cfg.vdd, c_seed, 0};
    for (std::uint64_t i = 0; i < transient; ++i) s = oscillator_step(cfg, s).next;
    Voltage lo = cfg.vdd;
    Voltage hi = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        s = oscillator_step(cfg, s).next;
        lo = std::min(lo, s.x);
        hi = std::max(hi, s.x);
    }
    if (hi - lo < kMinCalibrationSpan) {
        std::ostringstream msg;
        msg << "seed orbit at c = " << c_seed << " V spans only " << (hi - lo)
            << " V; the seed control voltage is not chaotic";
        throw CalibrationError(msg.str());
    }
    LinearTransform t{lo - kCalibrationMargin, hi + kCalibrationMargin, b_min, b_max};
    t.validate();
    return t;
}

DpccmState DpccmState::start(Voltage x0, Voltage seed_control, const LinearTransform& transform) {
    DpccmState d;
    d.transform = transform;
    d.seed = OscillatorState{x0, seed_control, 0};
    d.controlled = OscillatorState{x0, transform_eval(transform, x0), 0};
    return d;
}

DpccmStep dpccm_step(const MapConfig& cfg, const DpccmState& d) {
    const OscillatorStep seed = oscillator_step(cfg, d.seed);
    const Voltage control = transform_eval(d.transform, seed.v2);
    OscillatorState controlled = d.controlled;
    controlled.c = control;
    const OscillatorStep out = oscillator_step(cfg, controlled);
    return {seed.v2, control, out.v1, out.v2, DpccmState{seed.next, out.next, d.transform}};
}

}  // namespace dpccm
