// SPDX-License-Identifier: Apache-2.0
#include "dpccm/prng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dpccm/dynamics.hpp"
#include "dpccm/error.hpp"
#include "dpccm/parallel.hpp"

namespace dpccm {

std::string_view to_string(Design design) { return design == Design::I ? "I" : "II"; }

Design parse_design(std::string_view name) {
    if (name == "I" || name == "1" || name == "i") return Design::I;
    if (name == "II" || name == "2" || name == "ii") return Design::II;
    throw UsageError("unknown design '" + std::string(name) + "' (expected I or II)");
}

int extract_width(Design design) noexcept { return design == Design::I ? 1 : 3; }

void AdcModel::validate() const {
    if (bits < 2 || bits > 16) throw UsageError("ADC width must be between 2 and 16 bits");
    if (!std::isfinite(v_min) || !std::isfinite(v_max) || !(v_max > v_min))
        throw UsageError("ADC range requires v_max > v_min");
}

std::uint32_t adc_quantize(const AdcModel& adc, Voltage v) noexcept {
    const double levels = static_cast<double>(1u << adc.bits);
    const double scaled = std::floor((v - adc.v_min) / (adc.v_max - adc.v_min) * levels);
    if (!(scaled > 0.0)) return 0;  // also catches NaN
    if (scaled >= levels) return adc.max_code();
    return static_cast<std::uint32_t>(scaled);
}

std::vector<std::uint8_t> extract_bits(std::uint32_t code, int k, int n) {
    if (n < 1 || n > 31 || k < 1 || k > n) throw UsageError("extract_bits requires 1 <= k <= n");
    if (code >= (1u << n)) throw UsageError("code does not fit in n bits");
    std::vector<std::uint8_t> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = (code >> (k - 1 - i)) & 1u;
    return out;
}

void PrngConfig::validate() const {
    adc.validate();
    map.validate();
    transform.validate();
    if (extract_k != extract_width(design))
        throw UsageError("design " + std::string(to_string(design)) + " extracts " +
                         std::to_string(extract_width(design)) + " bit(s) per sample, not " + std::to_string(extract_k));
    if (extract_k > adc.bits) throw UsageError("cannot extract more bits than the ADC provides");
    if (!std::isfinite(v_c) || v_c < 0.0 || v_c > map.vdd) throw UsageError("seed control voltage outside [0, vdd]");
    if (transform.b_min < 0.0 || transform.b_max > map.vdd)
        throw UsageError("transform output window must lie within [0, vdd]");
    if (pairs.empty()) throw UsageError("at least one initial-voltage pair is required");
    for (const auto& p : pairs) {
        for (Voltage x : {p.x_a, p.x_b})
            if (!std::isfinite(x) || x < 0.0 || x > map.vdd) throw UsageError("initial voltage outside [0, vdd]");
        if (p.x_a == p.x_b && !allow_equal_pairs)
            throw UsageError("blocks A and B need unequal initial voltages");
    }
}

namespace {

// One cascade block sampled every second iteration.
class SampledBlock {
public:
    SampledBlock(const PrngConfig& cfg, Voltage x0)
        : map_(cfg.map), state_(DpccmState::start(x0, cfg.v_c, cfg.transform)) {}

    Voltage next_sample() {
        state_ = dpccm_step(map_, state_).next;
        const DpccmStep even = dpccm_step(map_, state_);
        state_ = even.next;
        return even.out;
    }

    std::uint64_t iterations() const noexcept { return state_.controlled.iteration; }

private:
    const MapConfig& map_;
    DpccmState state_;
};

}  // namespace

StreamTrace prng_stream_traced(const PrngConfig& cfg, std::size_t pair_index) {
    if (pair_index >= cfg.pairs.size()) throw UsageError("pair index out of range");
    cfg.validate();
    const auto& pair = cfg.pairs[pair_index];
    SampledBlock a(cfg, pair.x_a);
    SampledBlock b(cfg, pair.x_b);
    for (std::size_t i = 0; i < cfg.warmup_samples; ++i) {
        a.next_sample();
        b.next_sample();
    }
    const std::uint32_t mask = (1u << cfg.extract_k) - 1u;
    StreamTrace trace;
    trace.bits.reserve(cfg.bits_per_pair());
    for (std::size_t i = 0; i < cfg.samples_per_pair; ++i) {
        const std::uint32_t mixed = (adc_quantize(cfg.adc, a.next_sample()) ^ adc_quantize(cfg.adc, b.next_sample())) & mask;
        for (int bit = cfg.extract_k - 1; bit >= 0; --bit) trace.bits.push_back((mixed >> bit) & 1u);
    }
    trace.iterations_a = a.iterations();
    trace.iterations_b = b.iterations();
    return trace;
}

BitStream prng_stream(const PrngConfig& cfg, std::size_t pair_index) {
    return std::move(prng_stream_traced(cfg, pair_index).bits);
}

BitStream prng_generate(const PrngConfig& cfg, unsigned threads) {
    cfg.validate();
    std::vector<BitStream> parts(cfg.pairs.size());
    parallel_for(parts.size(), threads, [&](std::size_t i) { parts[i] = prng_stream(cfg, i); });
    BitStream out;
    out.reserve(cfg.total_bits());
    for (const auto& part : parts) out.append(part);
    return out;
}

std::vector<SeedPair> default_seed_schedule(std::size_t count, Voltage v_lo, Voltage v_hi) {
    if (count < 1) throw UsageError("seed schedule needs count >= 1");
    if (!(v_hi > v_lo)) throw UsageError("seed schedule requires v_hi > v_lo");
    const double span = v_hi - v_lo;
    const double n = static_cast<double>(count);
    const double offset = 1.0 / (2.0 * n + 1.0);
    std::vector<SeedPair> pairs(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double centre = (static_cast<double>(i) + 0.5) / n;
        double other = centre + offset;
        other -= std::floor(other);
        pairs[i] = {v_lo + centre * span, v_lo + other * span};
    }
    return pairs;
}

Voltage default_control_voltage(const MapConfig& map, std::size_t grid_steps) {
    if (map.family == MapFamily::table) return kPaperControlVoltage;
    const auto estimates = lyapunov_scan(map, OscillatorSubject{}, ScanRange{0.0, map.vdd, grid_steps},
                                         LyapunovScanOptions{LyapunovMethod::derivative, 1000});
    const auto best = std::max_element(estimates.begin(), estimates.end(),
                                       [](const auto& l, const auto& r) { return l.lambda < r.lambda; });
    return best->c;
}

}  // namespace dpccm
