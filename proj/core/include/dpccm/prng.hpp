// SPDX-License-Identifier: Apache-2.0
//
// Bit generators built from two cascade blocks A and B. The controlled
// output of each block is sampled on every even iteration, quantised by an
// n-bit ADC, and the k least significant bits of the two codes are XORed
// position-wise: k = 1 for design I, k = 3 for design II.
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dpccm/bitstream.hpp"
#include "dpccm/dpccm.hpp"

namespace dpccm {

enum class Design { I = 1, II = 2 };

std::string_view to_string(Design design);
Design parse_design(std::string_view name);
int extract_width(Design design) noexcept;

struct AdcModel {
    int bits = 8;
    Voltage v_min = 0.0;
    Voltage v_max = kDefaultVdd;

    void validate() const;
    std::uint32_t max_code() const noexcept { return (1u << bits) - 1u; }
};

/// floor((v - v_min) / (v_max - v_min) * 2^n), clamped to [0, 2^n - 1].
std::uint32_t adc_quantize(const AdcModel& adc, Voltage v) noexcept;

/// The k least significant bits of an n-bit code, bit k-1 first.
std::vector<std::uint8_t> extract_bits(std::uint32_t code, int k, int n);

struct SeedPair {
    Voltage x_a;
    Voltage x_b;

    friend bool operator==(const SeedPair&, const SeedPair&) = default;
};

struct PrngConfig {
    Design design = Design::I;
    AdcModel adc{};
    int extract_k = 1;
    Voltage v_c = kDefaultVdd;
    std::vector<SeedPair> pairs;
    std::size_t samples_per_pair = 1'000'000;
    std::size_t warmup_samples = 0;
    MapConfig map{};
    LinearTransform transform{};
    // Lets tests run blocks A and B from the same voltage.
    bool allow_equal_pairs = false;

    void validate() const;
    std::size_t bits_per_pair() const noexcept { return samples_per_pair * static_cast<std::size_t>(extract_k); }
    std::size_t total_bits() const noexcept { return pairs.size() * bits_per_pair(); }
};

struct StreamTrace {
    BitStream bits;
    std::uint64_t iterations_a = 0;
    std::uint64_t iterations_b = 0;
};

/// Bits from one seed pair: warmup_samples + samples_per_pair samples, two
/// cascade iterations each; the first warmup_samples are discarded.
BitStream prng_stream(const PrngConfig& cfg, std::size_t pair_index);
StreamTrace prng_stream_traced(const PrngConfig& cfg, std::size_t pair_index);

/// Concatenation of every pair's stream in pair order. Pairs may be generated
/// on several threads; the output does not depend on the thread count.
BitStream prng_generate(const PrngConfig& cfg, unsigned threads = 1);

/// x_a = v_lo + (i + 1/2) span / count,
/// x_b = v_lo + frac((i + 1/2) / count + 1 / (2 count + 1)) span.
std::vector<SeedPair> default_seed_schedule(std::size_t count, Voltage v_lo, Voltage v_hi);

/// Control voltage at the peak of the first chaotic window of the measured
/// 65 nm map, and that window.
inline constexpr Voltage kPaperControlVoltage = 0.5925;
inline constexpr Voltage kPaperWindowLo = 0.5275;
inline constexpr Voltage kPaperWindowHi = 0.6225;
inline constexpr int kPaperAdcBitsDesignI = 8;
inline constexpr int kPaperAdcBitsDesignII = 10;
inline constexpr std::size_t kPaperPairs = 100;
inline constexpr std::size_t kPaperSamplesPerPair = 1'000'000;

/// Seed control voltage for a map: the measured preset for table maps,
/// otherwise the grid point of maximal Lyapunov exponent over [0, vdd].
Voltage default_control_voltage(const MapConfig& map, std::size_t grid_steps = 25);

/// Control window used for the analytic surrogates, as fractions of vdd.
/// Slopes 1.5 ... 2 for the default tent family.
inline constexpr double kSurrogateWindowLo = 0.75;
inline constexpr double kSurrogateWindowHi = 1.0;
/// Seed schedule range for the surrogates, as fractions of vdd.
inline constexpr double kSurrogateScheduleLo = 0.05;
inline constexpr double kSurrogateScheduleHi = 0.95;

}  // namespace dpccm
