// SPDX-License-Identifier: Apache-2.0
//
// FIPS PUB 140-2 power-up tests on 20 000-bit blocks: monobit, poker, runs
// and long run.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpccm/bitstream.hpp"

namespace dpccm::fips {

inline constexpr std::size_t kBlockBits = 20'000;

// Monobit: strict bounds on the count of ones.
inline constexpr std::size_t kMonobitLow = 9'725;
inline constexpr std::size_t kMonobitHigh = 10'275;

// Poker: strict bounds on X over 5000 4-bit segments.
inline constexpr double kPokerLow = 2.16;
inline constexpr double kPokerHigh = 46.17;

// Runs: inclusive bounds per run length 1..5 and 6+, same for 0s and 1s.
struct Interval {
    std::size_t lo;
    std::size_t hi;
};
inline constexpr std::array<Interval, 6> kRunIntervals{{
    {2'343, 2'657}, {1'135, 1'365}, {542, 708}, {251, 373}, {111, 201}, {111, 201},
}};

// Any run of 26 or more identical bits fails the block.
inline constexpr std::size_t kLongRun = 26;

struct MonobitResult {
    std::size_t ones;
    bool pass;
};

struct PokerResult {
    double x;
    std::array<std::size_t, 16> counts;
    bool pass;
};

struct RunsResult {
    // histogram[value][len - 1], len 6 collects every run of 6 or more.
    std::array<std::array<std::size_t, 6>, 2> histogram;
    bool pass;
};

struct LongRunResult {
    std::size_t max_run;
    bool pass;
};

/// Each takes exactly 20 000 bits (one byte 0/1 per bit) and throws
/// UsageError otherwise.
MonobitResult monobit(std::span<const std::uint8_t> block);
PokerResult poker(std::span<const std::uint8_t> block);
RunsResult runs(std::span<const std::uint8_t> block);
LongRunResult long_run(std::span<const std::uint8_t> block);

/// Poker statistic from a 16-bin histogram of 5000 segments.
double poker_statistic(const std::array<std::size_t, 16>& counts);

struct BlockResult {
    bool monobit;
    bool poker;
    bool runs;
    bool long_run;
    bool pass() const noexcept { return monobit && poker && runs && long_run; }
};

struct Report {
    std::size_t total_blocks = 0;
    std::size_t total_success = 0;
    std::size_t monobit_failures = 0;
    std::size_t poker_failures = 0;
    std::size_t runs_failures = 0;
    std::size_t long_run_failures = 0;
    std::vector<BlockResult> per_block;  // filled when detail is requested
};

BlockResult test_block(std::span<const std::uint8_t> block);

/// Splits the stream into floor(len / 20000) consecutive blocks, discarding
/// the remainder.
Report run_suite(const BitStream& stream, bool keep_detail = false, unsigned threads = 1);

std::string format_report(const Report& report, const std::string& label);
std::string report_json(const Report& report);

}  // namespace dpccm::fips
