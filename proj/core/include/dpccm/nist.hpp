// SPDX-License-Identifier: Apache-2.0
//
// Core subset of the NIST SP 800-22 rev. 1a battery and the proportion-of-
// passing-streams campaign rule.
//
// All test functions take one byte per bit (0 or 1) and return p-values in
// [0, 1]. They throw UsageError when the slice is shorter than the test's
// minimum length or the parameters are inadmissible.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpccm/bitstream.hpp"

namespace dpccm::nist {

struct Params {
    std::size_t block_frequency_m = 128;
    int serial_m = 16;
    int approx_entropy_m = 10;
};

double frequency(std::span<const std::uint8_t> bits);
double block_frequency(std::span<const std::uint8_t> bits, std::size_t m = 128);
double runs(std::span<const std::uint8_t> bits);
double longest_run(std::span<const std::uint8_t> bits);
double cumulative_sums(std::span<const std::uint8_t> bits, bool forward);
/// Two p-values, from the first and second differences of psi^2.
std::array<double, 2> serial(std::span<const std::uint8_t> bits, int m = 16);
double approximate_entropy(std::span<const std::uint8_t> bits, int m = 10);
double dft(std::span<const std::uint8_t> bits);

enum class Kind {
    frequency,
    block_frequency,
    runs,
    longest_run,
    cusum_forward,
    cusum_backward,
    serial,
    approx_entropy,
    dft,
};

std::string_view to_string(Kind kind);

/// One p-value, or two for the serial test.
std::vector<double> pvalue(Kind kind, std::span<const std::uint8_t> bits, const Params& params = {});

/// Result rows in report order. cusum and serial contribute one row per
/// variant.
inline constexpr std::array<std::string_view, 10> kTestNames{
    "frequency", "block_frequency", "cusum_forward", "cusum_backward", "runs",
    "longest_run", "dft", "approximate_entropy", "serial_1", "serial_2",
};

struct StreamPValues {
    std::array<double, kTestNames.size()> p{};
};

/// Runs every implemented test on one slice.
StreamPValues run_battery(std::span<const std::uint8_t> bits, const Params& params = {});

struct TestTally {
    std::string test;
    std::size_t pass_count = 0;
    std::size_t streams = 0;
    double pass_rate = 0.0;
    bool averaged = false;  // arithmetic mean over the variants of one test
    bool pass = false;
};

struct CampaignReport {
    std::vector<TestTally> per_test;
    double alpha = 0.01;
    std::size_t min_pass = 0;
    bool pass() const noexcept;
};

/// Proportion threshold: floor(m * (p - 3 sqrt(p (1 - p) / m))), p = 1 - alpha.
/// 96 for 100 streams at alpha = 0.01.
std::size_t default_min_pass(std::size_t streams, double alpha);

CampaignReport tally(std::span<const StreamPValues> results, double alpha, std::size_t min_pass);

/// Each element of `streams` is one test slice; all must have the same length.
CampaignReport campaign(std::span<const BitStream> streams, double alpha, std::size_t min_pass,
                        const Params& params = {}, unsigned threads = 1);

std::string format_report(const CampaignReport& report, const std::string& label);
std::string report_json(const CampaignReport& report);

/// Rejects a set of externally computed p-values when six or more equal 0 or
/// 1 after rounding to six decimals. Returns true for a pass.
bool diehard_census(std::span<const double> p_values);

}  // namespace dpccm::nist
