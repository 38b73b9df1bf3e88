// SPDX-License-Identifier: Apache-2.0
#include "dpccm/fips.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "dpccm/error.hpp"
#include "dpccm/parallel.hpp"

namespace dpccm::fips {

namespace {

void require_block(std::span<const std::uint8_t> block) {
    if (block.size() != kBlockBits)
        throw UsageError("FIPS block must hold exactly 20000 bits, got " + std::to_string(block.size()));
}

// Calls f(bit, length) for every maximal run.
template <class F>
void for_each_run(std::span<const std::uint8_t> bits, F&& f) {
    std::size_t i = 0;
    while (i < bits.size()) {
        std::size_t j = i + 1;
        while (j < bits.size() && bits[j] == bits[i]) ++j;
        f(bits[i] != 0, j - i);
        i = j;
    }
}

}  // namespace

MonobitResult monobit(std::span<const std::uint8_t> block) {
    require_block(block);
    const auto ones = static_cast<std::size_t>(std::count_if(block.begin(), block.end(), [](auto b) { return b != 0; }));
    return {ones, ones > kMonobitLow && ones < kMonobitHigh};
}

double poker_statistic(const std::array<std::size_t, 16>& counts) {
    std::uint64_t squares = 0;
    for (auto f : counts) squares += static_cast<std::uint64_t>(f) * f;
    return 16.0 * static_cast<double>(squares) / 5000.0 - 5000.0;
}

PokerResult poker(std::span<const std::uint8_t> block) {
    require_block(block);
    PokerResult r{};
    for (std::size_t s = 0; s < kBlockBits; s += 4) {
        const unsigned v = (block[s] ? 8u : 0u) | (block[s + 1] ? 4u : 0u) | (block[s + 2] ? 2u : 0u) |
                           (block[s + 3] ? 1u : 0u);
        ++r.counts[v];
    }
    r.x = poker_statistic(r.counts);
    r.pass = r.x > kPokerLow && r.x < kPokerHigh;
    return r;
}

RunsResult runs(std::span<const std::uint8_t> block) {
    require_block(block);
    RunsResult r{};
    for_each_run(block, [&](bool bit, std::size_t len) { ++r.histogram[bit][std::min<std::size_t>(len, 6) - 1]; });
    r.pass = true;
    for (const auto& per_value : r.histogram)
        for (std::size_t k = 0; k < 6; ++k)
            if (per_value[k] < kRunIntervals[k].lo || per_value[k] > kRunIntervals[k].hi) r.pass = false;
    return r;
}

LongRunResult long_run(std::span<const std::uint8_t> block) {
    require_block(block);
    std::size_t longest = 0;
    for_each_run(block, [&](bool, std::size_t len) { longest = std::max(longest, len); });
    return {longest, longest < kLongRun};
}

BlockResult test_block(std::span<const std::uint8_t> block) {
    return {monobit(block).pass, poker(block).pass, runs(block).pass, long_run(block).pass};
}

Report run_suite(const BitStream& stream, bool keep_detail, unsigned threads) {
    if (stream.size() < kBlockBits)
        throw UsageError("FIPS suite needs at least 20000 bits, got " + std::to_string(stream.size()));
    const std::size_t blocks = stream.size() / kBlockBits;
    std::vector<BlockResult> results(blocks);
    parallel_for(blocks, threads, [&](std::size_t b) {
        const auto bits = stream.unpack(b * kBlockBits, kBlockBits);
        results[b] = test_block(bits);
    });
    Report report;
    report.total_blocks = blocks;
    for (const auto& r : results) {
        report.total_success += r.pass();
        report.monobit_failures += !r.monobit;
        report.poker_failures += !r.poker;
        report.runs_failures += !r.runs;
        report.long_run_failures += !r.long_run;
    }
    if (keep_detail) report.per_block = std::move(results);
    return report;
}

std::string format_report(const Report& report, const std::string& label) {
    auto cell = [](std::size_t v) { return v == 0 ? std::string("-") : std::to_string(v); };
    char line[256];
    std::ostringstream out;
    std::snprintf(line, sizeof line, "%-12s %14s %8s %8s %8s %9s\n", "PRNG", "Total success", "Monobit", "Poker",
                  "Runs", "Long run");
    out << line;
    std::snprintf(line, sizeof line, "%-12s %14s %8s %8s %8s %9s\n", label.c_str(),
                  (std::to_string(report.total_success) + "/" + std::to_string(report.total_blocks)).c_str(),
                  cell(report.monobit_failures).c_str(), cell(report.poker_failures).c_str(),
                  cell(report.runs_failures).c_str(), cell(report.long_run_failures).c_str());
    out << line;
    return out.str();
}

std::string report_json(const Report& report) {
    nlohmann::ordered_json j;
    j["total_blocks"] = report.total_blocks;
    j["total_success"] = report.total_success;
    j["failures"] = {{"monobit", report.monobit_failures},
                     {"poker", report.poker_failures},
                     {"runs", report.runs_failures},
                     {"longrun", report.long_run_failures}};
    if (!report.per_block.empty()) {
        auto& blocks = j["per_block"] = nlohmann::ordered_json::array();
        for (const auto& b : report.per_block)
            blocks.push_back({{"monobit", b.monobit}, {"poker", b.poker}, {"runs", b.runs}, {"longrun", b.long_run}});
    }
    return j.dump(2);
}

}  // namespace dpccm::fips
