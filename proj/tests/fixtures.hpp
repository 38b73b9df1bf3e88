// SPDX-License-Identifier: Apache-2.0
// Hand-built 20000-bit FIPS blocks with known statistics.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace fixture {

inline constexpr std::size_t kBlock = 20'000;

inline std::vector<std::uint8_t> zero_block() { return std::vector<std::uint8_t>(kBlock, 0); }

inline std::vector<std::uint8_t> alternating_block() {
    std::vector<std::uint8_t> b(kBlock);
    for (std::size_t i = 0; i < kBlock; ++i) b[i] = i & 1u;
    return b;
}

// 5000 nibbles: values 0..7 appear 313 times, 8..15 appear 312 times, in a
// shuffled order. Poker X = 16/5000 (8*313^2 + 8*312^2) - 5000 = 0.0128.
inline std::vector<std::uint8_t> balanced_poker_block(unsigned seed = 1) {
    std::vector<std::uint8_t> nibbles;
    for (std::uint8_t v = 0; v < 16; ++v) nibbles.insert(nibbles.end(), v < 8 ? 313 : 312, v);
    std::mt19937 rng(seed);
    std::shuffle(nibbles.begin(), nibbles.end(), rng);
    std::vector<std::uint8_t> b;
    b.reserve(kBlock);
    for (auto v : nibbles)
        for (int bit = 3; bit >= 0; --bit) b.push_back((v >> bit) & 1u);
    return b;
}

// Runs of each polarity at the midpoint of every FIPS 140-2 interval:
// 2500, 1250, 625, 312, 156 runs of length 1..5 and 156 runs of length >= 6.
// The 1097 bits left per polarity are spread over the long runs (151 of
// length 7 and 5 of length 8), so each polarity holds exactly 10000 bits.
inline std::vector<std::uint8_t> midpoint_runs_block(unsigned seed = 1) {
    std::vector<int> lengths;
    const int counts[] = {2500, 1250, 625, 312, 156};
    for (int len = 1; len <= 5; ++len) lengths.insert(lengths.end(), counts[len - 1], len);
    lengths.insert(lengths.end(), 151, 7);
    lengths.insert(lengths.end(), 5, 8);
    std::mt19937 rng(seed);
    auto zeros = lengths, ones = lengths;
    std::shuffle(zeros.begin(), zeros.end(), rng);
    std::shuffle(ones.begin(), ones.end(), rng);
    std::vector<std::uint8_t> b;
    b.reserve(kBlock);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        b.insert(b.end(), static_cast<std::size_t>(zeros[i]), 0);
        b.insert(b.end(), static_cast<std::size_t>(ones[i]), 1);
    }
    return b;
}

}  // namespace fixture
