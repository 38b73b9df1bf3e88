// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "dpccm/config.hpp"
#include "dpccm/error.hpp"
#include "dpccm/prng.hpp"

using namespace dpccm;

namespace {

PrngConfig small_config(Design design, std::size_t pairs, std::size_t samples) {
    GeneratorSettings s;
    s.design = design;
    s.pair_count = pairs;
    s.samples_per_pair = samples;
    return resolve(s).config;
}

}  // namespace

TEST_CASE("ADC quantization") {
    const AdcModel adc{8, 0.0, 1.2};
    CHECK(adc_quantize(adc, 0.0) == 0);
    CHECK(adc_quantize(adc, 0.6) == 128);
    CHECK(adc_quantize(adc, 1.2) == 255);
    CHECK(adc_quantize(adc, 1.5) == 255);
    CHECK(adc_quantize(adc, -0.1) == 0);
    CHECK(adc_quantize(adc, 1.2 * 3.0 / 256.0 + 1e-12) == 3);
    CHECK(adc_quantize(AdcModel{10, 0.0, 1.2}, 0.6) == 512);
    CHECK_THROWS_AS((AdcModel{1, 0.0, 1.2}).validate(), UsageError);
    CHECK_THROWS_AS((AdcModel{17, 0.0, 1.2}).validate(), UsageError);
    CHECK_THROWS_AS((AdcModel{8, 1.0, 1.0}).validate(), UsageError);
}

TEST_CASE("bit extraction takes the k least significant bits, MSB first") {
    CHECK(extract_bits(0b10110101, 1, 8) == std::vector<std::uint8_t>{1});
    CHECK(extract_bits(0b10110101, 3, 8) == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(extract_bits(0b1000000110, 3, 10) == std::vector<std::uint8_t>{1, 1, 0});
    CHECK_THROWS_AS(extract_bits(256, 1, 8), UsageError);
    CHECK_THROWS_AS(extract_bits(3, 3, 2), UsageError);
}

TEST_CASE("design names") {
    CHECK(parse_design("I") == Design::I);
    CHECK(parse_design("2") == Design::II);
    CHECK(extract_width(Design::I) == 1);
    CHECK(extract_width(Design::II) == 3);
    CHECK_THROWS_AS(parse_design("III"), UsageError);
}

TEST_CASE("equal initial voltages cancel in the XOR") {
    for (Design design : {Design::I, Design::II}) {
        auto cfg = small_config(design, 1, 500);
        cfg.allow_equal_pairs = true;
        cfg.pairs = {{0.4321, 0.4321}};
        for (int bits = extract_width(design) == 3 ? 3 : 2; bits <= 16; ++bits) {
            cfg.adc.bits = bits;
            const auto s = prng_stream(cfg, 0);
            CHECK(s.size() == 500u * static_cast<std::size_t>(cfg.extract_k));
            CHECK(s.count_ones() == 0);
        }
    }
}

TEST_CASE("equal initial voltages are rejected without the test flag") {
    auto cfg = small_config(Design::I, 1, 10);
    cfg.pairs = {{0.5, 0.5}};
    CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("length accounting") {
    const auto one = small_config(Design::I, 3, 10'000);
    const auto three = small_config(Design::II, 3, 10'000);
    CHECK(one.total_bits() == 30'000);
    CHECK(three.total_bits() == 90'000);
    CHECK(prng_generate(one).size() == 30'000);
    CHECK(prng_generate(three).size() == 90'000);
    auto big = one;
    big.pairs.resize(100, big.pairs.front());
    big.samples_per_pair = 1'000'000;
    CHECK(big.total_bits() == 100'000'000);
}

TEST_CASE("each sample costs two cascade iterations per block") {
    auto cfg = small_config(Design::I, 1, 1000);
    cfg.warmup_samples = 7;
    const auto trace = prng_stream_traced(cfg, 0);
    CHECK(trace.iterations_a == 2 * 1007);
    CHECK(trace.iterations_b == 2 * 1007);
    const auto cfg2 = small_config(Design::II, 1, 1000);
    const auto trace2 = prng_stream_traced(cfg2, 0);
    // three times the bits for the same work
    CHECK(trace2.iterations_a == 2000);
    CHECK(trace2.bits.size() == 3 * prng_stream_traced(small_config(Design::I, 1, 1000), 0).bits.size());
}

TEST_CASE("design II stream matches a scalar recomputation") {
    const auto cfg = small_config(Design::II, 2, 200);
    const auto& pair = cfg.pairs[1];
    auto a = DpccmState::start(pair.x_a, cfg.v_c, cfg.transform);
    auto b = DpccmState::start(pair.x_b, cfg.v_c, cfg.transform);
    std::vector<std::uint8_t> expected;
    for (int i = 0; i < 200; ++i) {
        a = dpccm_step(cfg.map, a).next;
        b = dpccm_step(cfg.map, b).next;
        const auto sa = dpccm_step(cfg.map, a), sb = dpccm_step(cfg.map, b);
        a = sa.next;
        b = sb.next;
        const auto code = adc_quantize(cfg.adc, sa.out) ^ adc_quantize(cfg.adc, sb.out);
        for (auto bit : extract_bits(code, 3, cfg.adc.bits)) expected.push_back(bit);
    }
    CHECK(prng_stream(cfg, 1).unpack() == expected);
}

TEST_CASE("generation is independent of the thread count") {
    const auto cfg = small_config(Design::II, 5, 2000);
    const auto serial = prng_generate(cfg, 1);
    CHECK(prng_generate(cfg, 3) == serial);
    CHECK(prng_generate(cfg, 8) == serial);
    CHECK(prng_generate(cfg, 1) == serial);
    // pairs are concatenated in index order
    CHECK(serial.slice(2 * 6000, 6000) == prng_stream(cfg, 2));
}

TEST_CASE("default seed schedule") {
    const auto pairs = default_seed_schedule(100, 0.06, 1.14);
    REQUIRE(pairs.size() == 100);
    std::set<double> starts;
    for (const auto& p : pairs) {
        CHECK(p.x_a != p.x_b);
        for (double x : {p.x_a, p.x_b}) {
            CHECK(x >= 0.06);
            CHECK(x <= 1.14);
            starts.insert(x);
        }
    }
    CHECK(starts.size() == 200);
    CHECK(default_seed_schedule(100, 0.06, 1.14) == pairs);
    CHECK_THROWS_AS(default_seed_schedule(0, 0.0, 1.0), UsageError);
    CHECK_THROWS_AS(default_seed_schedule(3, 1.0, 1.0), UsageError);
}

TEST_CASE("surrogate control voltage is the most chaotic grid point") {
    CHECK(default_control_voltage(MapConfig::tent()) == 1.2);
    CHECK(default_control_voltage(MapConfig::tent(), 49) == 1.2);
}

TEST_CASE("config validation") {
    auto cfg = small_config(Design::I, 1, 10);
    cfg.extract_k = 3;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = small_config(Design::I, 1, 10);
    cfg.pairs.clear();
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = small_config(Design::I, 1, 10);
    cfg.pairs = {{-0.1, 0.5}};
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = small_config(Design::II, 1, 10);
    cfg.adc.bits = 2;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    CHECK_THROWS_AS(prng_stream(small_config(Design::I, 1, 10), 1), UsageError);
}
