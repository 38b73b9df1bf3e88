// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <sstream>

#include "dpccm/bitstream.hpp"
#include "dpccm/error.hpp"

using namespace dpccm;

namespace {

BitStream random_stream(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    BitStream s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(rng() & 1u);
    return s;
}

}  // namespace

TEST_CASE("bits are packed MSB first with zero padding") {
    const std::vector<std::uint8_t> bits{1, 0, 1, 1, 0, 0, 0, 1, 1, 1};
    const auto s = BitStream::from_bits(bits);
    CHECK(s.size() == 10);
    REQUIRE(s.bytes().size() == 2);
    CHECK(s.bytes()[0] == 0xB1);
    CHECK(s.bytes()[1] == 0xC0);
    CHECK(s.unpack() == bits);
    CHECK(s.count_ones() == 6);
}

TEST_CASE("constructor rejects inconsistent lengths") {
    CHECK_THROWS_AS(BitStream({0xff}, 9), UsageError);
    CHECK_THROWS_AS(BitStream({0xff, 0x00}, 8), UsageError);
}

TEST_CASE("append and slice across byte boundaries") {
    const auto a = random_stream(13, 1), b = random_stream(21, 2);
    BitStream joined = a;
    joined.append(b);
    CHECK(joined.size() == 34);
    CHECK(joined.slice(0, 13) == a);
    CHECK(joined.slice(13, 21) == b);
    CHECK_THROWS_AS(joined.slice(30, 5), UsageError);
}

TEST_CASE("bin and ascii round trips") {
    for (std::size_t n : {0u, 1u, 7u, 8u, 30u, 1001u}) {
        const auto s = random_stream(n, static_cast<unsigned>(n));
        for (auto format : {BitFormat::bin, BitFormat::ascii}) {
            std::stringstream buf;
            write_bits(buf, s, format);
            CHECK(read_bits(buf, format, n) == s);
        }
        std::stringstream ascii;
        write_bits(ascii, s, BitFormat::ascii);
        CHECK(ascii.str().size() == n);
        CHECK(read_bits(ascii, BitFormat::ascii) == s);
    }
}

TEST_CASE("30 bits occupy four bytes in bin") {
    std::stringstream buf;
    write_bits(buf, random_stream(30, 9), BitFormat::bin);
    CHECK(buf.str().size() == 4);
}

TEST_CASE("ascii reader tolerates a trailing newline and reports bad bytes") {
    std::istringstream ok("0110\n");
    CHECK(read_bits(ok, BitFormat::ascii).size() == 4);
    std::istringstream bad("0110x01");
    try {
        read_bits(bad, BitFormat::ascii);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("0x78 at offset 4") != std::string::npos);
    }
    std::istringstream too_short("0101");
    CHECK_THROWS_AS(read_bits(too_short, BitFormat::ascii, 5), FormatError);
    std::istringstream bin_short("ab");
    CHECK_THROWS_AS(read_bits(bin_short, BitFormat::bin, 17), FormatError);
}

TEST_CASE("format names") {
    CHECK(parse_bit_format("bin") == BitFormat::bin);
    CHECK(parse_bit_format("ascii") == BitFormat::ascii);
    CHECK(to_string(BitFormat::ascii) == "ascii");
    CHECK_THROWS_AS(parse_bit_format("hex"), UsageError);
}

TEST_CASE("missing file is an I/O error") {
    CHECK_THROWS_AS(load_bits("/nonexistent/dir/file.bin", BitFormat::bin), IoError);
    CHECK_THROWS_AS(save_bits("/nonexistent/dir/file.bin", BitStream{}, BitFormat::bin), IoError);
}
