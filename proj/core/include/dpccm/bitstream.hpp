// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpccm {

/// Packed bit sequence. Bit 0 is the most significant bit of byte 0; unused
/// trailing bits of the last byte are always zero.
class BitStream {
public:
    BitStream() = default;

    /// Takes ownership of packed bytes; trailing pad bits are cleared.
    BitStream(std::vector<std::uint8_t> bytes, std::size_t bit_len);

    static BitStream from_bits(std::span<const std::uint8_t> bits);

    void push_back(bool bit) {
        if ((bit_len_ & 7u) == 0) data_.push_back(0);
        if (bit) data_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_len_ & 7u));
        ++bit_len_;
    }

    bool operator[](std::size_t i) const noexcept { return (data_[i >> 3] >> (7u - (i & 7u))) & 1u; }

    std::size_t size() const noexcept { return bit_len_; }
    bool empty() const noexcept { return bit_len_ == 0; }
    const std::vector<std::uint8_t>& bytes() const noexcept { return data_; }

    void reserve(std::size_t bits) { data_.reserve((bits + 7) / 8); }
    void append(const BitStream& other);

    /// One byte (0 or 1) per bit for [offset, offset + count).
    std::vector<std::uint8_t> unpack(std::size_t offset, std::size_t count) const;
    std::vector<std::uint8_t> unpack() const { return unpack(0, bit_len_); }

    BitStream slice(std::size_t offset, std::size_t count) const;

    std::size_t count_ones() const noexcept;

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> data_;
    std::size_t bit_len_ = 0;
};

enum class BitFormat { bin, ascii };

std::string_view to_string(BitFormat format);
BitFormat parse_bit_format(std::string_view name);

void write_bits(std::ostream& out, const BitStream& bits, BitFormat format);
/// For `bin`, bit_len defaults to 8 * file size. For `ascii`, any byte other
/// than '0'/'1' (trailing whitespace excepted) raises FormatError naming the
/// byte offset.
BitStream read_bits(std::istream& in, BitFormat format, std::optional<std::size_t> bit_len = std::nullopt);

void save_bits(const std::string& path, const BitStream& bits, BitFormat format);
BitStream load_bits(const std::string& path, BitFormat format, std::optional<std::size_t> bit_len = std::nullopt);

}  // namespace dpccm
