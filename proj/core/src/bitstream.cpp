// SPDX-License-Identifier: Apache-2.0
#include "dpccm/bitstream.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "dpccm/error.hpp"

namespace dpccm {

namespace {

void clear_padding(std::vector<std::uint8_t>& data, std::size_t bit_len) {
    const unsigned tail = bit_len & 7u;
    if (tail != 0 && !data.empty()) data.back() &= static_cast<std::uint8_t>(0xFFu << (8u - tail));
}

}  // namespace

BitStream::BitStream(std::vector<std::uint8_t> bytes, std::size_t bit_len) : data_(std::move(bytes)), bit_len_(bit_len) {
    if (data_.size() != (bit_len + 7) / 8)
        throw UsageError("bit length " + std::to_string(bit_len) + " does not match " +
                         std::to_string(data_.size()) + " bytes");
    clear_padding(data_, bit_len_);
}

BitStream BitStream::from_bits(std::span<const std::uint8_t> bits) {
    BitStream out;
    out.reserve(bits.size());
    for (auto b : bits) out.push_back(b != 0);
    return out;
}

void BitStream::append(const BitStream& other) {
    if ((bit_len_ & 7u) == 0) {
        data_.insert(data_.end(), other.data_.begin(), other.data_.end());
        bit_len_ += other.bit_len_;
        return;
    }
    reserve(bit_len_ + other.bit_len_);
    for (std::size_t i = 0; i < other.bit_len_; ++i) push_back(other[i]);
}

std::vector<std::uint8_t> BitStream::unpack(std::size_t offset, std::size_t count) const {
    if (offset > bit_len_ || count > bit_len_ - offset) throw UsageError("bit range out of bounds");
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (*this)[offset + i];
    return out;
}

BitStream BitStream::slice(std::size_t offset, std::size_t count) const {
    if (offset > bit_len_ || count > bit_len_ - offset) throw UsageError("bit range out of bounds");
    if ((offset & 7u) == 0) {
        const auto first = data_.begin() + static_cast<std::ptrdiff_t>(offset / 8);
        return BitStream(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>((count + 7) / 8)),
                         count);
    }
    BitStream out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back((*this)[offset + i]);
    return out;
}

std::size_t BitStream::count_ones() const noexcept {
    std::size_t ones = 0;
    for (auto b : data_) ones += static_cast<std::size_t>(std::popcount(b));
    return ones;
}

std::string_view to_string(BitFormat format) { return format == BitFormat::bin ? "bin" : "ascii"; }

BitFormat parse_bit_format(std::string_view name) {
    if (name == "bin") return BitFormat::bin;
    if (name == "ascii") return BitFormat::ascii;
    throw UsageError("unknown bitstream format '" + std::string(name) + "' (expected bin or ascii)");
}

void write_bits(std::ostream& out, const BitStream& bits, BitFormat format) {
    if (format == BitFormat::bin) {
        out.write(reinterpret_cast<const char*>(bits.bytes().data()), static_cast<std::streamsize>(bits.bytes().size()));
        return;
    }
    std::string text(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) text[i] = '1';
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

BitStream read_bits(std::istream& in, BitFormat format, std::optional<std::size_t> bit_len) {
    std::vector<char> raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("read failure");
    if (format == BitFormat::bin) {
        const std::size_t available = raw.size() * 8;
        const std::size_t len = bit_len.value_or(available);
        if (len > available)
            throw FormatError("requested " + std::to_string(len) + " bits but input holds " + std::to_string(available));
        std::vector<std::uint8_t> bytes(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>((len + 7) / 8));
        return BitStream(std::move(bytes), len);
    }
    std::size_t end = raw.size();
    while (end > 0 && (raw[end - 1] == '\n' || raw[end - 1] == '\r' || raw[end - 1] == ' ' || raw[end - 1] == '\t'))
        --end;
    BitStream out;
    out.reserve(end);
    for (std::size_t i = 0; i < end; ++i) {
        const char ch = raw[i];
        if (ch != '0' && ch != '1')
            throw FormatError("ascii bitstream: unexpected byte 0x" + [&] {
                static const char* hex = "0123456789abcdef";
                const auto u = static_cast<unsigned char>(ch);
                return std::string{hex[u >> 4], hex[u & 15]};
            }() + " at offset " + std::to_string(i));
        out.push_back(ch == '1');
    }
    if (bit_len) {
        if (*bit_len > out.size())
            throw FormatError("requested " + std::to_string(*bit_len) + " bits but input holds " +
                              std::to_string(out.size()));
        return out.slice(0, *bit_len);
    }
    return out;
}

void save_bits(const std::string& path, const BitStream& bits, BitFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_bits(out, bits, format);
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

BitStream load_bits(const std::string& path, BitFormat format, std::optional<std::size_t> bit_len) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_bits(in, format, bit_len);
}

}  // namespace dpccm
