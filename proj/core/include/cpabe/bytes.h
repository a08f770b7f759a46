#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cpabe {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);  // throws Error on odd length / bad digit

std::string base64_encode(ByteView data);
Bytes base64_decode(std::string_view text);  // throws Error on malformed input

// Big-endian length-prefixed building blocks used by the key / ciphertext
// container formats.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }
    void var16(ByteView data);  // u16 length prefix + bytes
    void var16(std::string_view text);
    Bytes take() { return std::move(out_); }
    const Bytes& data() const { return out_; }

  private:
    Bytes out_;
};

// Reads the same encoding back; throws CorruptContainer on truncation.
class ByteReader {
  public:
    explicit ByteReader(ByteView data) : data_(data) {}
    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView raw(size_t n);
    ByteView var16();
    std::string var16_string();
    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }

  private:
    void need(size_t n) const;
    ByteView data_;
    size_t pos_ = 0;
};

}  // namespace cpabe
