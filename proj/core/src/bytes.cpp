#include "cpabe/bytes.h"

#include "cpabe/errors.h"

namespace cpabe {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";
constexpr char kB64Digits[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}
}  // namespace

std::string to_hex(ByteView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xF]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw Error("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error("invalid hex digit");
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

std::string base64_encode(ByteView data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        std::uint32_t v = data[i] << 16 | data[i + 1] << 8 | data[i + 2];
        out.push_back(kB64Digits[v >> 18 & 63]);
        out.push_back(kB64Digits[v >> 12 & 63]);
        out.push_back(kB64Digits[v >> 6 & 63]);
        out.push_back(kB64Digits[v & 63]);
    }
    if (i + 1 == data.size()) {
        std::uint32_t v = data[i] << 16;
        out.push_back(kB64Digits[v >> 18 & 63]);
        out.push_back(kB64Digits[v >> 12 & 63]);
        out.append("==");
    } else if (i + 2 == data.size()) {
        std::uint32_t v = data[i] << 16 | data[i + 1] << 8;
        out.push_back(kB64Digits[v >> 18 & 63]);
        out.push_back(kB64Digits[v >> 12 & 63]);
        out.push_back(kB64Digits[v >> 6 & 63]);
        out.push_back('=');
    }
    return out;
}

Bytes base64_decode(std::string_view text) {
    if (text.size() % 4 != 0) throw Error("base64 length not a multiple of 4");
    Bytes out;
    out.reserve(text.size() / 4 * 3);
    for (size_t i = 0; i < text.size(); i += 4) {
        int pad = 0;
        std::uint32_t v = 0;
        for (size_t j = 0; j < 4; ++j) {
            char c = text[i + j];
            if (c == '=') {
                if (i + 4 != text.size() || j < 2) throw Error("misplaced base64 padding");
                ++pad;
                v <<= 6;
                continue;
            }
            if (pad) throw Error("misplaced base64 padding");
            int d = b64_value(c);
            if (d < 0) throw Error("invalid base64 digit");
            v = v << 6 | static_cast<std::uint32_t>(d);
        }
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>(v >> 8));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

void ByteWriter::u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::var16(ByteView data) {
    if (data.size() > 0xFFFF) throw Error("var16 payload too large");
    u16(static_cast<std::uint16_t>(data.size()));
    raw(data);
}

void ByteWriter::var16(std::string_view text) {
    var16(ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void ByteReader::need(size_t n) const {
    if (pos_ + n > data_.size()) throw CorruptContainer("truncated input");
}

std::uint8_t ByteReader::u8() {
    need(1);
    return data_[pos_++];
}

std::uint16_t ByteReader::u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | data_[pos_ + i];
    pos_ += 4;
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | data_[pos_ + i];
    pos_ += 8;
    return v;
}

ByteView ByteReader::raw(size_t n) {
    need(n);
    ByteView v = data_.subspan(pos_, n);
    pos_ += n;
    return v;
}

ByteView ByteReader::var16() {
    size_t n = u16();
    return raw(n);
}

std::string ByteReader::var16_string() {
    ByteView v = var16();
    return std::string(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace cpabe
