#include "pqw/bytes.h"

#include <array>

#include "pqw/error.h"

namespace pqw {

static const char kHexDigits[] = "0123456789abcdef";

std::string to_hex(const uint8_t* data, size_t len) {
    std::string out;
    out.reserve(2 * len);
    for (size_t i = 0; i < len; i++) {
        out.push_back(kHexDigits[data[i] >> 4]);
        out.push_back(kHexDigits[data[i] & 0x0f]);
    }
    return out;
}

std::string to_hex(const Bytes& data) {
    return to_hex(data.data(), data.size());
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw Error(ErrorCode::ParameterError, "hex string has odd length");
    }
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); i++) {
        int hi = hex_val(hex[2 * i]);
        int lo = hex_val(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(ErrorCode::ParameterError, "invalid hex character");
        }
        out[i] = uint8_t(hi << 4 | lo);
    }
    return out;
}

bool ct_equal(const uint8_t* a, size_t alen, const uint8_t* b, size_t blen) {
    uint8_t diff = alen == blen ? 0 : 1;
    size_t n = alen < blen ? alen : blen;
    for (size_t i = 0; i < n; i++) {
        diff |= uint8_t(a[i] ^ b[i]);
    }
    return diff == 0;
}

bool ct_equal(const Bytes& a, const Bytes& b) {
    return ct_equal(a.data(), a.size(), b.data(), b.size());
}

uint32_t crc32(const uint8_t* data, size_t len) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; i++) {
            uint32_t c = i;
            for (int k = 0; k < 8; k++) {
                c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            }
            t[i] = c;
        }
        return t;
    }();
    uint32_t crc = 0xffffffffu;
    for (size_t i = 0; i < len; i++) {
        crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
    }
    return crc ^ 0xffffffffu;
}

uint32_t crc32(const Bytes& data) {
    return crc32(data.data(), data.size());
}

}  // namespace pqw
