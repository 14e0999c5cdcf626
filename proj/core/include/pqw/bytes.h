#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pqw {

using Bytes = std::vector<uint8_t>;

std::string to_hex(const uint8_t* data, size_t len);
std::string to_hex(const Bytes& data);

// Throws Error(ParameterError) on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

// Constant-time comparison; lengths may differ (result false, still scans).
bool ct_equal(const uint8_t* a, size_t alen, const uint8_t* b, size_t blen);
bool ct_equal(const Bytes& a, const Bytes& b);

uint32_t crc32(const uint8_t* data, size_t len);
uint32_t crc32(const Bytes& data);

}  // namespace pqw
