#pragma once

#include <array>
#include <string>

#include "pqw/bytes.h"

namespace pqw {

struct BcryptParams {
    int cost = 12;
    std::array<uint8_t, 16> salt{};
    Bytes message;
};

struct BcryptResult {
    std::array<uint8_t, 24> raw;
    std::string encoded;  // "$2b$<cost>$<22-char salt><31-char digest>"
};

// Standard 2b-variant bcrypt. Messages longer than 72 bytes are replaced by
// the 64-char lowercase hex of their sha256 before key setup; the key is the
// message plus a terminating NUL, truncated at 72 bytes.
// Throws Error(ParameterError) for cost outside [4, 31].
BcryptResult bcrypt_hash(const BcryptParams& params);

}  // namespace pqw
