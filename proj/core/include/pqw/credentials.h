#pragma once

#include <array>
#include <string_view>

#include "pqw/bytes.h"
#include "pqw/sha256.h"

namespace pqw {

struct CredentialDigests {
    Digest32 eta;
    Digest32 mu;
};

inline constexpr int kDefaultBcryptCost = 12;

// salt = first 16 bytes of sha256("pqw-salt-v1" 0x1f username).
std::array<uint8_t, 16> derive_salt(std::string_view username);

// sha256 of the encoded bcrypt string of message.
Digest32 credential_hash(const Bytes& message,
                         const std::array<uint8_t, 16>& salt, int cost);

// eta = credential_hash(username 0x1f pw1), mu = credential_hash(pw1 0x1f pw2),
// both salted from the username.
CredentialDigests derive_eta_mu(std::string_view username,
                                std::string_view pw1, std::string_view pw2,
                                int cost = kDefaultBcryptCost);

}  // namespace pqw
