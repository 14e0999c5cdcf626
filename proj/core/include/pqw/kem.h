#pragma once

#include <array>
#include <cstdint>

#include "bytes.h"
#include "sha256.h"

namespace pqw {

// Kyber-512: ring degree 256, rank 2, modulus 3329, eta1=3, eta2=2,
// ciphertext compression (10, 4).
inline constexpr size_t kKemPublicKeyBytes = 800;
inline constexpr size_t kKemSecretKeyBytes = 1632;
inline constexpr size_t kKemCiphertextBytes = 768;
inline constexpr size_t kKemSharedSecretBytes = 32;
inline constexpr size_t kKemSeedBytes = 32;

struct KemKeyPair {
    Bytes pk;
    Bytes sk;
    Bytes seed;  // 32-byte input the pair was derived from; empty for the dz form
};

struct KemEncapsResult {
    Bytes ct;
    Bytes ss;
};

// Maps a 16-coefficient secret (entries < 16411) to a keygen seed.
Digest32 seed_from_phi(const std::array<uint16_t, 16>& phi);

// Deterministic keygen; internally splits SHA3-512(seed) into the CPA
// keypair coins and the implicit-rejection value.
KemKeyPair kem_keygen(const Bytes& seed);

// Keygen from explicit coins, as exercised by the known-answer tests.
KemKeyPair kem_keygen_dz(const Bytes& d, const Bytes& z);

// coins are hashed before use, so caller-visible randomness never leaks
// into the ciphertext directly.
KemEncapsResult kem_encaps(const Bytes& pk, const Bytes& coins);

// Implicit rejection: a tampered ciphertext yields a pseudorandom secret,
// not an error.
Bytes kem_decaps(const Bytes& ct, const Bytes& sk);

}  // namespace pqw
