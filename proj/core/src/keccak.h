#pragma once

#include <cstddef>
#include <cstdint>

// SHA-3 / SHAKE sponge. Internal to the core library; the KEM and the
// test suite are the only intended consumers.

namespace pqw {

void keccakf1600(uint64_t s[25]);

struct KeccakSponge {
    uint64_t s[25] = {};
    size_t pos = 0;
    size_t rate;  // bytes
    uint8_t ds;   // domain separation byte
    bool squeezing = false;

    KeccakSponge(size_t rate_bytes, uint8_t domain) : rate(rate_bytes), ds(domain) {}

    void absorb(const uint8_t* in, size_t len);
    void finalize();  // pad, permute, switch to squeezing
    void squeeze(uint8_t* out, size_t len);
};

inline KeccakSponge make_shake128() { return KeccakSponge(168, 0x1f); }
inline KeccakSponge make_shake256() { return KeccakSponge(136, 0x1f); }

void sha3_256(uint8_t out[32], const uint8_t* in, size_t len);
void sha3_512(uint8_t out[64], const uint8_t* in, size_t len);
void shake128(uint8_t* out, size_t outlen, const uint8_t* in, size_t inlen);
void shake256(uint8_t* out, size_t outlen, const uint8_t* in, size_t inlen);

}  // namespace pqw
