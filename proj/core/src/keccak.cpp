#include "keccak.h"

namespace pqw {

static inline uint64_t rotl64(uint64_t x, int n) {
    return (x << n) | (x >> (64 - n));
}

static const uint64_t kRoundConst[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

static const int kRotc[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                              27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
static const int kPiln[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                              15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

void keccakf1600(uint64_t s[25]) {
    for (int round = 0; round < 24; round++) {
        uint64_t bc[5], t;

        for (int i = 0; i < 5; i++) {
            bc[i] = s[i] ^ s[i + 5] ^ s[i + 10] ^ s[i + 15] ^ s[i + 20];
        }
        for (int i = 0; i < 5; i++) {
            t = bc[(i + 4) % 5] ^ rotl64(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5) {
                s[j + i] ^= t;
            }
        }

        t = s[1];
        for (int i = 0; i < 24; i++) {
            int j = kPiln[i];
            bc[0] = s[j];
            s[j] = rotl64(t, kRotc[i]);
            t = bc[0];
        }

        for (int j = 0; j < 25; j += 5) {
            for (int i = 0; i < 5; i++) bc[i] = s[j + i];
            for (int i = 0; i < 5; i++) {
                s[j + i] = bc[i] ^ (~bc[(i + 1) % 5] & bc[(i + 2) % 5]);
            }
        }

        s[0] ^= kRoundConst[round];
    }
}

static inline void xor_byte(uint64_t* s, size_t i, uint8_t v) {
    s[i / 8] ^= uint64_t(v) << (8 * (i % 8));
}

static inline uint8_t get_byte(const uint64_t* s, size_t i) {
    return uint8_t(s[i / 8] >> (8 * (i % 8)));
}

void KeccakSponge::absorb(const uint8_t* in, size_t len) {
    for (size_t i = 0; i < len; i++) {
        xor_byte(s, pos++, in[i]);
        if (pos == rate) {
            keccakf1600(s);
            pos = 0;
        }
    }
}

void KeccakSponge::finalize() {
    xor_byte(s, pos, ds);
    xor_byte(s, rate - 1, 0x80);
    keccakf1600(s);
    pos = 0;
    squeezing = true;
}

void KeccakSponge::squeeze(uint8_t* out, size_t len) {
    for (size_t i = 0; i < len; i++) {
        if (pos == rate) {
            keccakf1600(s);
            pos = 0;
        }
        out[i] = get_byte(s, pos++);
    }
}

void sha3_256(uint8_t out[32], const uint8_t* in, size_t len) {
    KeccakSponge sp(136, 0x06);
    sp.absorb(in, len);
    sp.finalize();
    sp.squeeze(out, 32);
}

void sha3_512(uint8_t out[64], const uint8_t* in, size_t len) {
    KeccakSponge sp(72, 0x06);
    sp.absorb(in, len);
    sp.finalize();
    sp.squeeze(out, 64);
}

void shake128(uint8_t* out, size_t outlen, const uint8_t* in, size_t inlen) {
    KeccakSponge sp = make_shake128();
    sp.absorb(in, inlen);
    sp.finalize();
    sp.squeeze(out, outlen);
}

void shake256(uint8_t* out, size_t outlen, const uint8_t* in, size_t inlen) {
    KeccakSponge sp = make_shake256();
    sp.absorb(in, inlen);
    sp.finalize();
    sp.squeeze(out, outlen);
}

}  // namespace pqw
