#include "pqw/kem.h"

#include <cstring>

#include "keccak.h"
#include "pqw/error.h"

namespace pqw {
namespace {

constexpr int kN = 256;
constexpr int kK = 2;
constexpr int16_t kQ = 3329;
constexpr int kEta1 = 3;
constexpr int kEta2 = 2;
constexpr int kSymBytes = 32;
constexpr int kPolyBytes = 384;
constexpr int kPolyVecBytes = kK * kPolyBytes;
constexpr int kPolyCompressedBytes = 128;           // 4 bits per coefficient
constexpr int kPolyVecCompressedBytes = kK * 320;   // 10 bits per coefficient
constexpr int kIndcpaPkBytes = kPolyVecBytes + kSymBytes;
constexpr int kIndcpaSkBytes = kPolyVecBytes;
constexpr int kCtBytes = kPolyVecCompressedBytes + kPolyCompressedBytes;
constexpr int16_t kQInv = -3327;   // q^-1 mod 2^16
constexpr int16_t kMont = -1044;   // 2^16 mod q
constexpr int kXofBlockBytes = 168;
constexpr int kGenMatrixBlocks =
    (12 * kN / 8 * (1 << 12) / kQ + kXofBlockBytes) / kXofBlockBytes;

struct Poly {
    int16_t c[kN];
};

struct PolyVec {
    Poly v[kK];
};

// returns a*R^-1 mod q in (-q, q), R = 2^16
int16_t montgomery_reduce(int32_t a) {
    int16_t t = int16_t(int32_t(int16_t(a)) * kQInv);
    return int16_t((a - int32_t(t) * kQ) >> 16);
}

// centered representative in [-(q-1)/2, (q-1)/2]
int16_t barrett_reduce(int16_t a) {
    const int16_t v = int16_t(((1 << 26) + kQ / 2) / kQ);
    int16_t t = int16_t((int32_t(v) * a + (1 << 25)) >> 26);
    return int16_t(a - t * kQ);
}

int16_t fqmul(int16_t a, int16_t b) {
    return montgomery_reduce(int32_t(a) * b);
}

struct ZetaTable {
    int16_t z[128];
    ZetaTable() {
        int16_t tmp[128];
        tmp[0] = kMont;
        for (int i = 1; i < 128; i++) {
            tmp[i] = fqmul(tmp[i - 1], int16_t(int32_t(kMont) * 17 % kQ));
        }
        for (int i = 0; i < 128; i++) {
            int rev = 0;
            for (int b = 0; b < 7; b++) {
                rev |= ((i >> b) & 1) << (6 - b);
            }
            int16_t v = tmp[rev];
            if (v > kQ / 2) v = int16_t(v - kQ);
            if (v < -kQ / 2) v = int16_t(v + kQ);
            z[i] = v;
        }
    }
};

const ZetaTable kZetas;

void ntt(int16_t r[kN]) {
    int k = 1;
    for (int len = 128; len >= 2; len >>= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            int16_t zeta = kZetas.z[k++];
            for (int j = start; j < start + len; j++) {
                int16_t t = fqmul(zeta, r[j + len]);
                r[j + len] = int16_t(r[j] - t);
                r[j] = int16_t(r[j] + t);
            }
        }
    }
}

void invntt(int16_t r[kN]) {
    const int16_t f = 1441;  // mont^2 / 128
    int k = 127;
    for (int len = 2; len <= 128; len <<= 1) {
        for (int start = 0; start < kN; start += 2 * len) {
            int16_t zeta = kZetas.z[k--];
            for (int j = start; j < start + len; j++) {
                int16_t t = r[j];
                r[j] = barrett_reduce(int16_t(t + r[j + len]));
                r[j + len] = int16_t(r[j + len] - t);
                r[j + len] = fqmul(zeta, r[j + len]);
            }
        }
    }
    for (int j = 0; j < kN; j++) {
        r[j] = fqmul(r[j], f);
    }
}

// product in Zq[X]/(X^2 - zeta)
void basemul(int16_t r[2], const int16_t a[2], const int16_t b[2], int16_t zeta) {
    r[0] = fqmul(a[1], b[1]);
    r[0] = fqmul(r[0], zeta);
    r[0] = int16_t(r[0] + fqmul(a[0], b[0]));
    r[1] = fqmul(a[0], b[1]);
    r[1] = int16_t(r[1] + fqmul(a[1], b[0]));
}

void poly_reduce(Poly& r) {
    for (int i = 0; i < kN; i++) r.c[i] = barrett_reduce(r.c[i]);
}

void poly_add(Poly& r, const Poly& a, const Poly& b) {
    for (int i = 0; i < kN; i++) r.c[i] = int16_t(a.c[i] + b.c[i]);
}

void poly_sub(Poly& r, const Poly& a, const Poly& b) {
    for (int i = 0; i < kN; i++) r.c[i] = int16_t(a.c[i] - b.c[i]);
}

void poly_ntt(Poly& r) {
    ntt(r.c);
    poly_reduce(r);
}

void poly_invntt_tomont(Poly& r) { invntt(r.c); }

void poly_tomont(Poly& r) {
    const int16_t f = int16_t((1ULL << 32) % uint64_t(kQ));
    for (int i = 0; i < kN; i++) {
        r.c[i] = montgomery_reduce(int32_t(r.c[i]) * f);
    }
}

void poly_basemul_montgomery(Poly& r, const Poly& a, const Poly& b) {
    for (int i = 0; i < kN / 4; i++) {
        basemul(&r.c[4 * i], &a.c[4 * i], &b.c[4 * i], kZetas.z[64 + i]);
        basemul(&r.c[4 * i + 2], &a.c[4 * i + 2], &b.c[4 * i + 2],
                int16_t(-kZetas.z[64 + i]));
    }
}

void polyvec_ntt(PolyVec& r) {
    for (int i = 0; i < kK; i++) poly_ntt(r.v[i]);
}

void polyvec_invntt_tomont(PolyVec& r) {
    for (int i = 0; i < kK; i++) poly_invntt_tomont(r.v[i]);
}

void polyvec_add(PolyVec& r, const PolyVec& a, const PolyVec& b) {
    for (int i = 0; i < kK; i++) poly_add(r.v[i], a.v[i], b.v[i]);
}

void polyvec_reduce(PolyVec& r) {
    for (int i = 0; i < kK; i++) poly_reduce(r.v[i]);
}

void polyvec_basemul_acc_montgomery(Poly& r, const PolyVec& a, const PolyVec& b) {
    Poly t;
    poly_basemul_montgomery(r, a.v[0], b.v[0]);
    for (int i = 1; i < kK; i++) {
        poly_basemul_montgomery(t, a.v[i], b.v[i]);
        poly_add(r, r, t);
    }
    poly_reduce(r);
}

// map to positive standard representative
inline uint16_t to_unsigned(int16_t a) {
    return uint16_t(a + ((a >> 15) & kQ));
}

void poly_tobytes(uint8_t r[kPolyBytes], const Poly& a) {
    for (int i = 0; i < kN / 2; i++) {
        uint16_t t0 = to_unsigned(a.c[2 * i]);
        uint16_t t1 = to_unsigned(a.c[2 * i + 1]);
        r[3 * i + 0] = uint8_t(t0);
        r[3 * i + 1] = uint8_t((t0 >> 8) | (t1 << 4));
        r[3 * i + 2] = uint8_t(t1 >> 4);
    }
}

void poly_frombytes(Poly& r, const uint8_t a[kPolyBytes]) {
    for (int i = 0; i < kN / 2; i++) {
        r.c[2 * i] = int16_t((a[3 * i] | (uint16_t(a[3 * i + 1]) << 8)) & 0xfff);
        r.c[2 * i + 1] =
            int16_t(((a[3 * i + 1] >> 4) | (uint16_t(a[3 * i + 2]) << 4)) & 0xfff);
    }
}

void poly_compress(uint8_t r[kPolyCompressedBytes], const Poly& a) {
    uint8_t t[8];
    for (int i = 0; i < kN / 8; i++) {
        for (int j = 0; j < 8; j++) {
            uint16_t u = to_unsigned(a.c[8 * i + j]);
            t[j] = uint8_t(((uint32_t(u) << 4) + kQ / 2) / kQ) & 15;
        }
        r[4 * i + 0] = uint8_t(t[0] | (t[1] << 4));
        r[4 * i + 1] = uint8_t(t[2] | (t[3] << 4));
        r[4 * i + 2] = uint8_t(t[4] | (t[5] << 4));
        r[4 * i + 3] = uint8_t(t[6] | (t[7] << 4));
    }
}

void poly_decompress(Poly& r, const uint8_t a[kPolyCompressedBytes]) {
    for (int i = 0; i < kN / 2; i++) {
        r.c[2 * i + 0] = int16_t((uint16_t(a[i] & 15) * kQ + 8) >> 4);
        r.c[2 * i + 1] = int16_t((uint16_t(a[i] >> 4) * kQ + 8) >> 4);
    }
}

void polyvec_tobytes(uint8_t r[kPolyVecBytes], const PolyVec& a) {
    for (int i = 0; i < kK; i++) poly_tobytes(r + i * kPolyBytes, a.v[i]);
}

void polyvec_frombytes(PolyVec& r, const uint8_t a[kPolyVecBytes]) {
    for (int i = 0; i < kK; i++) poly_frombytes(r.v[i], a + i * kPolyBytes);
}

void polyvec_compress(uint8_t r[kPolyVecCompressedBytes], const PolyVec& a) {
    uint16_t t[4];
    for (int i = 0; i < kK; i++) {
        for (int j = 0; j < kN / 4; j++) {
            for (int k = 0; k < 4; k++) {
                uint16_t u = to_unsigned(a.v[i].c[4 * j + k]);
                t[k] = uint16_t(((uint32_t(u) << 10) + kQ / 2) / kQ) & 0x3ff;
            }
            r[0] = uint8_t(t[0]);
            r[1] = uint8_t((t[0] >> 8) | (t[1] << 2));
            r[2] = uint8_t((t[1] >> 6) | (t[2] << 4));
            r[3] = uint8_t((t[2] >> 4) | (t[3] << 6));
            r[4] = uint8_t(t[3] >> 2);
            r += 5;
        }
    }
}

void polyvec_decompress(PolyVec& r, const uint8_t a[kPolyVecCompressedBytes]) {
    uint16_t t[4];
    for (int i = 0; i < kK; i++) {
        for (int j = 0; j < kN / 4; j++) {
            t[0] = uint16_t(a[0] | (uint16_t(a[1]) << 8));
            t[1] = uint16_t((a[1] >> 2) | (uint16_t(a[2]) << 6));
            t[2] = uint16_t((a[2] >> 4) | (uint16_t(a[3]) << 4));
            t[3] = uint16_t((a[3] >> 6) | (uint16_t(a[4]) << 2));
            a += 5;
            for (int k = 0; k < 4; k++) {
                r.v[i].c[4 * j + k] =
                    int16_t((uint32_t(t[k] & 0x3ff) * kQ + 512) >> 10);
            }
        }
    }
}

void poly_frommsg(Poly& r, const uint8_t msg[kSymBytes]) {
    for (int i = 0; i < kN / 8; i++) {
        for (int j = 0; j < 8; j++) {
            int16_t mask = int16_t(-int16_t((msg[i] >> j) & 1));
            r.c[8 * i + j] = int16_t(mask & ((kQ + 1) / 2));
        }
    }
}

void poly_tomsg(uint8_t msg[kSymBytes], const Poly& a) {
    for (int i = 0; i < kN / 8; i++) {
        msg[i] = 0;
        for (int j = 0; j < 8; j++) {
            uint16_t t = to_unsigned(a.c[8 * i + j]);
            t = (uint16_t(t << 1) + kQ / 2) / kQ & 1;
            msg[i] = uint8_t(msg[i] | (t << j));
        }
    }
}

void cbd2(Poly& r, const uint8_t buf[2 * kN / 4]) {
    for (int i = 0; i < kN / 8; i++) {
        uint32_t t = uint32_t(buf[4 * i]) | (uint32_t(buf[4 * i + 1]) << 8) |
                     (uint32_t(buf[4 * i + 2]) << 16) |
                     (uint32_t(buf[4 * i + 3]) << 24);
        uint32_t d = (t & 0x55555555) + ((t >> 1) & 0x55555555);
        for (int j = 0; j < 8; j++) {
            int16_t a = int16_t((d >> (4 * j)) & 0x3);
            int16_t b = int16_t((d >> (4 * j + 2)) & 0x3);
            r.c[8 * i + j] = int16_t(a - b);
        }
    }
}

void cbd3(Poly& r, const uint8_t buf[3 * kN / 4]) {
    for (int i = 0; i < kN / 4; i++) {
        uint32_t t = uint32_t(buf[3 * i]) | (uint32_t(buf[3 * i + 1]) << 8) |
                     (uint32_t(buf[3 * i + 2]) << 16);
        uint32_t d = (t & 0x00249249) + ((t >> 1) & 0x00249249) +
                     ((t >> 2) & 0x00249249);
        for (int j = 0; j < 4; j++) {
            int16_t a = int16_t((d >> (6 * j)) & 0x7);
            int16_t b = int16_t((d >> (6 * j + 3)) & 0x7);
            r.c[4 * i + j] = int16_t(a - b);
        }
    }
}

void prf(uint8_t* out, size_t outlen, const uint8_t key[kSymBytes], uint8_t nonce) {
    uint8_t extkey[kSymBytes + 1];
    std::memcpy(extkey, key, kSymBytes);
    extkey[kSymBytes] = nonce;
    shake256(out, outlen, extkey, sizeof(extkey));
}

void poly_getnoise_eta1(Poly& r, const uint8_t seed[kSymBytes], uint8_t nonce) {
    uint8_t buf[kEta1 * kN / 4];
    prf(buf, sizeof(buf), seed, nonce);
    cbd3(r, buf);
}

void poly_getnoise_eta2(Poly& r, const uint8_t seed[kSymBytes], uint8_t nonce) {
    uint8_t buf[kEta2 * kN / 4];
    prf(buf, sizeof(buf), seed, nonce);
    cbd2(r, buf);
}

unsigned rej_uniform(int16_t* r, unsigned len, const uint8_t* buf, unsigned buflen) {
    unsigned ctr = 0, pos = 0;
    while (ctr < len && pos + 3 <= buflen) {
        uint16_t val0 = uint16_t(buf[pos] | (uint16_t(buf[pos + 1]) << 8)) & 0xfff;
        uint16_t val1 =
            uint16_t((buf[pos + 1] >> 4) | (uint16_t(buf[pos + 2]) << 4)) & 0xfff;
        pos += 3;
        if (val0 < kQ) r[ctr++] = int16_t(val0);
        if (ctr < len && val1 < kQ) r[ctr++] = int16_t(val1);
    }
    return ctr;
}

// A[i][j] = parse(XOF(seed, j, i)); transposed swaps the indices
void gen_matrix(PolyVec a[kK], const uint8_t seed[kSymBytes], bool transposed) {
    uint8_t buf[kGenMatrixBlocks * kXofBlockBytes + 2];
    for (int i = 0; i < kK; i++) {
        for (int j = 0; j < kK; j++) {
            KeccakSponge xof = make_shake128();
            uint8_t ext[kSymBytes + 2];
            std::memcpy(ext, seed, kSymBytes);
            ext[kSymBytes] = uint8_t(transposed ? i : j);
            ext[kSymBytes + 1] = uint8_t(transposed ? j : i);
            xof.absorb(ext, sizeof(ext));
            xof.finalize();

            xof.squeeze(buf, kGenMatrixBlocks * kXofBlockBytes);
            unsigned buflen = kGenMatrixBlocks * kXofBlockBytes;
            unsigned ctr = rej_uniform(a[i].v[j].c, kN, buf, buflen);
            while (ctr < kN) {
                unsigned off = buflen % 3;
                for (unsigned k = 0; k < off; k++) {
                    buf[k] = buf[buflen - off + k];
                }
                xof.squeeze(buf + off, kXofBlockBytes);
                buflen = off + kXofBlockBytes;
                ctr += rej_uniform(a[i].v[j].c + ctr, kN - ctr, buf, buflen);
            }
        }
    }
}

void indcpa_keypair(uint8_t pk[kIndcpaPkBytes], uint8_t sk[kIndcpaSkBytes],
                    const uint8_t d[kSymBytes]) {
    uint8_t buf[2 * kSymBytes];
    sha3_512(buf, d, kSymBytes);
    const uint8_t* publicseed = buf;
    const uint8_t* noiseseed = buf + kSymBytes;

    PolyVec a[kK], e, pkpv, skpv;
    gen_matrix(a, publicseed, false);

    uint8_t nonce = 0;
    for (int i = 0; i < kK; i++) poly_getnoise_eta1(skpv.v[i], noiseseed, nonce++);
    for (int i = 0; i < kK; i++) poly_getnoise_eta1(e.v[i], noiseseed, nonce++);

    polyvec_ntt(skpv);
    polyvec_ntt(e);

    for (int i = 0; i < kK; i++) {
        polyvec_basemul_acc_montgomery(pkpv.v[i], a[i], skpv);
        poly_tomont(pkpv.v[i]);
    }
    polyvec_add(pkpv, pkpv, e);
    polyvec_reduce(pkpv);

    polyvec_tobytes(sk, skpv);
    polyvec_tobytes(pk, pkpv);
    std::memcpy(pk + kPolyVecBytes, publicseed, kSymBytes);
}

void indcpa_enc(uint8_t c[kCtBytes], const uint8_t m[kSymBytes],
                const uint8_t pk[kIndcpaPkBytes], const uint8_t coins[kSymBytes]) {
    PolyVec sp, pkpv, ep, at[kK], b;
    Poly v, k, epp;
    uint8_t seed[kSymBytes];

    polyvec_frombytes(pkpv, pk);
    std::memcpy(seed, pk + kPolyVecBytes, kSymBytes);
    poly_frommsg(k, m);
    gen_matrix(at, seed, true);

    uint8_t nonce = 0;
    for (int i = 0; i < kK; i++) poly_getnoise_eta1(sp.v[i], coins, nonce++);
    for (int i = 0; i < kK; i++) poly_getnoise_eta2(ep.v[i], coins, nonce++);
    poly_getnoise_eta2(epp, coins, nonce++);

    polyvec_ntt(sp);

    for (int i = 0; i < kK; i++) {
        polyvec_basemul_acc_montgomery(b.v[i], at[i], sp);
    }
    polyvec_basemul_acc_montgomery(v, pkpv, sp);

    polyvec_invntt_tomont(b);
    poly_invntt_tomont(v);

    polyvec_add(b, b, ep);
    poly_add(v, v, epp);
    poly_add(v, v, k);
    polyvec_reduce(b);
    poly_reduce(v);

    polyvec_compress(c, b);
    poly_compress(c + kPolyVecCompressedBytes, v);
}

void indcpa_dec(uint8_t m[kSymBytes], const uint8_t c[kCtBytes],
                const uint8_t sk[kIndcpaSkBytes]) {
    PolyVec b, skpv;
    Poly v, mp;

    polyvec_decompress(b, c);
    poly_decompress(v, c + kPolyVecCompressedBytes);
    polyvec_frombytes(skpv, sk);

    polyvec_ntt(b);
    polyvec_basemul_acc_montgomery(mp, skpv, b);
    poly_invntt_tomont(mp);

    poly_sub(mp, v, mp);
    poly_reduce(mp);
    poly_tomsg(m, mp);
}

uint8_t bytes_differ(const uint8_t* a, const uint8_t* b, size_t len) {
    uint8_t r = 0;
    for (size_t i = 0; i < len; i++) r |= a[i] ^ b[i];
    return uint8_t(uint64_t(-uint64_t(r)) >> 63);
}

void cmov(uint8_t* r, const uint8_t* x, size_t len, uint8_t b) {
    b = uint8_t(-b);
    for (size_t i = 0; i < len; i++) {
        r[i] = uint8_t(r[i] ^ (b & (r[i] ^ x[i])));
    }
}

}  // namespace

Digest32 seed_from_phi(const std::array<uint16_t, 16>& phi) {
    Bytes msg = to_bytes("pqw-seed-v1");
    msg.push_back(0x1f);
    for (uint16_t c : phi) {
        if (c >= 16411) {
            throw Error(ErrorCode::ParameterError, "coefficient out of range");
        }
        msg.push_back(uint8_t(c >> 8));
        msg.push_back(uint8_t(c & 0xff));
    }
    return sha256(msg);
}

KemKeyPair kem_keygen_dz(const Bytes& d, const Bytes& z) {
    if (d.size() != kSymBytes || z.size() != kSymBytes) {
        throw Error(ErrorCode::ParameterError, "keygen coins must be 32 bytes each");
    }
    KemKeyPair kp;
    kp.pk.resize(kKemPublicKeyBytes);
    kp.sk.resize(kKemSecretKeyBytes);
    indcpa_keypair(kp.pk.data(), kp.sk.data(), d.data());
    std::memcpy(kp.sk.data() + kIndcpaSkBytes, kp.pk.data(), kIndcpaPkBytes);
    sha3_256(kp.sk.data() + kKemSecretKeyBytes - 2 * kSymBytes, kp.pk.data(),
             kKemPublicKeyBytes);
    std::memcpy(kp.sk.data() + kKemSecretKeyBytes - kSymBytes, z.data(), kSymBytes);
    return kp;
}

KemKeyPair kem_keygen(const Bytes& seed) {
    if (seed.size() != kKemSeedBytes) {
        throw Error(ErrorCode::ParameterError, "seed must be 32 bytes");
    }
    uint8_t buf[64];
    sha3_512(buf, seed.data(), seed.size());
    KemKeyPair kp = kem_keygen_dz(Bytes(buf, buf + 32), Bytes(buf + 32, buf + 64));
    kp.seed = seed;
    return kp;
}

KemEncapsResult kem_encaps(const Bytes& pk, const Bytes& coins) {
    if (pk.size() != kKemPublicKeyBytes) {
        throw Error(ErrorCode::ParameterError, "public key must be 800 bytes");
    }
    if (coins.size() != kSymBytes) {
        throw Error(ErrorCode::ParameterError, "coins must be 32 bytes");
    }
    uint8_t buf[2 * kSymBytes];
    uint8_t kr[2 * kSymBytes];

    sha3_256(buf, coins.data(), coins.size());
    sha3_256(buf + kSymBytes, pk.data(), pk.size());
    sha3_512(kr, buf, sizeof(buf));

    KemEncapsResult out;
    out.ct.resize(kKemCiphertextBytes);
    indcpa_enc(out.ct.data(), buf, pk.data(), kr + kSymBytes);

    sha3_256(kr + kSymBytes, out.ct.data(), out.ct.size());
    out.ss.resize(kKemSharedSecretBytes);
    shake256(out.ss.data(), out.ss.size(), kr, sizeof(kr));
    return out;
}

Bytes kem_decaps(const Bytes& ct, const Bytes& sk) {
    if (ct.size() != kKemCiphertextBytes) {
        throw Error(ErrorCode::ParameterError, "ciphertext must be 768 bytes");
    }
    if (sk.size() != kKemSecretKeyBytes) {
        throw Error(ErrorCode::ParameterError, "secret key must be 1632 bytes");
    }
    uint8_t buf[2 * kSymBytes];
    uint8_t kr[2 * kSymBytes];
    uint8_t cmp[kCtBytes];
    const uint8_t* pk = sk.data() + kIndcpaSkBytes;

    indcpa_dec(buf, ct.data(), sk.data());
    std::memcpy(buf + kSymBytes, sk.data() + kKemSecretKeyBytes - 2 * kSymBytes,
                kSymBytes);
    sha3_512(kr, buf, sizeof(buf));

    indcpa_enc(cmp, buf, pk, kr + kSymBytes);
    uint8_t fail = bytes_differ(ct.data(), cmp, kCtBytes);

    sha3_256(kr + kSymBytes, ct.data(), ct.size());
    cmov(kr, sk.data() + kKemSecretKeyBytes - kSymBytes, kSymBytes, fail);

    Bytes ss(kKemSharedSecretBytes);
    shake256(ss.data(), ss.size(), kr, sizeof(kr));
    return ss;
}

}  // namespace pqw
