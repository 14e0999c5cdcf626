#pragma once

#include <array>
#include <cstdint>

#include "bytes.h"
#include "rng.h"
#include "sha256.h"

namespace pqw {

inline constexpr int kLatticeM = 16;

using LatticeVec = std::array<uint16_t, kLatticeM>;
using SignedVec = std::array<int32_t, kLatticeM>;
using Bits256 = std::array<uint8_t, 32>;

struct LatticeParams {
    int d = 256;          // hash bit-length
    uint32_t q = 16384;   // 2^14, coefficient modulus
    int s = 512;          // legacy binary-vector length
    double sigma = 0.125;
    int m = kLatticeM;    // d / 16
    uint32_t q0 = 8192;   // q / 2
    uint32_t sigma_int = 1024;  // q0 * sigma, integer Gaussian std-dev
    uint32_t share_q = 16411;   // smallest prime above q, used by the sharing layer
};

LatticeParams default_params();

struct LatticePoint {
    LatticeVec coeffs{};
};

// Client-side blinding secrets for one exchange. Never transmitted.
struct BlindState {
    SignedVec delta1{};
    Bits256 omega1{};
    LatticeVec b{};  // mask_vector(delta1, omega1)
};

enum class BlindStage { ClientBlinded, ServerPadded };

struct BlindedPoint {
    LatticeVec tau{};
    BlindStage stage = BlindStage::ClientBlinded;
};

// Server-side pad inputs, persisted verbatim so the pad is reproducible.
struct ServerPadSource {
    SignedVec delta2{};
    Bits256 omega2{};
};

// rho[j] = big-endian 16-bit word j of eta, reduced mod q.
LatticePoint hash_to_lattice_point(const Bytes& eta, const LatticeParams& p);
LatticePoint hash_to_lattice_point(const Digest32& eta, const LatticeParams& p);

// mask[j] = (word j of omega, least-significant bit first, + delta[j]) mod q.
LatticeVec mask_vector(const SignedVec& delta, const Bits256& omega,
                       const LatticeParams& p);

BlindState sample_blind_state(Rng& rng, const LatticeParams& p);
ServerPadSource sample_pad_source(Rng& rng, const LatticeParams& p);

BlindedPoint blind_point(const LatticePoint& rho, const BlindState& st,
                         const LatticeParams& p);
BlindedPoint pad_point(const BlindedPoint& tau1, const ServerPadSource& src,
                       const LatticeParams& p);
LatticePoint unblind_point(const BlindedPoint& tau2, const BlindState& st,
                           const LatticeParams& p);

struct EuclidResult {
    long long g;
    long long x;
    long long y;  // a*x + n*y = g
};

EuclidResult extended_euclid(long long a, long long n);

// Inverse of a mod n; throws NoInverse when gcd(a, n) != 1.
long long mod_inverse(long long a, long long n);

// Inverse standard normal CDF (Wichura's PPND16), u in (0, 1).
double normal_quantile(double u);

// Round-to-nearest integer Gaussian draw, mean 0, via inverse-CDF over
// one 64-bit uniform word. Ties round half up.
int32_t sample_gaussian_int(Rng& rng, double stddev);

}  // namespace pqw
