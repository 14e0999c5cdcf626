#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bytes.h"
#include "lattice.h"
#include "rng.h"
#include "sha256.h"

namespace pqw {

inline constexpr uint32_t kShareQ = 16411;  // smallest prime above 2^14

using ShareVec = std::array<uint16_t, kLatticeM>;

// General noisy threshold scheme ------------------------------------------

struct LtsssPublicParams {
    int m = 0;        // secret-vector dimension
    int t = 0;        // threshold
    int n = 0;        // share count
    uint32_t Q = 0;   // prime modulus, < 2^16
    int eps_max = 0;  // per-share noise bound
    std::vector<std::vector<uint32_t>> l_vectors;  // n vectors in Z_Q^m
};

// l vectors are expanded from seed by a hash counter stream with rejection
// sampling; entry 0 of each vector is redrawn until nonzero and duplicate
// vectors are discarded.
LtsssPublicParams gen_public_params(int m, int t, int n, uint32_t Q, int eps_max,
                                    const Bytes& seed);

struct LtsssInstance {
    std::vector<uint32_t> a;       // a[0] is the secret
    std::vector<int32_t> noises;   // |eps_i| <= eps_max
    std::vector<uint32_t> shares;  // y_i = (<l_i, a> + eps_i) mod Q
};

LtsssInstance share_secret(uint32_t secret, const LtsssPublicParams& p, Rng& rng);

// Embedding of t shares into a (t+m)-dimensional closest-vector problem.
// Rows 0..m-1 carry the weighted l columns plus an identity tail for the
// a coordinates; rows m..m+t-1 are the weighted qZ directions. The weight
// W = Q*ceil(sqrt(m)) makes any reduction of the share residuals dominate
// the full range of the a-coordinate term.
struct ReconstructionProblem {
    std::vector<std::vector<long long>> basis;  // row convention
    std::vector<long long> target;
    long long weight = 0;
};

ReconstructionProblem build_reconstruction_problem(
    const std::vector<std::pair<int, uint32_t>>& shares,
    const LtsssPublicParams& p);

// Exact closest-vector search on the reduced basis (Babai start plus a
// bounded depth-first enumeration). Ties are resolved by smallest secret,
// then lexicographically smallest a. Throws ReconstructFailed when the
// best lattice point still leaves a summed residual above eps_max*t.
uint32_t reconstruct_secret(const std::vector<std::pair<int, uint32_t>>& shares,
                            const LtsssPublicParams& p);

// Wallet (2,3) instance ----------------------------------------------------

struct WalletShareSet {
    ShareVec s_rho{};   // share at x=1
    ShareVec s_mu{};    // share at x=2
    ShareVec backup{};  // share at x=3
    ShareVec phi{};     // line evaluated at x=0
};

struct IndexedShare {
    int x = 0;
    ShareVec vec{};
};

std::pair<ShareVec, ShareVec> shares_from_inputs(const LatticePoint& rho_prime,
                                                 const Digest32& mu);

WalletShareSet wallet_combine(const ShareVec& s_rho, const ShareVec& s_mu,
                              uint32_t modulus = kShareQ);

// Lagrange interpolation at 0 from any two of the three shares.
ShareVec wallet_recover(const IndexedShare& a, const IndexedShare& b,
                        uint32_t modulus = kShareQ);

}  // namespace pqw
