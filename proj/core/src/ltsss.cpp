#include "pqw/ltsss.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string_view>

#include "pqw/error.h"

namespace pqw {

namespace {

bool is_prime(uint32_t v) {
    if (v < 2) return false;
    for (uint32_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

// Counter-mode sha256 stream yielding uniform values in [0, Q) by rejection
// on big-endian 16-bit reads.
class EntryStream {
  public:
    EntryStream(const Bytes& seed, uint32_t q)
        : seed_(seed), q_(q), lim_((65536u / q) * q) {}

    uint32_t next() {
        for (;;) {
            if (pos_ + 2 > buf_.size()) refill();
            uint32_t v = (uint32_t(buf_[pos_]) << 8) | buf_[pos_ + 1];
            pos_ += 2;
            if (v < lim_) return v % q_;
        }
    }

  private:
    void refill() {
        Sha256 h;
        h.update(std::string_view("pqw-ltsss-v1"));
        const uint8_t sep = 0x1f;
        h.update(&sep, 1);
        h.update(seed_);
        h.update(&sep, 1);
        uint8_t be[4] = {uint8_t(ctr_ >> 24), uint8_t(ctr_ >> 16),
                         uint8_t(ctr_ >> 8), uint8_t(ctr_)};
        h.update(be, 4);
        buf_ = h.finish();
        ++ctr_;
        pos_ = 0;
    }

    const Bytes& seed_;
    uint32_t q_;
    uint32_t lim_;
    uint32_t ctr_ = 0;
    Digest32 buf_{};
    size_t pos_ = 32;
};

using Row = std::vector<long long>;
using Matrix = std::vector<Row>;

void gram_schmidt(const Matrix& b, std::vector<std::vector<long double>>& mu,
                  std::vector<std::vector<long double>>& bs,
                  std::vector<long double>& norms) {
    const size_t d = b.size();
    mu.assign(d, std::vector<long double>(d, 0.0L));
    bs.assign(d, std::vector<long double>(d, 0.0L));
    norms.assign(d, 0.0L);
    for (size_t i = 0; i < d; ++i) {
        for (size_t c = 0; c < d; ++c) bs[i][c] = (long double)b[i][c];
        for (size_t j = 0; j < i; ++j) {
            long double dot = 0.0L;
            for (size_t c = 0; c < d; ++c) dot += (long double)b[i][c] * bs[j][c];
            mu[i][j] = dot / norms[j];
            for (size_t c = 0; c < d; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
        }
        for (size_t c = 0; c < d; ++c) norms[i] += bs[i][c] * bs[i][c];
    }
}

void lll_reduce(Matrix& b, long double delta) {
    const int d = (int)b.size();
    std::vector<std::vector<long double>> mu, bs;
    std::vector<long double> norms;
    gram_schmidt(b, mu, bs, norms);
    int k = 1;
    while (k < d) {
        for (int j = k - 1; j >= 0; --j) {
            long long r = llroundl(mu[k][j]);
            if (r != 0) {
                for (int c = 0; c < d; ++c) b[k][c] -= r * b[j][c];
                gram_schmidt(b, mu, bs, norms);
            }
        }
        if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt(b, mu, bs, norms);
            k = std::max(k - 1, 1);
        }
    }
}

struct CvpCandidate {
    std::vector<long long> a;    // m coordinates
    std::vector<long long> eps;  // t signed residuals
};

// Next trial value at one enumeration level, ordered by distance from the
// real-valued center. dir is the side tried first.
long long zig_next(long long x, long long x0, int dir) {
    if (x == x0) return x0 + dir;
    if ((x - x0) * dir > 0) return 2 * x0 - x;
    return 2 * x0 - x + dir;
}

// Exact closest-vector search: depth-first enumeration over the reduced
// basis whose first descent is Babai's nearest plane. Floating partial
// distances carry a slack margin; leaves are re-checked in exact integer
// arithmetic and ties resolved by smallest secret, then smallest a.
CvpCandidate solve_cvp(Matrix basis, const std::vector<long long>& target,
                       long long weight, int t, int m) {
    const int d = t + m;
    lll_reduce(basis, 0.99L);

    std::vector<std::vector<long double>> mu, bs;
    std::vector<long double> norms;
    gram_schmidt(basis, mu, bs, norms);

    std::vector<long double> tc(d, 0.0L);  // target in Gram-Schmidt coords
    for (int i = 0; i < d; ++i) {
        long double dot = 0.0L;
        for (int c = 0; c < d; ++c) dot += (long double)target[c] * bs[i][c];
        tc[i] = dot / norms[i];
    }

    const long double kMargin = 1024.0L;
    long double bound = std::numeric_limits<long double>::max() / 4;
    __int128 best = -1;
    std::vector<CvpCandidate> ties;

    std::vector<long double> partial(d + 1, 0.0L), center(d, 0.0L);
    std::vector<long long> x(d, 0), x0(d, 0);
    std::vector<int> dir(d, 1);

    auto enter_level = [&](int i) {
        long double c = tc[i];
        for (int j = i + 1; j < d; ++j) c -= (long double)x[j] * mu[j][i];
        center[i] = c;
        x0[i] = llroundl(c);
        dir[i] = (c >= (long double)x0[i]) ? 1 : -1;
        x[i] = x0[i];
    };

    auto eval_leaf = [&]() {
        std::vector<long long> v(d, 0);
        for (int r = 0; r < d; ++r) {
            if (x[r] == 0) continue;
            for (int c = 0; c < d; ++c) v[c] += x[r] * basis[r][c];
        }
        __int128 dist = 0;
        for (int c = 0; c < d; ++c) {
            __int128 df = (__int128)v[c] - target[c];
            dist += df * df;
        }
        if (best >= 0 && dist > best) return;
        CvpCandidate cand;
        cand.a.resize(m);
        cand.eps.resize(t);
        for (int j = 0; j < m; ++j) cand.a[j] = v[t + j];
        for (int i = 0; i < t; ++i) cand.eps[i] = (target[i] - v[i]) / weight;
        if (best < 0 || dist < best) {
            best = dist;
            bound = (long double)best + kMargin;
            ties.clear();
            ties.push_back(std::move(cand));
        } else {
            ties.push_back(std::move(cand));
        }
    };

    int i = d - 1;
    partial[d - 1] = 0.0L;
    enter_level(i);
    for (;;) {
        long double off = (long double)x[i] - center[i];
        long double cur = partial[i] + off * off * norms[i];
        if (cur <= bound) {
            if (i == 0) {
                eval_leaf();
                x[i] = zig_next(x[i], x0[i], dir[i]);
            } else {
                partial[i - 1] = cur;
                --i;
                enter_level(i);
            }
        } else {
            ++i;
            if (i == d) break;
            x[i] = zig_next(x[i], x0[i], dir[i]);
        }
    }

    auto pick = ties.begin();
    for (auto it = ties.begin() + 1; it != ties.end(); ++it) {
        if (it->a[0] != pick->a[0] ? it->a[0] < pick->a[0] : it->a < pick->a)
            pick = it;
    }
    return *pick;
}

uint32_t mod_entry(long long v, uint32_t modulus) {
    long long r = v % (long long)modulus;
    if (r < 0) r += modulus;
    return (uint32_t)r;
}

void check_share_vec(const ShareVec& v, uint32_t modulus, const char* what) {
    for (uint16_t c : v) {
        if (c >= modulus)
            throw Error(ErrorCode::ParameterError,
                        std::string(what) + " coefficient out of range");
    }
}

}  // namespace

LtsssPublicParams gen_public_params(int m, int t, int n, uint32_t Q, int eps_max,
                                    const Bytes& seed) {
    if (m < 1) throw Error(ErrorCode::ParameterError, "m must be positive");
    if (t < 2 || t > n || n > 8)
        throw Error(ErrorCode::ParameterError, "need 2 <= t <= n <= 8");
    if (t + m > 10)
        throw Error(ErrorCode::ParameterError, "t + m must be at most 10");
    if (Q >= 65536 || !is_prime(Q))
        throw Error(ErrorCode::ParameterError, "Q must be a prime below 2^16");
    if (eps_max < 0)
        throw Error(ErrorCode::ParameterError, "eps_max must be nonnegative");
    if (seed.size() != 32)
        throw Error(ErrorCode::ParameterError, "seed must be 32 bytes");

    LtsssPublicParams p;
    p.m = m;
    p.t = t;
    p.n = n;
    p.Q = Q;
    p.eps_max = eps_max;

    EntryStream stream(seed, Q);
    while ((int)p.l_vectors.size() < n) {
        std::vector<uint32_t> vec(m);
        for (auto& e : vec) e = stream.next();
        while (vec[0] == 0) vec[0] = stream.next();
        if (std::find(p.l_vectors.begin(), p.l_vectors.end(), vec) !=
            p.l_vectors.end())
            continue;
        p.l_vectors.push_back(std::move(vec));
    }
    return p;
}

LtsssInstance share_secret(uint32_t secret, const LtsssPublicParams& p, Rng& rng) {
    if (secret >= p.Q)
        throw Error(ErrorCode::ParameterError, "secret out of range");
    if ((int)p.l_vectors.size() != p.n)
        throw Error(ErrorCode::ParameterError, "malformed public params");

    LtsssInstance inst;
    inst.a.resize(p.m);
    inst.a[0] = secret;
    for (int j = 1; j < p.m; ++j) inst.a[j] = (uint32_t)rng.uniform_below(p.Q);
    inst.noises.resize(p.n);
    inst.shares.resize(p.n);
    for (int i = 0; i < p.n; ++i) {
        inst.noises[i] =
            (int32_t)((long long)rng.uniform_below(2ull * p.eps_max + 1) - p.eps_max);
        long long acc = inst.noises[i];
        for (int j = 0; j < p.m; ++j)
            acc += (long long)p.l_vectors[i][j] * inst.a[j];
        inst.shares[i] = mod_entry(acc, p.Q);
    }
    return inst;
}

ReconstructionProblem build_reconstruction_problem(
    const std::vector<std::pair<int, uint32_t>>& shares,
    const LtsssPublicParams& p) {
    if ((int)shares.size() != p.t)
        throw Error(ErrorCode::ParameterError, "share count must equal threshold");
    std::vector<int> seen;
    for (const auto& [idx, y] : shares) {
        if (idx < 1 || idx > p.n)
            throw Error(ErrorCode::ParameterError, "share index out of range");
        if (std::find(seen.begin(), seen.end(), idx) != seen.end())
            throw Error(ErrorCode::ParameterError, "duplicate share index");
        seen.push_back(idx);
        if (y >= p.Q)
            throw Error(ErrorCode::ParameterError, "share value out of range");
        if (p.l_vectors[idx - 1].size() != (size_t)p.m)
            throw Error(ErrorCode::ParameterError, "malformed public params");
    }

    long long root = 1;
    while (root * root < p.m) ++root;
    const long long w = (long long)p.Q * root;
    const int d = p.t + p.m;
    const long long ctr = ((long long)p.Q - 1) / 2;

    ReconstructionProblem prob;
    prob.weight = w;
    prob.basis.assign(d, Row(d, 0));
    prob.target.assign(d, 0);
    for (int j = 0; j < p.m; ++j) {
        for (int i = 0; i < p.t; ++i)
            prob.basis[j][i] = w * (long long)p.l_vectors[shares[i].first - 1][j];
        prob.basis[j][p.t + j] = 1;
    }
    for (int i = 0; i < p.t; ++i)
        prob.basis[p.m + i][i] = w * (long long)p.Q;
    for (int i = 0; i < p.t; ++i)
        prob.target[i] = w * (long long)shares[i].second;
    for (int j = 0; j < p.m; ++j) prob.target[p.t + j] = ctr;
    return prob;
}

uint32_t reconstruct_secret(const std::vector<std::pair<int, uint32_t>>& shares,
                            const LtsssPublicParams& p) {
    ReconstructionProblem prob = build_reconstruction_problem(shares, p);
    CvpCandidate win = solve_cvp(prob.basis, prob.target, prob.weight, p.t, p.m);

    long long l1 = 0;
    for (long long e : win.eps) l1 += std::llabs(e);
    if (l1 > (long long)p.eps_max * p.t)
        throw Error(ErrorCode::ReconstructFailed,
                    "share residual exceeds noise budget");
    if (win.a[0] < 0 || win.a[0] >= (long long)p.Q)
        throw Error(ErrorCode::ReconstructFailed, "secret outside field range");
    return (uint32_t)win.a[0];
}

std::pair<ShareVec, ShareVec> shares_from_inputs(const LatticePoint& rho_prime,
                                                 const Digest32& mu) {
    ShareVec s_rho{}, s_mu{};
    for (size_t j = 0; j < kLatticeM; ++j) {
        s_rho[j] = (uint16_t)(rho_prime.coeffs[j] % kShareQ);
        uint32_t word = (uint32_t(mu[2 * j]) << 8) | mu[2 * j + 1];
        s_mu[j] = (uint16_t)(word % kShareQ);
    }
    return {s_rho, s_mu};
}

WalletShareSet wallet_combine(const ShareVec& s_rho, const ShareVec& s_mu,
                              uint32_t modulus) {
    if (modulus < 2)
        throw Error(ErrorCode::ParameterError, "modulus too small");
    check_share_vec(s_rho, modulus, "s_rho");
    check_share_vec(s_mu, modulus, "s_mu");
    WalletShareSet out;
    out.s_rho = s_rho;
    out.s_mu = s_mu;
    for (size_t j = 0; j < kLatticeM; ++j) {
        out.phi[j] = (uint16_t)mod_entry(2ll * s_rho[j] - s_mu[j], modulus);
        out.backup[j] = (uint16_t)mod_entry(2ll * s_mu[j] - s_rho[j], modulus);
    }
    return out;
}

ShareVec wallet_recover(const IndexedShare& a, const IndexedShare& b,
                        uint32_t modulus) {
    if (modulus < 2)
        throw Error(ErrorCode::ParameterError, "modulus too small");
    if (a.x < 1 || a.x > 3 || b.x < 1 || b.x > 3)
        throw Error(ErrorCode::ParameterError, "share index must be 1, 2 or 3");
    if (a.x == b.x)
        throw Error(ErrorCode::ParameterError, "share indices must differ");
    check_share_vec(a.vec, modulus, "share");
    check_share_vec(b.vec, modulus, "share");

    const long long q = modulus;
    long long ca = (long long)b.x * mod_inverse(mod_entry(b.x - a.x, modulus), q) % q;
    long long cb = (long long)a.x * mod_inverse(mod_entry(a.x - b.x, modulus), q) % q;
    ShareVec phi{};
    for (size_t j = 0; j < kLatticeM; ++j)
        phi[j] = (uint16_t)mod_entry(ca * a.vec[j] + cb * b.vec[j], modulus);
    return phi;
}

}  // namespace pqw
