#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "kat_vectors.h"
#include "ltsss_oracle.h"
#include "pqw/error.h"
#include "pqw/lattice.h"
#include "pqw/ltsss.h"
#include "pqw/rng.h"

using namespace pqw;

namespace {

Bytes tagged_seed(unsigned k) {
    Bytes s(32, 0);
    s[0] = uint8_t(k);
    s[1] = uint8_t(k >> 8);
    s[31] = 0x5a;
    return s;
}

Digest32 digest_of(const std::string& hex) {
    Bytes b = from_hex(hex);
    REQUIRE(b.size() == 32);
    Digest32 d{};
    std::copy(b.begin(), b.end(), d.begin());
    return d;
}

ShareVec to_share(const int (&a)[16]) {
    ShareVec v{};
    for (size_t i = 0; i < 16; ++i) v[i] = uint16_t(a[i]);
    return v;
}

ShareVec const_share(uint16_t c) {
    ShareVec v{};
    v.fill(c);
    return v;
}

// Replays a fixed word sequence so instances can be pinned exactly.
struct ScriptedRng : Rng {
    std::vector<uint64_t> vals;
    size_t at = 0;
    explicit ScriptedRng(std::vector<uint64_t> v) : vals(std::move(v)) {}
    uint64_t next_u64() override {
        REQUIRE(at < vals.size());
        return vals[at++];
    }
};

const LtsssPublicParams kWorkedExample{2, 2, 2, 16411, 0, {{1, 1}, {1, 2}}};

std::vector<testoracle::OracleShare> oracle_view(
    const LtsssPublicParams& p, const LtsssInstance& inst,
    const std::vector<int>& indices) {
    std::vector<testoracle::OracleShare> out;
    for (int idx : indices)
        out.push_back({p.l_vectors[idx - 1], inst.shares[idx - 1]});
    // the exhaustive search inverts the first share's second component
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i].first[1] % p.Q != 0) {
            std::swap(out[0], out[i]);
            return out;
        }
    }
    REQUIRE(false);
    return out;
}

}  // namespace

TEST_CASE("l vector stream matches the frozen expansion") {
    auto p = gen_public_params(2, 2, 3, 16411, 2, from_hex(testvec::kLvecSeed));
    REQUIRE(p.l_vectors.size() == 3);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(p.l_vectors[i].size() == 2);
        for (int j = 0; j < 2; ++j)
            CHECK(p.l_vectors[i][j] == uint32_t(testvec::kLvecExpect[i][j]));
    }
    CHECK(p.m == 2);
    CHECK(p.t == 2);
    CHECK(p.n == 3);
    CHECK(p.Q == 16411);
    CHECK(p.eps_max == 2);
}

TEST_CASE("parameter generation is deterministic and seed sensitive") {
    auto a = gen_public_params(2, 2, 3, 16411, 2, tagged_seed(1));
    auto b = gen_public_params(2, 2, 3, 16411, 2, tagged_seed(1));
    CHECK(a.l_vectors == b.l_vectors);
    auto c = gen_public_params(2, 2, 3, 16411, 2, tagged_seed(2));
    CHECK(a.l_vectors != c.l_vectors);

    for (const auto& vec : a.l_vectors) {
        CHECK(vec[0] != 0);
        for (uint32_t e : vec) CHECK(e < 16411);
    }

    // small field: distinctness forces several redraws
    auto small = gen_public_params(2, 2, 8, 17, 0, tagged_seed(3));
    REQUIRE(small.l_vectors.size() == 8);
    for (const auto& vec : small.l_vectors) {
        CHECK(vec[0] != 0);
        for (uint32_t e : vec) CHECK(e < 17);
    }
    for (size_t i = 0; i < small.l_vectors.size(); ++i)
        for (size_t j = i + 1; j < small.l_vectors.size(); ++j)
            CHECK(small.l_vectors[i] != small.l_vectors[j]);
}

TEST_CASE("parameter generation validation") {
    Bytes seed = tagged_seed(4);
    CHECK_THROWS_AS(gen_public_params(0, 2, 3, 16411, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 1, 3, 16411, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 4, 3, 16411, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 2, 9, 16411, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(9, 2, 2, 16411, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 2, 3, 16410, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 2, 3, 65537, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 2, 3, 1, 2, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 2, 3, 16411, -1, seed), Error);
    CHECK_THROWS_AS(gen_public_params(2, 2, 3, 16411, 2, Bytes(31, 0)), Error);
    try {
        gen_public_params(2, 1, 3, 16411, 2, seed);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterError);
    }

    // dimension cap is inclusive
    auto wide = gen_public_params(8, 2, 2, 16411, 0, seed);
    CHECK(wide.l_vectors[0].size() == 8);
}

TEST_CASE("share_secret obeys the share equation") {
    auto p = gen_public_params(2, 2, 3, 16411, 2, tagged_seed(5));
    SplitMix64Rng rng(7);
    SplitMix64Rng pick(8);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t secret = uint32_t(pick.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        REQUIRE(inst.a.size() == 2);
        REQUIRE(inst.noises.size() == 3);
        REQUIRE(inst.shares.size() == 3);
        CHECK(inst.a[0] == secret);
        CHECK(inst.a[1] < p.Q);
        for (int i = 0; i < 3; ++i) {
            CHECK(inst.noises[i] >= -2);
            CHECK(inst.noises[i] <= 2);
            long long acc = inst.noises[i];
            for (int j = 0; j < 2; ++j)
                acc += (long long)p.l_vectors[i][j] * inst.a[j];
            acc %= 16411;
            if (acc < 0) acc += 16411;
            CHECK(inst.shares[i] == uint32_t(acc));
        }
    }

    auto quiet = gen_public_params(2, 2, 3, 16411, 0, tagged_seed(6));
    auto inst = share_secret(123, quiet, rng);
    for (int32_t e : inst.noises) CHECK(e == 0);

    CHECK_THROWS_AS(share_secret(16411, p, rng), Error);
}

TEST_CASE("scripted instance reproduces the worked example") {
    ScriptedRng rng({3, 99, 77});  // a1 draw, then one word per noise
    auto inst = share_secret(7, kWorkedExample, rng);
    REQUIRE(inst.a.size() == 2);
    CHECK(inst.a[0] == 7);
    CHECK(inst.a[1] == 3);
    CHECK(inst.noises == std::vector<int32_t>{0, 0});
    CHECK(inst.shares == std::vector<uint32_t>{10, 13});
}

TEST_CASE("reconstruction problem embeds the shares") {
    auto prob = build_reconstruction_problem({{1, 10}, {2, 13}}, kWorkedExample);
    const long long w = 32822;
    CHECK(prob.weight == w);
    REQUIRE(prob.basis.size() == 4);
    CHECK(prob.basis[0] == std::vector<long long>{w, w, 1, 0});
    CHECK(prob.basis[1] == std::vector<long long>{w, 2 * w, 0, 1});
    CHECK(prob.basis[2] == std::vector<long long>{w * 16411, 0, 0, 0});
    CHECK(prob.basis[3] == std::vector<long long>{0, w * 16411, 0, 0});
    CHECK(prob.target == std::vector<long long>{10 * w, 13 * w, 8205, 8205});
}

TEST_CASE("zero-noise reconstruction is the exact solve") {
    CHECK(reconstruct_secret({{1, 10}, {2, 13}}, kWorkedExample) == 7);
    CHECK(reconstruct_secret({{2, 13}, {1, 10}}, kWorkedExample) == 7);

    const std::array<std::vector<int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (unsigned k = 0; k < 50; ++k) {
        auto p = gen_public_params(2, 2, 3, 16411, 0, tagged_seed(100 + k));
        SplitMix64Rng rng(9000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        const auto& idx = pairs[k % 3];
        std::vector<std::pair<int, uint32_t>> shares;
        for (int i : idx) shares.push_back({i, inst.shares[i - 1]});

        const auto& l1 = p.l_vectors[idx[0] - 1];
        const auto& l2 = p.l_vectors[idx[1] - 1];
        long long det = ((long long)l1[0] * l2[1] - (long long)l1[1] * l2[0]) % 16411;
        REQUIRE(det != 0);

        CHECK(reconstruct_secret(shares, p) == secret);
        auto brute = testoracle::brute_force_m2(oracle_view(p, inst, idx), p.Q, 0);
        CHECK(brute.secret == secret);
    }
}

TEST_CASE("malformed share sets are rejected") {
    auto check_param_error = [&](const std::vector<std::pair<int, uint32_t>>& s) {
        try {
            reconstruct_secret(s, kWorkedExample);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParameterError);
        }
    };
    check_param_error({{1, 10}});
    check_param_error({{1, 10}, {2, 13}, {2, 13}});
    check_param_error({{1, 10}, {1, 10}});
    check_param_error({{0, 10}, {2, 13}});
    check_param_error({{1, 10}, {3, 13}});
    check_param_error({{1, 16411}, {2, 13}});
}

TEST_CASE("noisy reconstruction matches the exhaustive search") {
    const std::array<std::vector<int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (unsigned k = 0; k < 200; ++k) {
        auto p = gen_public_params(2, 2, 3, 16411, 2, tagged_seed(300 + k));
        SplitMix64Rng rng(40000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        const auto& idx = pairs[k % 3];
        std::vector<std::pair<int, uint32_t>> shares;
        for (int i : idx) shares.push_back({i, inst.shares[i - 1]});

        uint32_t got = reconstruct_secret(shares, p);
        auto brute = testoracle::brute_force_m2(oracle_view(p, inst, idx), p.Q, 2);
        CHECK(got == brute.secret);
        CHECK(brute.l1_residual <= 4);
    }
}

TEST_CASE("three shares pin down a noisy secret") {
    for (unsigned k = 0; k < 25; ++k) {
        auto p = gen_public_params(2, 3, 3, 16411, 0, tagged_seed(700 + k));
        SplitMix64Rng rng(70000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        CHECK(reconstruct_secret({{1, inst.shares[0]}, {2, inst.shares[1]}, {3, inst.shares[2]}},
                                 p) == secret);
    }
    for (unsigned k = 0; k < 25; ++k) {
        auto p = gen_public_params(2, 3, 3, 16411, 2, tagged_seed(800 + k));
        SplitMix64Rng rng(80000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        uint32_t got = reconstruct_secret(
            {{1, inst.shares[0]}, {2, inst.shares[1]}, {3, inst.shares[2]}}, p);
        auto brute =
            testoracle::brute_force_m2(oracle_view(p, inst, {1, 2, 3}), p.Q, 2);
        CHECK(got == brute.secret);
        CHECK(brute.l1_residual <= 6);
    }
}

TEST_CASE("inconsistent shares are rejected") {
    bool found = false;
    for (unsigned k = 0; k < 50 && !found; ++k) {
        auto p = gen_public_params(2, 3, 3, 16411, 2, tagged_seed(900 + k));
        SplitMix64Rng rng(90000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);

        std::vector<std::pair<int, uint32_t>> honest{
            {1, inst.shares[0]}, {2, inst.shares[1]}, {3, inst.shares[2]}};
        CHECK(reconstruct_secret(honest, p) == testoracle::brute_force_m2(
                                                   oracle_view(p, inst, {1, 2, 3}),
                                                   p.Q, 2)
                                                   .secret);

        auto corrupted = inst;
        corrupted.shares[0] = (corrupted.shares[0] + 1000) % 16411;
        if (testoracle::has_candidate_within_l1(oracle_view(p, corrupted, {1, 2, 3}),
                                                p.Q, 6))
            continue;
        found = true;
        try {
            reconstruct_secret({{1, corrupted.shares[0]},
                                {2, corrupted.shares[1]},
                                {3, corrupted.shares[2]}},
                               p);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ReconstructFailed);
        }
    }
    REQUIRE(found);
}

TEST_CASE("wallet shares from derived inputs") {
    LatticePoint zero{};
    Digest32 zero_mu{};
    auto [r0, m0] = shares_from_inputs(zero, zero_mu);
    for (size_t j = 0; j < kLatticeM; ++j) {
        CHECK(r0[j] == 0);
        CHECK(m0[j] == 0);
    }

    Digest32 ones{};
    ones.fill(0xff);
    auto [r1, m1] = shares_from_inputs(zero, ones);
    for (size_t j = 0; j < kLatticeM; ++j) CHECK(m1[j] == 16302);

    Digest32 word{};
    word[0] = 0x12;
    word[1] = 0x34;
    auto [r2, m2] = shares_from_inputs(zero, word);
    CHECK(m2[0] == 0x1234);
    CHECK(m2[1] == 0);

    for (const auto& v : testvec::kPipelineVecs) {
        LatticePoint rp{};
        for (size_t j = 0; j < kLatticeM; ++j)
            rp.coeffs[j] = uint16_t(v.rho_prime[j]);
        auto [sr, sm] = shares_from_inputs(rp, digest_of(v.mu));
        CHECK(sr == to_share(v.s_rho));
        CHECK(sm == to_share(v.s_mu));
        for (size_t j = 0; j < kLatticeM; ++j) CHECK(sr[j] < 16384);
    }
}

TEST_CASE("wallet_combine interpolates the line") {
    auto ws = wallet_combine(const_share(10), const_share(4));
    for (size_t j = 0; j < kLatticeM; ++j) {
        CHECK(ws.phi[j] == 16);
        CHECK(ws.backup[j] == 16409);
    }

    auto same = wallet_combine(const_share(77), const_share(77));
    for (size_t j = 0; j < kLatticeM; ++j) {
        CHECK(same.phi[j] == 77);
        CHECK(same.backup[j] == 77);
    }

    for (const auto& v : testvec::kPipelineVecs) {
        auto got = wallet_combine(to_share(v.s_rho), to_share(v.s_mu));
        CHECK(got.phi == to_share(v.phi));
        CHECK(got.backup == to_share(v.backup));
    }

    CHECK_THROWS_AS(wallet_combine(const_share(16411), const_share(0)), Error);
    CHECK_THROWS_AS(wallet_combine(const_share(0), const_share(16411)), Error);
}

TEST_CASE("wallet_recover agrees on every pair") {
    CHECK(wallet_recover({1, const_share(10)}, {3, const_share(16409)})[0] == 16);
    CHECK(wallet_recover({2, const_share(4)}, {3, const_share(16409)})[0] == 16);
    CHECK(wallet_recover({1, const_share(10)}, {2, const_share(4)})[0] == 16);

    SplitMix64Rng rng(31415);
    for (int trial = 0; trial < 1000; ++trial) {
        ShareVec sr{}, sm{};
        for (size_t j = 0; j < kLatticeM; ++j) {
            sr[j] = uint16_t(rng.uniform_below(16411));
            sm[j] = uint16_t(rng.uniform_below(16411));
        }
        auto ws = wallet_combine(sr, sm);
        auto p12 = wallet_recover({1, sr}, {2, sm});
        auto p13 = wallet_recover({1, sr}, {3, ws.backup});
        auto p23 = wallet_recover({2, sm}, {3, ws.backup});
        CHECK(p12 == ws.phi);
        CHECK(p13 == ws.phi);
        CHECK(p23 == ws.phi);
        CHECK(wallet_recover({3, ws.backup}, {2, sm}) == ws.phi);
    }

    CHECK_THROWS_AS(wallet_recover({1, const_share(0)}, {1, const_share(0)}), Error);
    CHECK_THROWS_AS(wallet_recover({0, const_share(0)}, {2, const_share(0)}), Error);
    CHECK_THROWS_AS(wallet_recover({1, const_share(0)}, {4, const_share(0)}), Error);
    CHECK_THROWS_AS(wallet_recover({1, const_share(0)}, {2, const_share(0)}, 1), Error);
    try {
        wallet_recover({2, const_share(0)}, {2, const_share(0)});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParameterError);
    }
}

TEST_CASE("one fixed share reveals nothing about the secret") {
    // exhaustive over the test-only field Q' = 17
    for (uint16_t fixed = 0; fixed < 17; ++fixed) {
        std::array<int, 17> hist_mu{}, hist_rho{}, hist_backup{};
        for (uint16_t other = 0; other < 17; ++other) {
            hist_mu[wallet_combine(const_share(fixed), const_share(other), 17).phi[0]]++;
            hist_rho[wallet_combine(const_share(other), const_share(fixed), 17).phi[0]]++;
            hist_backup[wallet_recover({2, const_share(other)},
                                       {3, const_share(fixed)}, 17)[0]]++;
        }
        for (int c : hist_mu) CHECK(c == 1);
        for (int c : hist_rho) CHECK(c == 1);
        for (int c : hist_backup) CHECK(c == 1);
    }
}
