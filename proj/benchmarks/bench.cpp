#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include <unistd.h>

#include "pqw/bcrypt.h"
#include "pqw/client.h"
#include "pqw/credentials.h"
#include "pqw/kem.h"
#include "pqw/lattice.h"
#include "pqw/ltsss.h"
#include "pqw/server.h"
#include "pqw/sha256.h"

using namespace pqw;

namespace {

Bytes random_bytes(size_t n, uint64_t seed) {
    SplitMix64Rng rng(seed);
    Bytes b(n);
    rng.fill(b.data(), b.size());
    return b;
}

std::string temp_store(const char* tag) {
    auto p = std::filesystem::temp_directory_path() /
             (std::string("pqw-bench-") + tag + "-" +
              std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(p);
    return p.string();
}

void BM_Sha256(benchmark::State& state) {
    Bytes msg = random_bytes(size_t(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sha256(msg));
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(1024)->Arg(65536);

void BM_Bcrypt(benchmark::State& state) {
    BcryptParams p;
    p.cost = int(state.range(0));
    Bytes salt = random_bytes(16, 2);
    std::copy(salt.begin(), salt.end(), p.salt.begin());
    p.message = random_bytes(24, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bcrypt_hash(p));
    }
}
BENCHMARK(BM_Bcrypt)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CredentialDigests(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            derive_eta_mu("alice", "first passphrase", "second passphrase",
                          int(state.range(0))));
    }
}
BENCHMARK(BM_CredentialDigests)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BlindPadUnblind(benchmark::State& state) {
    const LatticeParams p = default_params();
    SplitMix64Rng rng(4);
    LatticePoint rho;
    for (auto& c : rho.coeffs) c = uint16_t(rng.uniform_below(p.q));
    for (auto _ : state) {
        BlindState st = sample_blind_state(rng, p);
        ServerPadSource src = sample_pad_source(rng, p);
        LatticePoint out =
            unblind_point(pad_point(blind_point(rho, st, p), src, p), st, p);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_BlindPadUnblind);

void BM_WalletCombine(benchmark::State& state) {
    SplitMix64Rng rng(5);
    LatticePoint rho_prime;
    for (auto& c : rho_prime.coeffs) c = uint16_t(rng.uniform_below(16384));
    Digest32 mu{};
    rng.fill(mu.data(), mu.size());
    auto [s_rho, s_mu] = shares_from_inputs(rho_prime, mu);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wallet_combine(s_rho, s_mu));
    }
}
BENCHMARK(BM_WalletCombine);

void BM_WalletRecover(benchmark::State& state) {
    SplitMix64Rng rng(6);
    LatticePoint rho_prime;
    for (auto& c : rho_prime.coeffs) c = uint16_t(rng.uniform_below(16384));
    Digest32 mu{};
    rng.fill(mu.data(), mu.size());
    auto [s_rho, s_mu] = shares_from_inputs(rho_prime, mu);
    WalletShareSet ws = wallet_combine(s_rho, s_mu);
    IndexedShare a{2, s_mu}, b{3, ws.backup};
    for (auto _ : state) {
        benchmark::DoNotOptimize(wallet_recover(a, b));
    }
}
BENCHMARK(BM_WalletRecover);

void BM_NoisyReconstruct(benchmark::State& state) {
    auto p = gen_public_params(2, 2, 3, 16411, 2, random_bytes(32, 7));
    SplitMix64Rng rng(8);
    uint32_t secret = uint32_t(rng.uniform_below(p.Q));
    auto inst = share_secret(secret, p, rng);
    std::vector<std::pair<int, uint32_t>> shares{{1, inst.shares[0]},
                                                 {2, inst.shares[1]}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct_secret(shares, p));
    }
}
BENCHMARK(BM_NoisyReconstruct);

void BM_KemKeygen(benchmark::State& state) {
    Bytes seed = random_bytes(kKemSeedBytes, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kem_keygen(seed));
    }
}
BENCHMARK(BM_KemKeygen);

void BM_KemEncaps(benchmark::State& state) {
    KemKeyPair kp = kem_keygen(random_bytes(kKemSeedBytes, 10));
    Bytes coins = random_bytes(32, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kem_encaps(kp.pk, coins));
    }
}
BENCHMARK(BM_KemEncaps);

void BM_KemDecaps(benchmark::State& state) {
    KemKeyPair kp = kem_keygen(random_bytes(kKemSeedBytes, 12));
    KemEncapsResult enc = kem_encaps(kp.pk, random_bytes(32, 13));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kem_decaps(enc.ct, kp.sk));
    }
}
BENCHMARK(BM_KemDecaps);

// Whole client unlock against an in-process server, dominated by the two
// bcrypt calls at the configured cost.
void BM_UnlockFlow(benchmark::State& state) {
    std::string path = temp_store("unlock");
    RecordStore store(path);
    SplitMix64Rng server_rng(14), client_rng(15);
    Router router(store, server_rng, ServerConfig{0, 60, 600});
    InProcessTransport transport(router);
    Credentials creds{"bench-user", "first passphrase", "second passphrase",
                      int(state.range(0))};
    register_flow(creds, transport, client_rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unlock_flow(creds, transport, client_rng));
    }
    std::filesystem::remove(path);
}
BENCHMARK(BM_UnlockFlow)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
