// End-to-end acceptance gate. Each criterion prints one [PASS]/[FAIL] line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "kat_vectors.h"
#include "ltsss_oracle.h"
#include "pqw/bcrypt.h"
#include "pqw/client.h"
#include "pqw/kem.h"
#include "pqw/lattice.h"
#include "pqw/ltsss.h"
#include "pqw/protocol.h"
#include "pqw/server.h"
#include "pqw/sha256.h"
#include "pqw/transport.h"

using namespace pqw;

namespace {

std::string temp_path(const char* tag) {
    static int counter = 0;
    auto p = std::filesystem::temp_directory_path() /
             (std::string("pqw-acc-") + tag + "-" + std::to_string(::getpid()) +
              "-" + std::to_string(counter++) + ".jsonl");
    std::filesystem::remove(p);
    return p.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

Digest32 digest_from(const Bytes& b) {
    Digest32 d{};
    std::copy(b.begin(), b.begin() + 32, d.begin());
    return d;
}

Bytes tagged_seed(unsigned k) {
    Bytes s(32, 0);
    s[0] = uint8_t(k);
    s[1] = uint8_t(k >> 8);
    s[31] = 0xa5;
    return s;
}

// In-process server with rate limiting off, for bulk flows.
struct Rig {
    std::string path;
    RecordStore store;
    SplitMix64Rng server_rng;
    Router router;
    InProcessTransport transport;

    Rig(const char* tag, uint64_t seed)
        : path(temp_path(tag)),
          store(path),
          server_rng(seed),
          router(store, server_rng, ServerConfig{0, 60, 600}),
          transport(router) {}
    ~Rig() { std::filesystem::remove(path); }
};

// The real server binary as a child process.
struct ChildServer {
    pid_t pid = -1;
    int port = 0;

    bool start(const std::string& store_path, int port_, int rate_limit) {
        port = port_;
        std::fflush(stdout);
        std::fflush(stderr);
        pid = ::fork();
        if (pid == 0) {
            int devnull = ::open("/dev/null", O_WRONLY);
            if (devnull >= 0) {
                ::dup2(devnull, 1);
                ::dup2(devnull, 2);
            }
            std::string listen = "127.0.0.1:" + std::to_string(port);
            std::string rate = std::to_string(rate_limit);
            ::execl(PQW_SERVER_BIN, "pqw-server", "--listen", listen.c_str(),
                    "--store", store_path.c_str(), "--rate-limit", rate.c_str(),
                    (char*)nullptr);
            ::_exit(127);
        }
        if (pid < 0) return false;
        HttpTransport probe("127.0.0.1", port);
        for (int i = 0; i < 400; ++i) {
            try {
                probe.get("/v1/challenge?uid=" + std::string(64, 'a'));
                return true;
            } catch (const Error&) {
                std::this_thread::sleep_for(std::chrono::milliseconds(25));
            }
        }
        return false;
    }

    int stop() {
        if (pid <= 0) return -1;
        ::kill(pid, SIGTERM);
        int st = 0;
        ::waitpid(pid, &st, 0);
        pid = -1;
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }

    ~ChildServer() {
        if (pid > 0) {
            ::kill(pid, SIGKILL);
            int st = 0;
            ::waitpid(pid, &st, 0);
        }
    }
};

Credentials numbered_creds(unsigned k, SplitMix64Rng& rng) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  (unsigned long long)rng.next_u64());
    std::string noise = buf;
    return {"user" + std::to_string(k), "first-" + noise + std::to_string(k),
            "second-" + noise, 4};
}

bool is_auth_failed(const std::function<void()>& f) {
    try {
        f();
        return false;
    } catch (const Error& e) {
        return e.code() == ErrorCode::AuthFailed;
    }
}

// ---------------------------------------------------------------- criteria

bool criterion_determinism(std::ostringstream& detail) {
    Rig rig("det", 101);
    SplitMix64Rng crng(102), gen(103);
    int good = 0;
    const int total = 100;
    for (int k = 0; k < total; ++k) {
        Credentials c = numbered_creds(unsigned(k), gen);
        WalletHandle h0 = register_flow(c, rig.transport, crng);
        WalletHandle h1 = unlock_flow(c, rig.transport, crng);
        WalletHandle h2 = unlock_flow(c, rig.transport, crng);
        if (h0.keypair.pk == h1.keypair.pk && h1.keypair.pk == h2.keypair.pk &&
            h0.keypair.sk == h1.keypair.sk && h1.keypair.sk == h2.keypair.sk &&
            h0.keypair.pk.size() == kKemPublicKeyBytes)
            ++good;
    }
    detail << good << "/" << total
           << " credential sets reproduced identical pk and sk";
    return good == total;
}

bool criterion_blinding(std::ostringstream& detail) {
    const LatticeParams p = default_params();
    SplitMix64Rng rng(201);
    int good = 0;
    const int total = 1000;
    for (int k = 0; k < total; ++k) {
        LatticePoint rho;
        for (auto& c : rho.coeffs) c = uint16_t(rng.uniform_below(p.q));
        BlindState st = sample_blind_state(rng, p);
        ServerPadSource src = sample_pad_source(rng, p);

        BlindedPoint tau1 = blind_point(rho, st, p);
        BlindedPoint tau2 = pad_point(tau1, src, p);
        LatticePoint out = unblind_point(tau2, st, p);
        LatticeVec pad = mask_vector(src.delta2, src.omega2, p);

        bool ok = tau1.stage == BlindStage::ClientBlinded &&
                  tau2.stage == BlindStage::ServerPadded;
        for (int j = 0; j < kLatticeM && ok; ++j) {
            ok = out.coeffs[j] == (rho.coeffs[j] + pad[j]) % p.q &&
                 (tau2.tau[j] + p.q - tau1.tau[j]) % p.q == pad[j];
        }
        if (ok) ++good;
    }
    detail << good << "/" << total
           << " unblind(pad(blind())) and pad-difference checks exact";
    return good == total;
}

bool criterion_threshold(std::ostringstream& detail) {
    const LatticeParams p = default_params();
    SplitMix64Rng rng(301);
    int good = 0;
    const int total = 1000;
    for (int k = 0; k < total; ++k) {
        LatticePoint rho_prime;
        for (auto& c : rho_prime.coeffs) c = uint16_t(rng.uniform_below(p.q));
        Digest32 mu{};
        rng.fill(mu.data(), mu.size());

        auto [s_rho, s_mu] = shares_from_inputs(rho_prime, mu);
        WalletShareSet ws = wallet_combine(s_rho, s_mu);
        bool ok =
            wallet_recover({1, s_rho}, {2, s_mu}) == ws.phi &&
            wallet_recover({1, s_rho}, {3, ws.backup}) == ws.phi &&
            wallet_recover({2, s_mu}, {3, ws.backup}) == ws.phi &&
            wallet_recover({3, ws.backup}, {1, s_rho}) == ws.phi;
        if (ok) ++good;
    }

    // Exhaustive hiding check over a 17-element field: conditioned on any
    // single share value, the secret is exactly uniform.
    const uint32_t Qp = 17;
    int phi_given_srho[17][17] = {};
    int phi_given_smu[17][17] = {};
    int phi_given_backup[17][17] = {};
    for (uint32_t a = 0; a < Qp; ++a) {
        for (uint32_t b = 0; b < Qp; ++b) {
            ShareVec s1{}, s2{};
            s1.fill(uint16_t(a));
            s2.fill(uint16_t(b));
            WalletShareSet ws = wallet_combine(s1, s2, Qp);
            phi_given_srho[a][ws.phi[0]]++;
            phi_given_smu[b][ws.phi[0]]++;
            phi_given_backup[ws.backup[0]][ws.phi[0]]++;
        }
    }
    bool uniform = true;
    for (int c = 0; c < 17; ++c) {
        for (int v = 0; v < 17; ++v) {
            uniform = uniform && phi_given_srho[c][v] == 1 &&
                      phi_given_smu[c][v] == 1 && phi_given_backup[c][v] == 1;
        }
    }
    detail << good << "/" << total << " share triples agree on the secret, "
           << (uniform ? "single-share view exactly uniform"
                       : "single-share view NOT uniform");
    return good == total && uniform;
}

bool criterion_noisy_shares(std::ostringstream& detail) {
    const std::array<std::vector<int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    int agree = 0;
    const int total = 1000;
    for (int k = 0; k < total; ++k) {
        auto p = gen_public_params(2, 2, 3, 16411, 2, tagged_seed(4000 + k));
        SplitMix64Rng rng(41000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        const auto& idx = pairs[k % 3];

        std::vector<std::pair<int, uint32_t>> shares;
        std::vector<testoracle::OracleShare> view;
        for (int i : idx) {
            shares.push_back({i, inst.shares[i - 1]});
            view.push_back({p.l_vectors[i - 1], inst.shares[i - 1]});
        }
        if (view[0].first[1] % p.Q == 0) std::swap(view[0], view[1]);

        uint32_t got = reconstruct_secret(shares, p);
        auto brute = testoracle::brute_force_m2(view, p.Q, 2);
        if (got == brute.secret) ++agree;
    }

    int exact = 0;
    const int zero_total = 100;
    for (int k = 0; k < zero_total; ++k) {
        auto p = gen_public_params(2, 2, 3, 16411, 0, tagged_seed(46000 + k));
        SplitMix64Rng rng(47000 + k);
        uint32_t secret = uint32_t(rng.uniform_below(p.Q));
        auto inst = share_secret(secret, p, rng);
        const auto& idx = pairs[k % 3];

        const auto& l1 = p.l_vectors[idx[0] - 1];
        const auto& l2 = p.l_vectors[idx[1] - 1];
        long long q = p.Q;
        long long det = (((long long)l1[0] * l2[1] -
                          (long long)l1[1] * l2[0]) % q + q) % q;
        long long rhs = (((long long)inst.shares[idx[0] - 1] * l2[1] -
                          (long long)inst.shares[idx[1] - 1] * l1[1]) % q + q) % q;
        uint32_t solved = uint32_t(rhs * mod_inverse(det, q) % q);

        uint32_t got = reconstruct_secret(
            {{idx[0], inst.shares[idx[0] - 1]}, {idx[1], inst.shares[idx[1] - 1]}},
            p);
        if (got == solved && solved == secret) ++exact;
    }

    detail << agree << "/" << total << " noisy instances match the exhaustive "
           << "search, " << exact << "/" << zero_total
           << " zero-noise instances match the linear solve";
    return agree == total && exact == zero_total;
}

bool criterion_kem(std::ostringstream& detail) {
    auto hex_of = [](const Bytes& b) { return to_hex(b.data(), b.size()); };
    auto sha_hex = [&](const Bytes& b) {
        Digest32 d = sha256(b);
        return to_hex(d.data(), d.size());
    };

    int kats = 0;
    for (const auto& k : testvec::kKyberKats) {
        KemKeyPair kp = kem_keygen_dz(from_hex(k.d), from_hex(k.z));
        if (sha_hex(kp.pk) != k.pk_sha256 || sha_hex(kp.sk) != k.sk_sha256)
            continue;
        KemEncapsResult enc = kem_encaps(kp.pk, from_hex(k.m));
        if (sha_hex(enc.ct) != k.ct_sha256 || hex_of(enc.ss) != k.ss) continue;
        if (hex_of(kem_decaps(enc.ct, kp.sk)) != k.ss) continue;
        Bytes bad_ct = enc.ct;
        bad_ct[0] ^= 1;
        if (hex_of(kem_decaps(bad_ct, kp.sk)) != k.ss_reject) continue;
        ++kats;
    }
    const int kat_total = int(std::size(testvec::kKyberKats));

    // Entry 0 is also pinned byte for byte, not only by digest.
    KemKeyPair kp0 = kem_keygen_dz(from_hex(testvec::kKyberKats[0].d),
                                   from_hex(testvec::kKyberKats[0].z));
    bool full_bytes = hex_of(kp0.pk) == testvec::kKyberKat0Pk &&
                      hex_of(kp0.sk) == testvec::kKyberKat0Sk;
    KemEncapsResult enc0 = kem_encaps(kp0.pk, from_hex(testvec::kKyberKats[0].m));
    full_bytes = full_bytes && hex_of(enc0.ct) == testvec::kKyberKat0Ct;

    SplitMix64Rng rng(501);
    int roundtrips = 0;
    const int rt_total = 1000;
    for (int k = 0; k < rt_total; ++k) {
        Bytes seed(kKemSeedBytes), coins(32);
        rng.fill(seed.data(), seed.size());
        rng.fill(coins.data(), coins.size());
        KemKeyPair kp = kem_keygen(seed);
        KemEncapsResult enc = kem_encaps(kp.pk, coins);
        if (kp.pk.size() == kKemPublicKeyBytes &&
            kp.sk.size() == kKemSecretKeyBytes &&
            enc.ct.size() == kKemCiphertextBytes &&
            enc.ss.size() == kKemSharedSecretBytes &&
            kem_decaps(enc.ct, kp.sk) == enc.ss)
            ++roundtrips;
    }

    detail << kats << "/" << kat_total << " known-answer vectors byte-exact"
           << (full_bytes ? " (entry 0 full bytes)" : " (entry 0 MISMATCH)")
           << ", " << roundtrips << "/" << rt_total
           << " round-trips with correct sizes";
    return kats == kat_total && full_bytes && roundtrips == rt_total;
}

bool criterion_hashes(std::ostringstream& detail) {
    int sha_good = 0, sha_total = 0;
    bool saw_empty = false, saw_abc = false, saw_boundary = false;
    for (const auto& k : testvec::kHashKats) {
        Bytes msg = k.msg_hex != nullptr
                        ? from_hex(k.msg_hex)
                        : Bytes(size_t(k.fill_len), uint8_t(k.fill_ch));
        ++sha_total;
        if (to_hex(sha256(msg).data(), 32) == std::string(k.sha256)) ++sha_good;
        if (msg.empty()) saw_empty = true;
        if (msg == Bytes{0x61, 0x62, 0x63}) saw_abc = true;
        if (msg.size() == 55 || msg.size() == 56 || msg.size() == 64)
            saw_boundary = true;
    }

    int bc_good = 0, bc_cost4 = 0, bc_total = 0;
    for (const auto& v : testvec::kBcryptVecs) {
        Bytes pw = from_hex(v.pw_hex);
        if (pw.size() > 72) continue;  // reference tool truncates there
        ++bc_total;
        BcryptParams p;
        p.cost = v.cost;
        Bytes salt = from_hex(v.salt_hex);
        std::copy(salt.begin(), salt.end(), p.salt.begin());
        p.message = pw;
        BcryptResult r = bcrypt_hash(p);
        if (to_hex(r.raw.data(), r.raw.size()) == std::string(v.raw_hex) &&
            r.encoded == v.encoded) {
            ++bc_good;
            if (v.cost == 4) ++bc_cost4;
        }
    }

    detail << sha_good << "/" << sha_total << " sha256 vectors, " << bc_good
           << "/" << bc_total << " bcrypt vectors (" << bc_cost4
           << " at cost 4)";
    return sha_good == sha_total && saw_empty && saw_abc && saw_boundary &&
           bc_good == bc_total && bc_cost4 >= 10;
}

bool criterion_rekey(std::ostringstream& detail) {
    Rig rig("rekey", 701);
    SplitMix64Rng crng(702);
    Credentials creds{"rekey-owner", "left passphrase", "right passphrase", 4};

    WalletHandle cur = register_flow(creds, rig.transport, crng);
    std::set<Bytes> pks{cur.keypair.pk};

    int fresh = 0, old_backup_stale = 0, old_proof_dead = 0;
    const int rounds = 50;
    for (int k = 0; k < rounds; ++k) {
        ShareVec prev_backup = cur.backup;
        int prev_version = cur.record_version;
        Bytes prev_pk = cur.keypair.pk;
        Digest32 prev_kauth = auth_key(digest_from(cur.keypair.seed));

        WalletHandle s = unlock_flow(creds, rig.transport, crng);
        cur = rekey_flow(s, creds, rig.transport, crng);
        if (pks.insert(cur.keypair.pk).second) ++fresh;

        WalletHandle old = offline_recover(creds, prev_backup, prev_version);
        if (old.keypair.pk == prev_pk && old.keypair.pk != cur.keypair.pk)
            ++old_backup_stale;

        Digest32 nonce = rig.router.challenge(cur.uid).nonce;
        if (is_auth_failed([&] {
                rig.router.verify({cur.uid, nonce, make_proof(prev_kauth, nonce)});
            }))
            ++old_proof_dead;
    }

    detail << pks.size() << "/51 pairwise-distinct public keys, "
           << old_backup_stale << "/" << rounds << " stale backups diverge, "
           << old_proof_dead << "/" << rounds << " old proofs rejected";
    return int(pks.size()) == rounds + 1 && fresh == rounds &&
           old_backup_stale == rounds && old_proof_dead == rounds;
}

bool criterion_offline_recovery(std::ostringstream& detail) {
    std::string store_path = temp_path("offline");
    ChildServer server;
    if (!server.start(store_path, 38470 + int(::getpid() % 500), 1000)) {
        detail << "server process did not come up";
        return false;
    }

    Credentials creds{"outage-owner", "power grid", "diesel backup", 4};
    SplitMix64Rng crng(801);
    Bytes pre_outage_pk;
    ShareVec backup{};
    int record_version = 0;
    {
        HttpTransport t("127.0.0.1", server.port);
        WalletHandle h = register_flow(creds, t, crng);
        pre_outage_pk = h.keypair.pk;
        backup = h.backup;
        record_version = h.record_version;
    }

    int exit_code = server.stop();
    bool down = false;
    try {
        HttpTransport t("127.0.0.1", server.port);
        t.post("/v1/derive", "{}");
    } catch (const Error& e) {
        down = e.code() == ErrorCode::TransportError;
    }

    CountingStubTransport stub;
    WalletHandle recovered = offline_recover(creds, backup, record_version);

    bool ok = exit_code == 0 && down && recovered.keypair.pk == pre_outage_pk &&
              stub.calls() == 0;
    detail << "server exit " << exit_code << ", "
           << (down ? "port confirmed dead" : "PORT STILL ANSWERS") << ", "
           << (recovered.keypair.pk == pre_outage_pk ? "recovered pk matches"
                                                     : "recovered pk DIFFERS")
           << ", " << stub.calls() << " network calls";
    std::filesystem::remove(store_path);
    return ok;
}

bool criterion_unlock_soundness(std::ostringstream& detail) {
    Rig rig("soundness", 901);
    SplitMix64Rng crng(902);
    Credentials creds{"sound-owner", "correct first", "correct second", 4};
    WalletHandle reg = register_flow(creds, rig.transport, crng);
    Digest32 k_auth = auth_key(digest_from(reg.keypair.seed));

    int accepted = 0;
    const int total = 1000;
    for (int k = 0; k < total; ++k) {
        WalletHandle h = unlock_flow(creds, rig.transport, crng);
        if (h.session && h.keypair.pk == reg.keypair.pk) ++accepted;
    }

    int rejected = 0;
    for (int k = 0; k < total; ++k) {
        Credentials wrong = creds;
        if (k % 2 == 0)
            wrong.password1 = "wrong-" + std::to_string(k);
        else
            wrong.password2 = "wrong-" + std::to_string(k);
        if (is_auth_failed(
                [&] { unlock_flow(wrong, rig.transport, crng); }))
            ++rejected;
    }

    int replays_rejected = 0;
    for (int k = 0; k < total; ++k) {
        Digest32 nonce = rig.router.challenge(reg.uid).nonce;
        Digest32 proof = make_proof(k_auth, nonce);
        VerifyResponse first = rig.router.verify({reg.uid, nonce, proof});
        if (!first.ok) continue;
        if (is_auth_failed(
                [&] { rig.router.verify({reg.uid, nonce, proof}); }))
            ++replays_rejected;
    }

    detail << accepted << "/" << total << " correct unlocks accepted, "
           << rejected << "/" << total << " wrong-password unlocks rejected, "
           << replays_rejected << "/" << total << " nonce replays rejected";
    return accepted == total && rejected == total && replays_rejected == total;
}

bool criterion_server_robustness(std::ostringstream& detail) {
    // Restart: run the real binary, write records, restart, compare bytes.
    std::string store_path = temp_path("robust");
    int port = 38970 + int(::getpid() % 500);
    SplitMix64Rng crng(1001);
    std::vector<Credentials> users;
    for (int k = 0; k < 3; ++k)
        users.push_back({"robust-user-" + std::to_string(k),
                         "pw1-" + std::to_string(k), "pw2-" + std::to_string(k),
                         4});

    ChildServer first;
    if (!first.start(store_path, port, 10)) {
        detail << "server process did not come up";
        return false;
    }
    std::vector<Bytes> pks;
    {
        HttpTransport t("127.0.0.1", first.port);
        for (const auto& u : users) pks.push_back(register_flow(u, t, crng).keypair.pk);
    }
    int first_exit = first.stop();
    std::string before = read_file(store_path);

    ChildServer second;
    if (!second.start(store_path, port + 1, 10)) {
        detail << "server did not come back up after restart";
        return false;
    }
    bool unlock_after_restart = false;
    {
        HttpTransport t("127.0.0.1", second.port);
        WalletHandle h = unlock_flow(users[0], t, crng);
        unlock_after_restart = h.keypair.pk == pks[0];
    }
    std::string after = read_file(store_path);
    bool bytes_identical = !before.empty() && before == after;

    // Rate limit: the 11th derive for one uid inside a minute is refused.
    int limited_at = 0;
    {
        HttpTransport t("127.0.0.1", second.port);
        DeriveRequest req;
        req.uid = uid_of("rate-check-user");
        for (int k = 1; k <= 11; ++k) {
            HttpResponse r = t.post("/v1/derive", encode(req));
            if (r.status == 429 &&
                decode_error(r.body).code == ErrorCode::RateLimited) {
                limited_at = k;
                break;
            }
            if (r.status != 200) break;
        }
    }
    int second_exit = second.stop();
    std::filesystem::remove(store_path);

    // Concurrency: 32 threads race the first derive for one uid.
    std::string race_path = temp_path("race");
    RecordStore race_store(race_path);
    SystemRng srng;
    Router race_router(race_store, srng, ServerConfig{0, 60, 600});
    Digest32 race_uid = uid_of("race-user");
    std::atomic<int> created{0}, version_one{0};
    std::vector<std::thread> threads;
    std::vector<LatticeVec> tau2(32);
    for (int i = 0; i < 32; ++i) {
        threads.emplace_back([&, i] {
            DeriveRequest req;
            req.uid = race_uid;
            for (auto& c : req.tau1) c = uint16_t((31 * i) % 16384);
            DeriveResponse resp = race_router.derive(req);
            if (resp.created) ++created;
            if (resp.version == 1) ++version_one;
            for (int j = 0; j < kLatticeM; ++j)
                tau2[size_t(i)][j] =
                    uint16_t((tau2[size_t(i)][j] + resp.tau2[j] + 16384 -
                              req.tau1[j]) % 16384);
        });
    }
    for (auto& th : threads) th.join();
    bool pads_agree = true;
    for (int i = 1; i < 32; ++i) pads_agree = pads_agree && tau2[size_t(i)] == tau2[0];
    bool one_record = race_store.size() == 1 &&
                      race_store.get(race_uid).has_value() &&
                      race_store.get(race_uid)->version == 1;
    std::filesystem::remove(race_path);

    bool ok = first_exit == 0 && second_exit == 0 && bytes_identical &&
              unlock_after_restart && created == 1 && version_one == 32 &&
              pads_agree && one_record && limited_at == 11;
    detail << (bytes_identical ? "store byte-identical across restart"
                               : "store CHANGED across restart")
           << ", unlock after restart "
           << (unlock_after_restart ? "ok" : "FAILED") << ", " << created.load()
           << " creator among 32 racers, derive refused at call " << limited_at;
    return ok;
}

struct CriterionEntry {
    int num;
    const char* name;
    bool (*fn)(std::ostringstream&);
};

}  // namespace

int main() {
    const CriterionEntry entries[] = {
        {1, "deterministic key derivation", criterion_determinism},
        {2, "blinding transport", criterion_blinding},
        {3, "threshold reconstruction and hiding", criterion_threshold},
        {4, "noisy share recovery", criterion_noisy_shares},
        {5, "kem known answers and round trips", criterion_kem},
        {6, "hash known answers", criterion_hashes},
        {7, "rekey freshness", criterion_rekey},
        {8, "offline recovery with the server down", criterion_offline_recovery},
        {9, "unlock soundness and replay rejection", criterion_unlock_soundness},
        {10, "server restart, concurrency and rate limiting",
         criterion_server_robustness},
    };

    int failed = 0;
    for (const auto& e : entries) {
        auto t0 = std::chrono::steady_clock::now();
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = e.fn(detail);
        } catch (const std::exception& ex) {
            detail << "unexpected error: " << ex.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::printf("[%s] %2d %s: %s (%lld ms)\n", ok ? "PASS" : "FAIL", e.num,
                    e.name, detail.str().c_str(), (long long)ms);
        std::fflush(stdout);
        if (!ok) ++failed;
    }

    int total = int(std::size(entries));
    std::printf("%d/%d acceptance criteria passed\n", total - failed, total);
    return failed == 0 ? 0 : 1;
}
