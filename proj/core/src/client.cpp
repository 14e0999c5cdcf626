#include "pqw/client.h"

#include "pqw/lattice.h"

namespace pqw {

namespace {

struct DerivedInputs {
    Digest32 uid{};
    Digest32 mu{};
    LatticePoint rho;
};

DerivedInputs derive_inputs(const Credentials& creds, const LatticeParams& p) {
    DerivedInputs d;
    d.uid = uid_of(creds.username);
    auto digests = derive_eta_mu(creds.username, creds.password1,
                                 creds.password2, creds.cost);
    d.mu = digests.mu;
    d.rho = hash_to_lattice_point(digests.eta, p);
    return d;
}

[[noreturn]] void raise_server_error(const HttpResponse& r) {
    ErrorBody e = decode_error(r.body);
    throw Error(e.code, e.detail.empty() ? "server rejected the request"
                                         : e.detail);
}

HttpResponse post_ok(Transport& t, const std::string& path,
                     const std::string& body) {
    HttpResponse r = t.post(path, body);
    if (r.status != 200) raise_server_error(r);
    return r;
}

HttpResponse get_ok(Transport& t, const std::string& path) {
    HttpResponse r = t.get(path);
    if (r.status != 200) raise_server_error(r);
    return r;
}

struct WalletSecrets {
    WalletShareSet shares;
    Digest32 seed{};
};

// tau2 -> rho' -> (s_rho, s_mu) -> phi/backup -> seed.
WalletSecrets secrets_from_pad(const LatticeVec& tau2, const BlindState& st,
                               const Digest32& mu, const LatticeParams& p) {
    LatticePoint rho_prime =
        unblind_point(BlindedPoint{tau2, BlindStage::ServerPadded}, st, p);
    auto [s_rho, s_mu] = shares_from_inputs(rho_prime, mu);
    WalletSecrets w;
    w.shares = wallet_combine(s_rho, s_mu);
    w.seed = seed_from_phi(w.shares.phi);
    return w;
}

Bytes seed_bytes(const Digest32& seed) {
    return Bytes(seed.begin(), seed.end());
}

void enroll_with_token(Transport& t, const Digest32& uid, const Digest32& seed,
                       const Digest32& token) {
    EnrollRequest req{uid, auth_key(seed), token, std::nullopt};
    auto resp = decode_enroll_response(post_ok(t, "/v1/enroll", encode(req)).body);
    if (!resp.ok)
        throw Error(ErrorCode::TransportError, "enroll was not acknowledged");
}

}  // namespace

WalletHandle register_flow(const Credentials& creds, Transport& t, Rng& rng) {
    LatticeParams p = default_params();
    DerivedInputs d = derive_inputs(creds, p);

    BlindState st = sample_blind_state(rng, p);
    DeriveRequest dreq{d.uid, blind_point(d.rho, st, p).tau};
    auto dresp =
        decode_derive_response(post_ok(t, "/v1/derive", encode(dreq)).body);
    if (!dresp.created)
        throw Error(ErrorCode::UserExists, "username already registered");

    WalletSecrets w = secrets_from_pad(dresp.tau2, st, d.mu, p);
    enroll_with_token(t, d.uid, w.seed, *dresp.enroll_token);

    WalletHandle h;
    h.uid = d.uid;
    h.keypair = kem_keygen(seed_bytes(w.seed));
    h.backup = w.shares.backup;
    h.server = t.label();
    h.record_version = dresp.version;
    return h;
}

WalletHandle unlock_flow(const Credentials& creds, Transport& t, Rng& rng) {
    LatticeParams p = default_params();
    Digest32 uid = uid_of(creds.username);

    // Challenge first: it gates on an enrolled record, so an unlock against
    // an unknown username fails here without creating server state.
    std::string path = "/v1/challenge?uid=" + to_hex(uid.data(), uid.size());
    auto ch = decode_challenge_response(get_ok(t, path).body);

    DerivedInputs d = derive_inputs(creds, p);
    BlindState st = sample_blind_state(rng, p);
    DeriveRequest dreq{d.uid, blind_point(d.rho, st, p).tau};
    auto dresp =
        decode_derive_response(post_ok(t, "/v1/derive", encode(dreq)).body);
    if (dresp.created)
        throw Error(ErrorCode::UnknownUser, "record vanished between challenge and derive");

    WalletSecrets w = secrets_from_pad(dresp.tau2, st, d.mu, p);

    VerifyRequest vreq{d.uid, ch.nonce, make_proof(auth_key(w.seed), ch.nonce)};
    auto vresp =
        decode_verify_response(post_ok(t, "/v1/verify", encode(vreq)).body);
    if (!vresp.ok) throw Error(ErrorCode::AuthFailed, "proof was not accepted");

    WalletHandle h;
    h.uid = d.uid;
    h.keypair = kem_keygen(seed_bytes(w.seed));
    h.backup = w.shares.backup;
    h.server = t.label();
    h.record_version = dresp.version;
    h.session = vresp.session;
    return h;
}

WalletHandle rekey_flow(const WalletHandle& handle, const Credentials& creds,
                        Transport& t, Rng& rng) {
    if (!handle.session)
        throw Error(ErrorCode::AuthFailed, "rekey needs a handle with a session");

    LatticeParams p = default_params();
    DerivedInputs d = derive_inputs(creds, p);
    if (d.uid != handle.uid)
        throw Error(ErrorCode::ParameterError,
                    "credentials do not match the wallet handle");

    BlindState st = sample_blind_state(rng, p);
    RekeyRequest rreq{d.uid, *handle.session, blind_point(d.rho, st, p).tau};
    auto rresp =
        decode_rekey_response(post_ok(t, "/v1/rekey", encode(rreq)).body);

    WalletSecrets w = secrets_from_pad(rresp.tau2, st, d.mu, p);
    enroll_with_token(t, d.uid, w.seed, rresp.enroll_token);

    WalletHandle h;
    h.uid = d.uid;
    h.keypair = kem_keygen(seed_bytes(w.seed));
    h.backup = w.shares.backup;
    h.server = t.label();
    h.record_version = rresp.version;
    return h;
}

WalletHandle offline_recover(const Credentials& creds, const ShareVec& backup,
                             int record_version) {
    Digest32 uid = uid_of(creds.username);
    auto digests = derive_eta_mu(creds.username, creds.password1,
                                 creds.password2, creds.cost);
    ShareVec s_mu = shares_from_inputs(LatticePoint{}, digests.mu).second;
    ShareVec phi = wallet_recover(IndexedShare{2, s_mu}, IndexedShare{3, backup});
    Digest32 seed = seed_from_phi(phi);

    WalletHandle h;
    h.uid = uid;
    h.keypair = kem_keygen(Bytes(seed.begin(), seed.end()));
    h.backup = backup;
    h.record_version = record_version;
    return h;
}

}  // namespace pqw
