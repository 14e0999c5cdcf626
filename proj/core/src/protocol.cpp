#include "pqw/protocol.h"

#include <cstdint>

#include "json.hpp"

namespace pqw {

namespace {

using nlohmann::json;

constexpr uint8_t kSep = 0x1f;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
    throw Error(ErrorCode::BadRequest, path + ": " + why);
}

json parse_object(const std::string& body, const char* ctx) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) bad(ctx, "invalid json");
    if (!j.is_object()) bad(ctx, "expected an object");
    return j;
}

void check_fields(const json& j, const char* ctx,
                  std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (item.key() == a) {
                known = true;
                break;
            }
        }
        if (!known) bad(std::string(ctx) + "." + item.key(), "unknown field");
    }
}

const json& require(const json& j, const char* ctx, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) bad(std::string(ctx) + "." + name, "missing field");
    return *it;
}

void check_v(const json& j, const char* ctx) {
    const json& v = require(j, ctx, "v");
    if (!v.is_number_integer() || v.get<int64_t>() != 1)
        bad(std::string(ctx) + ".v", "unsupported protocol version");
}

Digest32 get_hex32(const json& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected a hex string");
    return parse_hex32(v.get_ref<const std::string&>(), path);
}

LatticeVec get_vec(const json& v, const std::string& path) {
    if (!v.is_array()) bad(path, "expected an array");
    if (v.size() != kLatticeM) bad(path, "expected 16 coefficients");
    LatticeVec out{};
    for (size_t i = 0; i < kLatticeM; ++i) {
        const json& e = v[i];
        std::string at = path + "[" + std::to_string(i) + "]";
        if (!e.is_number_integer()) bad(at, "expected an integer");
        int64_t x = e.get<int64_t>();
        if (x < 0 || x >= 16384) bad(at, "coefficient out of range");
        out[i] = uint16_t(x);
    }
    return out;
}

int get_version(const json& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    int64_t x = v.get<int64_t>();
    if (x < 1 || x > INT32_MAX) bad(path, "version out of range");
    return int(x);
}

bool get_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) bad(path, "expected a boolean");
    return v.get<bool>();
}

std::string hex_of(const Digest32& d) { return to_hex(d.data(), d.size()); }

json vec_json(const LatticeVec& v) {
    json a = json::array();
    for (uint16_t c : v) a.push_back(int(c));
    return a;
}

}  // namespace

Digest32 uid_of(std::string_view username) {
    if (username.empty())
        throw Error(ErrorCode::ParameterError, "username must not be empty");
    Sha256 h;
    h.update(std::string_view("pqw-uid-v1"));
    h.update(&kSep, 1);
    h.update(username);
    return h.finish();
}

Digest32 auth_key(const Digest32& seed) {
    Sha256 h;
    h.update(std::string_view("pqw-auth-v1"));
    h.update(&kSep, 1);
    h.update(seed.data(), seed.size());
    return h.finish();
}

Digest32 make_proof(const Digest32& k_auth, const Digest32& nonce) {
    Sha256 h;
    h.update(std::string_view("pqw-proof-v1"));
    h.update(&kSep, 1);
    h.update(k_auth.data(), k_auth.size());
    h.update(nonce.data(), nonce.size());
    return h.finish();
}

bool check_proof(const Digest32& k_auth, const Digest32& nonce,
                 const Digest32& proof) {
    Digest32 want = make_proof(k_auth, nonce);
    return ct_equal(proof.data(), proof.size(), want.data(), want.size());
}

std::string encode(const DeriveRequest& m) {
    json j;
    j["v"] = 1;
    j["uid"] = hex_of(m.uid);
    j["tau1"] = vec_json(m.tau1);
    return j.dump();
}

std::string encode(const DeriveResponse& m) {
    json j;
    j["v"] = 1;
    j["tau2"] = vec_json(m.tau2);
    j["version"] = m.version;
    j["created"] = m.created;
    if (m.enroll_token) j["enroll_token"] = hex_of(*m.enroll_token);
    return j.dump();
}

std::string encode(const EnrollRequest& m) {
    json j;
    j["v"] = 1;
    j["uid"] = hex_of(m.uid);
    j["k_auth"] = hex_of(m.k_auth);
    if (m.enroll_token) j["enroll_token"] = hex_of(*m.enroll_token);
    if (m.session) j["session"] = hex_of(*m.session);
    return j.dump();
}

std::string encode(const EnrollResponse& m) {
    json j;
    j["ok"] = m.ok;
    return j.dump();
}

std::string encode(const ChallengeResponse& m) {
    json j;
    j["nonce"] = hex_of(m.nonce);
    return j.dump();
}

std::string encode(const VerifyRequest& m) {
    json j;
    j["v"] = 1;
    j["uid"] = hex_of(m.uid);
    j["nonce"] = hex_of(m.nonce);
    j["proof"] = hex_of(m.proof);
    return j.dump();
}

std::string encode(const VerifyResponse& m) {
    json j;
    j["ok"] = m.ok;
    j["session"] = hex_of(m.session);
    return j.dump();
}

std::string encode(const RekeyRequest& m) {
    json j;
    j["v"] = 1;
    j["uid"] = hex_of(m.uid);
    j["session"] = hex_of(m.session);
    j["tau1"] = vec_json(m.tau1);
    return j.dump();
}

std::string encode(const RekeyResponse& m) {
    json j;
    j["tau2"] = vec_json(m.tau2);
    j["version"] = m.version;
    j["enroll_token"] = hex_of(m.enroll_token);
    return j.dump();
}

DeriveRequest decode_derive_request(const std::string& body) {
    const char* ctx = "derive";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"v", "uid", "tau1"});
    check_v(j, ctx);
    DeriveRequest m;
    m.uid = get_hex32(require(j, ctx, "uid"), "derive.uid");
    m.tau1 = get_vec(require(j, ctx, "tau1"), "derive.tau1");
    return m;
}

DeriveResponse decode_derive_response(const std::string& body) {
    const char* ctx = "derive_response";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"v", "tau2", "version", "created", "enroll_token"});
    check_v(j, ctx);
    DeriveResponse m;
    m.tau2 = get_vec(require(j, ctx, "tau2"), "derive_response.tau2");
    m.version = get_version(require(j, ctx, "version"), "derive_response.version");
    m.created = get_bool(require(j, ctx, "created"), "derive_response.created");
    if (j.contains("enroll_token"))
        m.enroll_token = get_hex32(j["enroll_token"], "derive_response.enroll_token");
    if (m.created != m.enroll_token.has_value())
        bad("derive_response.enroll_token", "must accompany created records only");
    return m;
}

EnrollRequest decode_enroll_request(const std::string& body) {
    const char* ctx = "enroll";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"v", "uid", "k_auth", "enroll_token", "session"});
    check_v(j, ctx);
    EnrollRequest m;
    m.uid = get_hex32(require(j, ctx, "uid"), "enroll.uid");
    m.k_auth = get_hex32(require(j, ctx, "k_auth"), "enroll.k_auth");
    if (j.contains("enroll_token"))
        m.enroll_token = get_hex32(j["enroll_token"], "enroll.enroll_token");
    if (j.contains("session"))
        m.session = get_hex32(j["session"], "enroll.session");
    if (m.enroll_token.has_value() == m.session.has_value())
        bad("enroll.enroll_token", "exactly one of enroll_token or session");
    return m;
}

EnrollResponse decode_enroll_response(const std::string& body) {
    const char* ctx = "enroll_response";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"ok"});
    EnrollResponse m;
    m.ok = get_bool(require(j, ctx, "ok"), "enroll_response.ok");
    return m;
}

ChallengeResponse decode_challenge_response(const std::string& body) {
    const char* ctx = "challenge_response";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"nonce"});
    ChallengeResponse m;
    m.nonce = get_hex32(require(j, ctx, "nonce"), "challenge_response.nonce");
    return m;
}

VerifyRequest decode_verify_request(const std::string& body) {
    const char* ctx = "verify";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"v", "uid", "nonce", "proof"});
    check_v(j, ctx);
    VerifyRequest m;
    m.uid = get_hex32(require(j, ctx, "uid"), "verify.uid");
    m.nonce = get_hex32(require(j, ctx, "nonce"), "verify.nonce");
    m.proof = get_hex32(require(j, ctx, "proof"), "verify.proof");
    return m;
}

VerifyResponse decode_verify_response(const std::string& body) {
    const char* ctx = "verify_response";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"ok", "session"});
    VerifyResponse m;
    m.ok = get_bool(require(j, ctx, "ok"), "verify_response.ok");
    m.session = get_hex32(require(j, ctx, "session"), "verify_response.session");
    return m;
}

RekeyRequest decode_rekey_request(const std::string& body) {
    const char* ctx = "rekey";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"v", "uid", "session", "tau1"});
    check_v(j, ctx);
    RekeyRequest m;
    m.uid = get_hex32(require(j, ctx, "uid"), "rekey.uid");
    m.session = get_hex32(require(j, ctx, "session"), "rekey.session");
    m.tau1 = get_vec(require(j, ctx, "tau1"), "rekey.tau1");
    return m;
}

RekeyResponse decode_rekey_response(const std::string& body) {
    const char* ctx = "rekey_response";
    json j = parse_object(body, ctx);
    check_fields(j, ctx, {"tau2", "version", "enroll_token"});
    RekeyResponse m;
    m.tau2 = get_vec(require(j, ctx, "tau2"), "rekey_response.tau2");
    m.version = get_version(require(j, ctx, "version"), "rekey_response.version");
    m.enroll_token =
        get_hex32(require(j, ctx, "enroll_token"), "rekey_response.enroll_token");
    return m;
}

std::string encode_error(ErrorCode code, const std::string& detail) {
    json j;
    j["error"] = std::string(error_name(code));
    j["detail"] = detail;
    return j.dump();
}

ErrorBody decode_error(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("error") ||
        !j["error"].is_string())
        throw Error(ErrorCode::TransportError, "malformed error body");
    ErrorBody e;
    e.code = error_from_name(j["error"].get<std::string>());
    if (j.contains("detail") && j["detail"].is_string())
        e.detail = j["detail"].get<std::string>();
    return e;
}

Digest32 parse_hex32(const std::string& hex, const std::string& path) {
    if (hex.size() != 64) bad(path, "expected 64 hex chars");
    Digest32 out{};
    for (size_t i = 0; i < 64; ++i) {
        char c = hex[i];
        int nib;
        if (c >= '0' && c <= '9') nib = c - '0';
        else if (c >= 'a' && c <= 'f') nib = 10 + c - 'a';
        else bad(path, "expected lowercase hex");
        out[i / 2] = uint8_t((out[i / 2] << 4) | nib);
    }
    return out;
}

}  // namespace pqw
