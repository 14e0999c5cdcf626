#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pqw/bytes.h"
#include "pqw/error.h"
#include "pqw/lattice.h"
#include "pqw/sha256.h"

namespace pqw {

// sha256("pqw-uid-v1" 0x1f utf8(username)); the only user identifier the
// server ever sees.
Digest32 uid_of(std::string_view username);

// Hash-based proof of possession of the derivation seed. Deliberately not a
// formal zero-knowledge proof; the verifier learns make_proof(k_auth, nonce).
Digest32 auth_key(const Digest32& seed);
Digest32 make_proof(const Digest32& k_auth, const Digest32& nonce);
// Constant-time comparison against the recomputed proof.
bool check_proof(const Digest32& k_auth, const Digest32& nonce,
                 const Digest32& proof);

// Wire messages. All 32-byte fields travel as 64-char lowercase hex; vector
// fields as arrays of 16 integers in [0, q).

struct DeriveRequest {
    Digest32 uid{};
    LatticeVec tau1{};
    bool operator==(const DeriveRequest&) const = default;
};

struct DeriveResponse {
    LatticeVec tau2{};
    int version = 0;
    bool created = false;
    std::optional<Digest32> enroll_token;  // present iff created
    bool operator==(const DeriveResponse&) const = default;
};

struct EnrollRequest {
    Digest32 uid{};
    Digest32 k_auth{};
    std::optional<Digest32> enroll_token;  // exactly one of token / session
    std::optional<Digest32> session;
    bool operator==(const EnrollRequest&) const = default;
};

struct EnrollResponse {
    bool ok = false;
    bool operator==(const EnrollResponse&) const = default;
};

struct ChallengeResponse {
    Digest32 nonce{};
    bool operator==(const ChallengeResponse&) const = default;
};

struct VerifyRequest {
    Digest32 uid{};
    Digest32 nonce{};
    Digest32 proof{};
    bool operator==(const VerifyRequest&) const = default;
};

struct VerifyResponse {
    bool ok = false;
    Digest32 session{};
    bool operator==(const VerifyResponse&) const = default;
};

struct RekeyRequest {
    Digest32 uid{};
    Digest32 session{};
    LatticeVec tau1{};
    bool operator==(const RekeyRequest&) const = default;
};

struct RekeyResponse {
    LatticeVec tau2{};
    int version = 0;
    Digest32 enroll_token{};
    bool operator==(const RekeyResponse&) const = default;
};

struct ErrorBody {
    ErrorCode code = ErrorCode::BadRequest;
    std::string detail;
};

// Canonical JSON codecs. Decoders reject unknown fields, wrong types and
// out-of-range values with BadRequest carrying the offending field path.
std::string encode(const DeriveRequest& m);
std::string encode(const DeriveResponse& m);
std::string encode(const EnrollRequest& m);
std::string encode(const EnrollResponse& m);
std::string encode(const ChallengeResponse& m);
std::string encode(const VerifyRequest& m);
std::string encode(const VerifyResponse& m);
std::string encode(const RekeyRequest& m);
std::string encode(const RekeyResponse& m);

DeriveRequest decode_derive_request(const std::string& body);
DeriveResponse decode_derive_response(const std::string& body);
EnrollRequest decode_enroll_request(const std::string& body);
EnrollResponse decode_enroll_response(const std::string& body);
ChallengeResponse decode_challenge_response(const std::string& body);
VerifyRequest decode_verify_request(const std::string& body);
VerifyResponse decode_verify_response(const std::string& body);
RekeyRequest decode_rekey_request(const std::string& body);
RekeyResponse decode_rekey_response(const std::string& body);

std::string encode_error(ErrorCode code, const std::string& detail);
// Throws TransportError when the body is not a well-formed error object.
ErrorBody decode_error(const std::string& body);

// Strict 64-char lowercase hex to 32 bytes; throws BadRequest naming `path`.
Digest32 parse_hex32(const std::string& hex, const std::string& path);

}  // namespace pqw
