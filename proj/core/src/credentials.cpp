#include "pqw/credentials.h"

#include "pqw/bcrypt.h"
#include "pqw/error.h"

namespace pqw {

static constexpr uint8_t kFieldSep = 0x1f;

std::array<uint8_t, 16> derive_salt(std::string_view username) {
    if (username.empty()) {
        throw Error(ErrorCode::ParameterError, "username must be non-empty");
    }
    Sha256 h;
    h.update("pqw-salt-v1");
    h.update(&kFieldSep, 1);
    h.update(username);
    Digest32 full = h.finish();
    std::array<uint8_t, 16> salt;
    std::copy(full.begin(), full.begin() + 16, salt.begin());
    return salt;
}

Digest32 credential_hash(const Bytes& message,
                         const std::array<uint8_t, 16>& salt, int cost) {
    BcryptParams params;
    params.cost = cost;
    params.salt = salt;
    params.message = message;
    return sha256(bcrypt_hash(params).encoded);
}

CredentialDigests derive_eta_mu(std::string_view username, std::string_view pw1,
                                std::string_view pw2, int cost) {
    if (username.empty() || pw1.empty() || pw2.empty()) {
        throw Error(ErrorCode::ParameterError, "credential fields must be non-empty");
    }
    auto salt = derive_salt(username);

    Bytes m1 = to_bytes(username);
    m1.push_back(kFieldSep);
    m1.insert(m1.end(), pw1.begin(), pw1.end());

    Bytes m2 = to_bytes(pw1);
    m2.push_back(kFieldSep);
    m2.insert(m2.end(), pw2.begin(), pw2.end());

    CredentialDigests out;
    out.eta = credential_hash(m1, salt, cost);
    out.mu = credential_hash(m2, salt, cost);
    return out;
}

}  // namespace pqw
