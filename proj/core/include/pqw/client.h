#pragma once

#include <optional>
#include <string>

#include "pqw/credentials.h"
#include "pqw/kem.h"
#include "pqw/ltsss.h"
#include "pqw/protocol.h"
#include "pqw/transport.h"

namespace pqw {

struct Credentials {
    std::string username;
    std::string password1;
    std::string password2;
    int cost = kDefaultBcryptCost;
};

// Client-side wallet state after a completed flow. Carries the keypair and
// the offline backup share; passwords and the combined secret never outlive
// the derivation that produced them.
struct WalletHandle {
    Digest32 uid{};
    KemKeyPair keypair;
    ShareVec backup{};
    std::string server;
    int record_version = 0;
    std::optional<Digest32> session;
};

// First contact: creates the server record, derives the keypair and enrolls
// the auth key. Throws UserExists when the username already has a record.
WalletHandle register_flow(const Credentials& creds, Transport& t, Rng& rng);

// Repeat derivation plus proof-of-possession; the returned handle carries a
// session usable for rekey. Wrong passwords surface as AuthFailed, an
// unregistered username as UnknownUser.
WalletHandle unlock_flow(const Credentials& creds, Transport& t, Rng& rng);

// Rotates the server pad under the session in `handle`. Same passwords, new
// keypair and backup; the old backup stops matching the new record.
WalletHandle rekey_flow(const WalletHandle& handle, const Credentials& creds,
                        Transport& t, Rng& rng);

// Rebuilds the keypair from passwords plus the backup share. Takes no
// transport: recovery works with the server gone.
WalletHandle offline_recover(const Credentials& creds, const ShareVec& backup,
                             int record_version);

}  // namespace pqw
