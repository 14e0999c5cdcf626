#pragma once

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pqw/ltsss.h"

namespace pqw {

// Environment the CLI consults: PQW_USERNAME, PQW_PASSWORD1, PQW_PASSWORD2
// (credential overrides for automation) and PQW_SERVER.
struct CliEnv {
    std::map<std::string, std::string> vars;

    const char* get(const char* key) const {
        auto it = vars.find(key);
        return it == vars.end() ? nullptr : it->second.c_str();
    }
};

CliEnv env_from_process();

struct CliIo {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool interactive = false;  // enables no-echo terminal prompts
};

// On-disk backup share. One share alone cannot reproduce the wallet; it
// combines with the password-derived share during recovery.
struct BackupFile {
    int version = 1;
    int x = 3;
    ShareVec share{};
    int record_version = 1;
    std::string kem = "kyber512-v1";
};

// Canonical, newline-terminated JSON. decode throws Error(UsageError) with
// the offending field path.
std::string backup_encode(const ShareVec& share, int record_version);
BackupFile backup_decode(const std::string& text);

// Subcommands: register | unlock | rekey | backup export | recover | pubkey.
// Exit codes: 0 success; 1 rejected by the server (wrong credentials,
// existing user, stale session, rate limit); 2 usage error; 3 transport
// failure or corrupt state.
int run_command(const std::vector<std::string>& args, const CliEnv& env,
                CliIo& io);

}  // namespace pqw
