#include "pqw/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/stat.h>
#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "json.hpp"
#include "pqw/client.h"
#include "pqw/protocol.h"
#include "pqw/sha256.h"
#include "pqw/transport.h"

namespace fs = std::filesystem;

namespace pqw {

namespace {

using nlohmann::json;

[[noreturn]] void usage_error(const std::string& why) {
    throw Error(ErrorCode::UsageError, why);
}

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::AuthFailed:
        case ErrorCode::UnknownUser:
        case ErrorCode::UserExists:
        case ErrorCode::VersionConflict:
        case ErrorCode::RateLimited:
            return 1;
        case ErrorCode::TransportError:
        case ErrorCode::StoreCorrupt:
            return 3;
        default:
            return 2;
    }
}

struct ServerAddr {
    std::string host;
    int port = 0;
};

ServerAddr parse_server(const std::string& url) {
    std::string rest = url;
    if (rest.rfind("http://", 0) == 0) rest = rest.substr(7);
    if (!rest.empty() && rest.back() == '/') rest.pop_back();
    size_t colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= rest.size())
        usage_error("server address must be host:port, got \"" + url + "\"");
    long port = 0;
    for (size_t i = colon + 1; i < rest.size(); ++i) {
        if (rest[i] < '0' || rest[i] > '9')
            usage_error("server port must be numeric, got \"" + url + "\"");
        port = port * 10 + (rest[i] - '0');
        if (port > 65535) usage_error("server port out of range in \"" + url + "\"");
    }
    if (port == 0) usage_error("server port out of range in \"" + url + "\"");
    return {rest.substr(0, colon), int(port)};
}

std::string prompt_plain(CliIo& io, const char* label) {
    io.err << label << ": " << std::flush;
    std::string line;
    std::getline(io.in, line);
    return line;
}

std::string prompt_secret(CliIo& io, const char* label) {
    if (!io.interactive) return prompt_plain(io, label);
    io.err << label << ": " << std::flush;
    termios saved{};
    tcgetattr(STDIN_FILENO, &saved);
    termios noecho = saved;
    noecho.c_lflag &= ~tcflag_t(ECHO);
    tcsetattr(STDIN_FILENO, TCSANOW, &noecho);
    std::string line;
    std::getline(io.in, line);
    tcsetattr(STDIN_FILENO, TCSANOW, &saved);
    io.err << "\n";
    return line;
}

Credentials gather_credentials(const CliEnv& env, CliIo& io, int cost) {
    Credentials c;
    if (const char* u = env.get("PQW_USERNAME")) c.username = u;
    else c.username = prompt_plain(io, "username");
    if (const char* p = env.get("PQW_PASSWORD1")) c.password1 = p;
    else c.password1 = prompt_secret(io, "password 1");
    if (const char* p = env.get("PQW_PASSWORD2")) c.password2 = p;
    else c.password2 = prompt_secret(io, "password 2");
    c.cost = cost;
    if (c.username.empty()) usage_error("username must not be empty");
    return c;
}

std::string fingerprint(const Bytes& pk) {
    Digest32 d = sha256(pk);
    return to_hex(d.data(), d.size()).substr(0, 16);
}

fs::path cache_path(const std::string& store_dir, const Digest32& uid) {
    return fs::path(store_dir) / (to_hex(uid.data(), uid.size()) + ".wallet.json");
}

void write_cache(const std::string& store_dir, const WalletHandle& h,
                 CliIo& io) {
    std::error_code ec;
    fs::create_directories(store_dir, ec);
    fs::path path = cache_path(store_dir, h.uid);
    json j;
    j["kem"] = "kyber512-v1";
    j["pk"] = to_hex(h.keypair.pk);
    j["record_version"] = h.record_version;
    j["version"] = 1;
    std::ofstream out(path, std::ios::trunc);
    if (!out.is_open()) {
        io.err << "warning: could not write wallet cache " << path.string() << "\n";
        return;
    }
    out << j.dump() << "\n";
    out.close();
    ::chmod(path.c_str(), 0600);
}

struct CachedWallet {
    Bytes pk;
    int record_version = 0;
};

CachedWallet read_cache(const std::string& store_dir, const Digest32& uid) {
    fs::path path = cache_path(store_dir, uid);
    std::ifstream in(path);
    if (!in.is_open())
        usage_error("no cached wallet for this user; run register or unlock first");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("pk") ||
        !j["pk"].is_string() || !j.contains("record_version") ||
        !j["record_version"].is_number_integer())
        usage_error("wallet cache " + path.string() + " is malformed");
    CachedWallet c;
    c.pk = from_hex(j["pk"].get<std::string>());
    c.record_version = j["record_version"].get<int>();
    return c;
}

void write_backup_file(const std::string& path, const std::string& content,
                       CliIo& io) {
    std::ofstream out(path, std::ios::trunc);
    if (!out.is_open()) usage_error("cannot write backup file " + path);
    out << content;
    out.close();
    ::chmod(path.c_str(), 0600);
    io.err << "backup share written to " << path << "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) usage_error("cannot read backup file " + path);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

}  // namespace

CliEnv env_from_process() {
    CliEnv env;
    for (const char* key : {"PQW_USERNAME", "PQW_PASSWORD1", "PQW_PASSWORD2",
                            "PQW_SERVER", "HOME"}) {
        if (const char* v = std::getenv(key)) env.vars[key] = v;
    }
    return env;
}

std::string backup_encode(const ShareVec& share, int record_version) {
    json j;
    j["kem"] = "kyber512-v1";
    j["record_version"] = record_version;
    j["share"] = share;
    j["version"] = 1;
    j["x"] = 3;
    return j.dump() + "\n";
}

BackupFile backup_decode(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        usage_error("backup: not a json object");
    for (const auto& item : j.items()) {
        if (item.key() != "kem" && item.key() != "record_version" &&
            item.key() != "share" && item.key() != "version" &&
            item.key() != "x")
            usage_error("backup." + item.key() + ": unknown field");
    }
    for (const char* name : {"kem", "record_version", "share", "version", "x"}) {
        if (!j.contains(name))
            usage_error("backup." + std::string(name) + ": missing field");
    }

    BackupFile b;
    if (!j["version"].is_number_integer() || j["version"].get<int64_t>() != 1)
        usage_error("backup.version: expected 1");
    if (!j["x"].is_number_integer() || j["x"].get<int64_t>() != 3)
        usage_error("backup.x: expected 3");
    if (!j["kem"].is_string() || j["kem"].get<std::string>() != "kyber512-v1")
        usage_error("backup.kem: expected \"kyber512-v1\"");
    b.kem = "kyber512-v1";

    const json& s = j["share"];
    if (!s.is_array() || s.size() != size_t(kLatticeM))
        usage_error("backup.share: expected 16 coefficients");
    for (size_t i = 0; i < size_t(kLatticeM); ++i) {
        if (!s[i].is_number_integer())
            usage_error("backup.share: expected integer coefficients");
        int64_t x = s[i].get<int64_t>();
        if (x < 0 || x >= int64_t(kShareQ))
            usage_error("backup.share: coefficient out of range");
        b.share[i] = uint16_t(x);
    }

    if (!j["record_version"].is_number_integer())
        usage_error("backup.record_version: expected an integer");
    int64_t rv = j["record_version"].get<int64_t>();
    if (rv < 1 || rv > INT32_MAX)
        usage_error("backup.record_version: out of range");
    b.record_version = int(rv);
    return b;
}

int run_command(const std::vector<std::string>& args, const CliEnv& env,
                CliIo& io) {
    CLI::App app{"credential-derived post-quantum wallet"};
    app.fallthrough();

    std::string server_flag;
    std::string store_dir;
    if (const char* home = env.get("HOME"))
        store_dir = (fs::path(home) / ".pqw").string();
    else
        store_dir = ".pqw";
    int cost = kDefaultBcryptCost;

    app.add_option("--server", server_flag, "server address host:port");
    app.add_option("--store", store_dir, "client state directory");
    app.add_option("--cost", cost, "bcrypt cost between 4 and 31")
        ->check(CLI::Range(4, 31));

    auto* reg =
        app.add_subcommand("register", "create the account and derive the wallet");
    auto* unlock =
        app.add_subcommand("unlock", "re-derive the wallet from credentials");
    auto* rekey =
        app.add_subcommand("rekey", "rotate the server pad and re-derive");
    auto* backup = app.add_subcommand("backup", "backup share operations");
    auto* exportc =
        backup->add_subcommand("export", "write the backup share to a file");
    std::string out_path;
    exportc->add_option("--out", out_path, "output file")->required();
    auto* recover = app.add_subcommand(
        "recover", "rebuild the wallet offline from a backup share");
    std::string backup_path;
    recover->add_option("--backup", backup_path, "backup share file")->required();
    auto* pubkey =
        app.add_subcommand("pubkey", "print the cached public key fingerprint");
    for (auto* sc : {reg, unlock, rekey, backup, recover, pubkey})
        sc->fallthrough();
    exportc->fallthrough();
    app.require_subcommand(1);
    backup->require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("pqw");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            io.out << app.help();
            return 0;
        }
        io.err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        auto server_addr = [&] {
            std::string url = server_flag;
            if (url.empty())
                if (const char* s = env.get("PQW_SERVER")) url = s;
            if (url.empty()) url = "127.0.0.1:8470";
            return parse_server(url);
        };

        if (pubkey->parsed()) {
            std::string username;
            if (const char* u = env.get("PQW_USERNAME")) username = u;
            else username = prompt_plain(io, "username");
            CachedWallet c = read_cache(store_dir, uid_of(username));
            io.out << fingerprint(c.pk) << "\n";
            return 0;
        }

        if (recover->parsed()) {
            BackupFile b = backup_decode(read_text_file(backup_path));
            Credentials creds = gather_credentials(env, io, cost);
            WalletHandle h = offline_recover(creds, b.share, b.record_version);
            write_cache(store_dir, h, io);
            io.out << fingerprint(h.keypair.pk) << "\n";
            return 0;
        }

        ServerAddr addr = server_addr();
        HttpTransport t(addr.host, addr.port);
        SystemRng rng;
        Credentials creds = gather_credentials(env, io, cost);

        if (reg->parsed()) {
            WalletHandle h = register_flow(creds, t, rng);
            write_cache(store_dir, h, io);
            io.err << "registered record version " << h.record_version << "\n";
            io.out << fingerprint(h.keypair.pk) << "\n";
            return 0;
        }

        if (unlock->parsed()) {
            WalletHandle h = unlock_flow(creds, t, rng);
            write_cache(store_dir, h, io);
            io.out << fingerprint(h.keypair.pk) << "\n";
            return 0;
        }

        if (rekey->parsed()) {
            WalletHandle session = unlock_flow(creds, t, rng);
            WalletHandle h = rekey_flow(session, creds, t, rng);
            write_cache(store_dir, h, io);
            io.err << "record moved to version " << h.record_version
                   << "; the old backup share is now stale, export a new one\n";
            io.out << fingerprint(h.keypair.pk) << "\n";
            return 0;
        }

        if (backup->parsed() && exportc->parsed()) {
            WalletHandle h = unlock_flow(creds, t, rng);
            write_backup_file(out_path,
                              backup_encode(h.backup, h.record_version), io);
            io.out << fingerprint(h.keypair.pk) << "\n";
            return 0;
        }

        usage_error("no subcommand selected");
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace pqw
