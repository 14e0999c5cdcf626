#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pqw/lattice.h"
#include "pqw/protocol.h"
#include "pqw/rng.h"
#include "pqw/transport.h"

namespace pqw {

// Wall clock in unix seconds. Injectable so tests can age nonces and
// sessions without sleeping.
using ClockFn = std::function<int64_t()>;

int64_t system_clock_seconds();

// Per-user state the server persists. The pad source (delta2, omega2) is
// everything needed to recompute the same response pad across restarts;
// k_auth stays empty until the owner enrolls for the current version.
struct ServerRecord {
    Digest32 uid{};
    int version = 1;
    SignedVec delta2{};
    Bits256 omega2{};
    std::optional<Digest32> k_auth;
    int64_t created_at = 0;

    bool operator==(const ServerRecord&) const = default;
};

// One store line: canonical JSON followed by " crc32:<8 hex>" over the JSON
// text. decode_record throws Error(StoreCorrupt) on any mismatch.
std::string encode_record(const ServerRecord& rec);
ServerRecord decode_record(const std::string& line);

// Append-free JSON-lines store. The whole file is rewritten through a
// temporary plus atomic rename on every mutation; loading never writes, so
// an untouched store survives a restart byte for byte.
class RecordStore {
  public:
    explicit RecordStore(std::string path);

    std::optional<ServerRecord> get(const Digest32& uid) const;
    // Create-if-absent; returns false when the uid already has a record.
    bool create(const ServerRecord& rec);
    void update(const ServerRecord& rec);
    size_t size() const;
    const std::string& path() const { return path_; }

  private:
    void persist() const;

    mutable std::mutex mu_;
    std::string path_;
    std::map<std::string, ServerRecord> records_;
};

struct ServerConfig {
    // Token bucket for POST /v1/derive: burst size and sustained
    // tokens-per-minute share this value.
    int rate_per_min = 10;
    int64_t nonce_ttl = 60;
    int64_t session_ttl = 600;
};

// Nonce and session bookkeeping. Not internally synchronized; the router
// serializes access.
class ChallengeTable {
  public:
    ChallengeTable(ClockFn clock, int64_t nonce_ttl, int64_t session_ttl);

    // One live nonce per uid; issuing again replaces the previous one.
    Digest32 issue(const Digest32& uid, Rng& rng);
    // Single use: removes the stored nonce iff it matches and is fresh.
    bool consume(const Digest32& uid, const Digest32& nonce);

    // Sessions are bound to the record version they were minted for.
    Digest32 mint_session(const Digest32& uid, int version, Rng& rng);
    std::optional<std::pair<Digest32, int>> session_info(const Digest32& session) const;

  private:
    struct Nonce {
        Digest32 value{};
        int64_t expires = 0;
    };
    struct Session {
        Digest32 uid{};
        int version = 0;
        int64_t expires = 0;
    };

    ClockFn clock_;
    int64_t nonce_ttl_;
    int64_t session_ttl_;
    std::map<std::string, Nonce> nonces_;
    std::map<std::string, Session> sessions_;
};

// Per-uid token bucket. Starts full; refills continuously at per_min
// tokens per minute up to a burst of per_min.
class RateLimiter {
  public:
    RateLimiter(int per_min, ClockFn clock);
    bool allow(const Digest32& uid);

  private:
    struct Bucket {
        double tokens = 0;
        int64_t last = 0;
    };

    int per_min_;
    ClockFn clock_;
    std::map<std::string, Bucket> buckets_;
};

// Endpoint logic behind the HTTP skin. handle() decodes, dispatches and
// encodes; the typed handlers below it are public so tests can drive them
// directly. A single mutex serializes every request.
class Router {
  public:
    Router(RecordStore& store, Rng& rng, ServerConfig cfg = {},
           ClockFn clock = system_clock_seconds);

    HttpResponse handle(const std::string& method, const std::string& path,
                        const std::string& query, const std::string& body);

    DeriveResponse derive(const DeriveRequest& req);
    EnrollResponse enroll(const EnrollRequest& req);
    ChallengeResponse challenge(const Digest32& uid);
    VerifyResponse verify(const VerifyRequest& req);
    RekeyResponse rekey(const RekeyRequest& req);

  private:
    struct EnrollToken {
        Digest32 token{};
        int version = 0;
    };

    Digest32 fresh_token(const Digest32& uid, int version);

    std::mutex mu_;
    RecordStore& store_;
    Rng& rng_;
    ServerConfig cfg_;
    ClockFn clock_;
    LatticeParams params_;
    ChallengeTable challenges_;
    RateLimiter limiter_;
    std::map<std::string, EnrollToken> tokens_;
};

// Loopback transport that calls a router directly. Lets the client flows
// run against a server instance without sockets.
class InProcessTransport : public Transport {
  public:
    explicit InProcessTransport(Router& router) : router_(router) {}
    HttpResponse post(const std::string& path, const std::string& body) override;
    HttpResponse get(const std::string& path) override;
    std::string label() const override { return "inproc"; }

  private:
    Router& router_;
};

// Blocking HTTP server wrapper around a router.
class HttpFrontend {
  public:
    explicit HttpFrontend(Router& router);
    ~HttpFrontend();

    // Binds the listening socket; port 0 picks a free port. Returns false
    // when the address is unavailable.
    bool bind(const std::string& host, int port);
    int port() const;
    // Serves until stop() is called from another thread.
    bool serve();
    void stop();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace pqw
