#include "pqw/server.h"

#include <algorithm>
#include <chrono>

#include <httplib.h>

namespace pqw {

namespace {

std::string key_of(const Digest32& uid) {
    return to_hex(uid.data(), uid.size());
}

int http_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::BadRequest:
        case ErrorCode::ParameterError:
            return 400;
        case ErrorCode::AuthFailed:
            return 401;
        case ErrorCode::UnknownUser:
            return 404;
        case ErrorCode::UserExists:
        case ErrorCode::VersionConflict:
            return 409;
        case ErrorCode::RateLimited:
            return 429;
        default:
            return 500;
    }
}

Digest32 uid_query_param(const std::string& query) {
    size_t start = 0;
    while (start <= query.size()) {
        size_t end = query.find('&', start);
        if (end == std::string::npos) end = query.size();
        std::string pair = query.substr(start, end - start);
        size_t eq = pair.find('=');
        if (eq != std::string::npos && pair.substr(0, eq) == "uid")
            return parse_hex32(pair.substr(eq + 1), "challenge.uid");
        start = end + 1;
    }
    throw Error(ErrorCode::BadRequest, "challenge.uid: missing query parameter");
}

}  // namespace

int64_t system_clock_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

ChallengeTable::ChallengeTable(ClockFn clock, int64_t nonce_ttl, int64_t session_ttl)
    : clock_(std::move(clock)), nonce_ttl_(nonce_ttl), session_ttl_(session_ttl) {}

Digest32 ChallengeTable::issue(const Digest32& uid, Rng& rng) {
    Digest32 nonce;
    rng.fill(nonce.data(), nonce.size());
    nonces_[key_of(uid)] = Nonce{nonce, clock_() + nonce_ttl_};
    return nonce;
}

bool ChallengeTable::consume(const Digest32& uid, const Digest32& nonce) {
    auto it = nonces_.find(key_of(uid));
    if (it == nonces_.end()) return false;
    if (clock_() >= it->second.expires) {
        nonces_.erase(it);
        return false;
    }
    if (!ct_equal(it->second.value.data(), it->second.value.size(), nonce.data(),
                  nonce.size()))
        return false;
    nonces_.erase(it);
    return true;
}

Digest32 ChallengeTable::mint_session(const Digest32& uid, int version, Rng& rng) {
    Digest32 session;
    rng.fill(session.data(), session.size());
    sessions_[to_hex(session.data(), session.size())] =
        Session{uid, version, clock_() + session_ttl_};
    return session;
}

std::optional<std::pair<Digest32, int>> ChallengeTable::session_info(
    const Digest32& session) const {
    auto it = sessions_.find(to_hex(session.data(), session.size()));
    if (it == sessions_.end()) return std::nullopt;
    if (clock_() >= it->second.expires) return std::nullopt;
    return std::make_pair(it->second.uid, it->second.version);
}

RateLimiter::RateLimiter(int per_min, ClockFn clock)
    : per_min_(per_min), clock_(std::move(clock)) {}

bool RateLimiter::allow(const Digest32& uid) {
    int64_t now = clock_();
    auto [it, fresh] = buckets_.try_emplace(key_of(uid), Bucket{double(per_min_), now});
    Bucket& b = it->second;
    if (!fresh) {
        b.tokens = std::min(double(per_min_),
                            b.tokens + double(now - b.last) * per_min_ / 60.0);
        b.last = now;
    }
    if (b.tokens >= 1.0) {
        b.tokens -= 1.0;
        return true;
    }
    return false;
}

Router::Router(RecordStore& store, Rng& rng, ServerConfig cfg, ClockFn clock)
    : store_(store),
      rng_(rng),
      cfg_(cfg),
      clock_(std::move(clock)),
      params_(default_params()),
      challenges_(clock_, cfg_.nonce_ttl, cfg_.session_ttl),
      limiter_(cfg_.rate_per_min, clock_) {}

Digest32 Router::fresh_token(const Digest32& uid, int version) {
    Digest32 token;
    rng_.fill(token.data(), token.size());
    tokens_[key_of(uid)] = EnrollToken{token, version};
    return token;
}

DeriveResponse Router::derive(const DeriveRequest& req) {
    std::lock_guard<std::mutex> lk(mu_);
    if (cfg_.rate_per_min > 0 && !limiter_.allow(req.uid))
        throw Error(ErrorCode::RateLimited, "derive budget exhausted for this uid");

    DeriveResponse resp;
    auto rec = store_.get(req.uid);
    if (!rec) {
        ServerRecord first;
        first.uid = req.uid;
        first.version = 1;
        auto src = sample_pad_source(rng_, params_);
        first.delta2 = src.delta2;
        first.omega2 = src.omega2;
        first.created_at = clock_();
        if (store_.create(first)) {
            resp.created = true;
            resp.enroll_token = fresh_token(req.uid, first.version);
            rec = first;
        } else {
            rec = store_.get(req.uid);
        }
    }
    resp.version = rec->version;
    BlindedPoint tau1{req.tau1, BlindStage::ClientBlinded};
    ServerPadSource src{rec->delta2, rec->omega2};
    resp.tau2 = pad_point(tau1, src, params_).tau;
    return resp;
}

EnrollResponse Router::enroll(const EnrollRequest& req) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = store_.get(req.uid);
    if (!rec) throw Error(ErrorCode::UnknownUser, "no record for this uid");

    if (req.enroll_token) {
        auto it = tokens_.find(key_of(req.uid));
        if (it == tokens_.end() ||
            !ct_equal(it->second.token.data(), it->second.token.size(),
                      req.enroll_token->data(), req.enroll_token->size()) ||
            it->second.version != rec->version)
            throw Error(ErrorCode::AuthFailed, "invalid enroll token");
    } else {
        auto info = challenges_.session_info(*req.session);
        if (!info || info->first != rec->uid)
            throw Error(ErrorCode::AuthFailed, "missing or expired session");
        if (info->second != rec->version)
            throw Error(ErrorCode::VersionConflict,
                        "session was issued for an older record version");
    }

    if (rec->k_auth)
        throw Error(ErrorCode::BadRequest, "auth key already set for this version");
    rec->k_auth = req.k_auth;
    store_.update(*rec);
    if (req.enroll_token) tokens_.erase(key_of(req.uid));
    return EnrollResponse{true};
}

ChallengeResponse Router::challenge(const Digest32& uid) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = store_.get(uid);
    if (!rec || !rec->k_auth)
        throw Error(ErrorCode::UnknownUser, "no enrolled record for this uid");
    return ChallengeResponse{challenges_.issue(uid, rng_)};
}

VerifyResponse Router::verify(const VerifyRequest& req) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = store_.get(req.uid);
    if (!rec || !rec->k_auth)
        throw Error(ErrorCode::UnknownUser, "no enrolled record for this uid");
    if (!challenges_.consume(req.uid, req.nonce))
        throw Error(ErrorCode::AuthFailed, "nonce expired or already used");
    if (!check_proof(*rec->k_auth, req.nonce, req.proof))
        throw Error(ErrorCode::AuthFailed, "proof mismatch");
    return VerifyResponse{true,
                          challenges_.mint_session(req.uid, rec->version, rng_)};
}

RekeyResponse Router::rekey(const RekeyRequest& req) {
    std::lock_guard<std::mutex> lk(mu_);
    auto rec = store_.get(req.uid);
    if (!rec) throw Error(ErrorCode::UnknownUser, "no record for this uid");

    auto info = challenges_.session_info(req.session);
    if (!info || info->first != rec->uid)
        throw Error(ErrorCode::AuthFailed, "missing or expired session");
    if (info->second != rec->version)
        throw Error(ErrorCode::VersionConflict,
                    "record version changed since the session was issued");

    auto src = sample_pad_source(rng_, params_);
    rec->delta2 = src.delta2;
    rec->omega2 = src.omega2;
    rec->version += 1;
    rec->k_auth.reset();
    store_.update(*rec);

    RekeyResponse resp;
    BlindedPoint tau1{req.tau1, BlindStage::ClientBlinded};
    resp.tau2 = pad_point(tau1, src, params_).tau;
    resp.version = rec->version;
    resp.enroll_token = fresh_token(req.uid, rec->version);
    return resp;
}

HttpResponse Router::handle(const std::string& method, const std::string& path,
                            const std::string& query, const std::string& body) {
    try {
        if (method == "POST" && path == "/v1/derive")
            return {200, encode(derive(decode_derive_request(body)))};
        if (method == "POST" && path == "/v1/enroll")
            return {200, encode(enroll(decode_enroll_request(body)))};
        if (method == "GET" && path == "/v1/challenge")
            return {200, encode(challenge(uid_query_param(query)))};
        if (method == "POST" && path == "/v1/verify")
            return {200, encode(verify(decode_verify_request(body)))};
        if (method == "POST" && path == "/v1/rekey")
            return {200, encode(rekey(decode_rekey_request(body)))};
        throw Error(ErrorCode::BadRequest, "unknown endpoint " + method + " " + path);
    } catch (const Error& e) {
        return {http_status(e.code()), encode_error(e.code(), e.what())};
    } catch (const std::exception& e) {
        return {500, encode_error(ErrorCode::TransportError,
                                  std::string("internal: ") + e.what())};
    }
}

HttpResponse InProcessTransport::post(const std::string& path,
                                      const std::string& body) {
    return router_.handle("POST", path, "", body);
}

HttpResponse InProcessTransport::get(const std::string& path) {
    auto q = path.find('?');
    if (q == std::string::npos) return router_.handle("GET", path, "", "");
    return router_.handle("GET", path.substr(0, q), path.substr(q + 1), "");
}

struct HttpFrontend::Impl {
    Router& router;
    httplib::Server svr;
    int port = 0;

    explicit Impl(Router& r) : router(r) {}
};

HttpFrontend::HttpFrontend(Router& router) : impl_(std::make_unique<Impl>(router)) {
    auto relay = [this](const httplib::Request& req, httplib::Response& res) {
        std::string query;
        for (const auto& [k, v] : req.params) {
            if (!query.empty()) query += '&';
            query += k + "=" + v;
        }
        HttpResponse out = impl_->router.handle(req.method, req.path, query, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    impl_->svr.Post("/v1/derive", relay);
    impl_->svr.Post("/v1/enroll", relay);
    impl_->svr.Get("/v1/challenge", relay);
    impl_->svr.Post("/v1/verify", relay);
    impl_->svr.Post("/v1/rekey", relay);
}

HttpFrontend::~HttpFrontend() = default;

bool HttpFrontend::bind(const std::string& host, int port) {
    if (port == 0) {
        int got = impl_->svr.bind_to_any_port(host);
        if (got <= 0) return false;
        impl_->port = got;
        return true;
    }
    if (!impl_->svr.bind_to_port(host, port)) return false;
    impl_->port = port;
    return true;
}

int HttpFrontend::port() const { return impl_->port; }

bool HttpFrontend::serve() { return impl_->svr.listen_after_bind(); }

void HttpFrontend::stop() { impl_->svr.stop(); }

}  // namespace pqw
