#pragma once

#include <memory>
#include <string>

#include "pqw/error.h"

namespace pqw {

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Request channel used by the client flows. Implementations throw
// Error(TransportError) when the peer is unreachable; HTTP-level errors
// come back as status/body pairs.
class Transport {
  public:
    virtual ~Transport() = default;
    virtual HttpResponse post(const std::string& path, const std::string& body) = 0;
    virtual HttpResponse get(const std::string& path) = 0;
    virtual std::string label() const { return ""; }
};

class HttpTransport : public Transport {
  public:
    HttpTransport(std::string host, int port);
    HttpResponse post(const std::string& path, const std::string& body) override;
    HttpResponse get(const std::string& path) override;
    std::string label() const override;

  private:
    std::string host_;
    int port_;
};

// Refuses every request and counts the attempts; lets tests assert that a
// flow performs no network I/O at all.
class CountingStubTransport : public Transport {
  public:
    HttpResponse post(const std::string&, const std::string&) override {
        ++calls_;
        throw Error(ErrorCode::TransportError, "no network available");
    }
    HttpResponse get(const std::string&) override {
        ++calls_;
        throw Error(ErrorCode::TransportError, "no network available");
    }
    std::string label() const override { return "stub"; }
    int calls() const { return calls_; }

  private:
    int calls_ = 0;
};

}  // namespace pqw
