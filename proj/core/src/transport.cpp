#include "pqw/transport.h"

#include <httplib.h>

namespace pqw {

HttpTransport::HttpTransport(std::string host, int port)
    : host_(std::move(host)), port_(port) {}

std::string HttpTransport::label() const {
    return host_ + ":" + std::to_string(port_);
}

HttpResponse HttpTransport::post(const std::string& path, const std::string& body) {
    httplib::Client cli(host_, port_);
    cli.set_connection_timeout(5, 0);
    cli.set_read_timeout(30, 0);
    auto res = cli.Post(path, body, "application/json");
    if (!res) {
        throw Error(ErrorCode::TransportError,
                    "POST " + path + " to " + label() + " failed: " + httplib::to_string(res.error()));
    }
    return {res->status, res->body};
}

HttpResponse HttpTransport::get(const std::string& path) {
    httplib::Client cli(host_, port_);
    cli.set_connection_timeout(5, 0);
    cli.set_read_timeout(30, 0);
    auto res = cli.Get(path);
    if (!res) {
        throw Error(ErrorCode::TransportError,
                    "GET " + path + " to " + label() + " failed: " + httplib::to_string(res.error()));
    }
    return {res->status, res->body};
}

}  // namespace pqw
