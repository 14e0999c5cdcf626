#include <csignal>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pqw/server.h"

namespace {

pqw::HttpFrontend* g_frontend = nullptr;

void handle_signal(int) {
    if (g_frontend) g_frontend->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wallet key-derivation server"};

    std::string listen = "127.0.0.1:8470";
    std::string store_path = "pqw-store.jsonl";
    int rate = 10;
    app.add_option("--listen", listen, "listen address host:port");
    app.add_option("--store", store_path, "record store file");
    app.add_option("--rate-limit", rate,
                   "derive requests allowed per uid per minute; 0 disables")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (const char* env_store = std::getenv("PQW_STORE")) store_path = env_store;

    size_t colon = listen.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= listen.size()) {
        std::cerr << "error: --listen must be host:port\n";
        return 2;
    }
    std::string host = listen.substr(0, colon);
    int port = std::atoi(listen.c_str() + colon + 1);
    if (port <= 0 || port > 65535) {
        std::cerr << "error: listen port out of range\n";
        return 2;
    }

    try {
        pqw::RecordStore store(store_path);
        pqw::SystemRng rng;
        pqw::Router router(store, rng, pqw::ServerConfig{rate, 60, 600});
        pqw::HttpFrontend frontend(router);
        if (!frontend.bind(host, port)) {
            std::cerr << "error: cannot bind " << host << ":" << port << "\n";
            return 1;
        }
        g_frontend = &frontend;
        std::signal(SIGINT, handle_signal);
        std::signal(SIGTERM, handle_signal);
        std::cerr << "listening on " << host << ":" << frontend.port()
                  << ", store " << store_path << " (" << store.size()
                  << " records)\n";
        frontend.serve();
        return 0;
    } catch (const pqw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == pqw::ErrorCode::StoreCorrupt ? 4 : 1;
    }
}
