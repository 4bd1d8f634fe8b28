#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "service.hpp"

namespace {

template <typename T>
void env_default(const char* name, T& value) {
    if (const char* v = std::getenv(name)) {
        try {
            value = static_cast<T>(std::stoull(v));
        } catch (const std::exception&) {
            std::cerr << "ignoring invalid " << name << "=" << v << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    aucpower::service::ServiceConfig cfg;
    std::string host = "127.0.0.1";
    int port = 8080;
    env_default("AUCPOWER_PORT", port);
    env_default("AUCPOWER_THREADS", cfg.threads);
    env_default("AUCPOWER_MAX_ITERATIONS", cfg.limits.max_iterations);
    env_default("AUCPOWER_MAX_BODY_BYTES", cfg.max_body_bytes);

    CLI::App app{"HTTP JSON service for AUROC sample size and power calculations"};
    app.add_option("--host", host, "Bind address");
    app.add_option("--port", port, "Listen port ($AUCPOWER_PORT)");
    app.add_option("--threads", cfg.threads, "Monte Carlo threads per request, 0 = all ($AUCPOWER_THREADS)");
    app.add_option("--max-iterations", cfg.limits.max_iterations, "Cap on M ($AUCPOWER_MAX_ITERATIONS)");
    app.add_option("--max-grid-points", cfg.limits.max_grid_points, "Cap on n_grid length");
    app.add_option("--max-body-bytes", cfg.max_body_bytes, "Request/upload size cap ($AUCPOWER_MAX_BODY_BYTES)");
    app.add_option("--cors-origin", cfg.cors_origin, "Access-Control-Allow-Origin value");
    CLI11_PARSE(app, argc, argv);

    aucpower::service::Service service(cfg);
    httplib::Server server;
    service.mount(server);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << "\n";
        return 1;
    }
    return 0;
}
