#pragma once

#include <cstddef>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include "aucpower/api/requests.hpp"

namespace httplib {
class Server;
}

namespace aucpower::service {

struct ServiceConfig {
    api::Limits limits;
    unsigned threads = 0;  // MC workers per request; 0 = all cores
    std::size_t max_body_bytes = 10 * 1024 * 1024;
    std::string cors_origin = "*";
};

struct Reply {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

// Request handlers behind the /api/v1 routes. Handlers take raw bodies so they
// can be exercised without a socket; mount() wires them into an httplib
// server. Apart from the async job table, handling is stateless.
class Service {
public:
    explicit Service(ServiceConfig config = {});

    Reply health() const;
    Reply constraints() const;
    Reply single(std::string_view body) const;
    // format: "json" (default) or "csv" for the n,power,mc_se table.
    Reply pilot(std::string_view body, std::string_view format = "json");
    // `csv` is the uploaded file; `options` a JSON object with the same fields
    // as the inline request minus "data", plus optional label_column,
    // pred_a_column, pred_b_column and delimiter.
    Reply pilot_upload(std::string_view csv, std::string_view options, std::string_view format = "json");
    Reply binormal(std::string_view body, std::string_view format = "json");
    Reply preview(std::string_view body) const;
    Reply job(const std::string& token);

    void mount(httplib::Server& server);

    const ServiceConfig& config() const { return config_; }

private:
    template <typename Compute>
    Reply run_power(const api::json& body, std::string_view format, Compute&& compute);

    ServiceConfig config_;
    std::mutex jobs_mutex_;
    std::map<std::string, std::shared_future<Reply>> jobs_;
    std::size_t next_job_ = 0;
};

}  // namespace aucpower::service
