#include "service.hpp"

#include <sstream>

#include "aucpower/api/documents.hpp"
#include "aucpower/error.hpp"
#include "aucpower/ingest.hpp"
#include "aucpower/random.hpp"
#include "aucpower/version.hpp"
#include "httplib.h"

namespace aucpower::service {

namespace {

using api::json;

Reply json_reply(int status, const json& body) { return {status, api::dump_document(body)}; }

Reply error_reply(int status, const std::string& kind, const std::string& message) {
    return json_reply(status, {{"error", kind}, {"message", message}});
}

Reply validation_reply(const api::ValidationError& e) {
    json fields = json::array();
    for (const auto& f : e.errors()) fields.push_back({{"field", f.field}, {"message", f.message}});
    return json_reply(422, {{"error", "validation"}, {"message", e.what()}, {"fields", fields}});
}

Reply domain_reply(const Error& e) {
    json body = {{"error", "computation"}, {"code", to_string(e.code())}, {"message", e.what()}};
    if (e.row) body["row"] = *e.row;
    if (e.column) body["column"] = *e.column;
    if (e.n) body["n"] = *e.n;
    return json_reply(422, body);
}

// Runs `f` and converts every failure into the matching HTTP reply.
template <typename F>
Reply guarded(F&& f) {
    try {
        return f();
    } catch (const json::parse_error& e) {
        return error_reply(400, "malformed_json", e.what());
    } catch (const api::ValidationError& e) {
        return validation_reply(e);
    } catch (const Error& e) {
        return domain_reply(e);
    } catch (const std::exception& e) {
        return error_reply(500, "internal", e.what());
    }
}

json parse_body(std::string_view body) { return json::parse(body.begin(), body.end()); }

Reply document_reply(const json& doc, std::string_view format) {
    if (format == "csv") return {200, api::curve_csv(doc), "text/csv"};
    return json_reply(200, doc);
}

bool wants_async(const json& body) {
    return body.is_object() && body.contains("async") && body.at("async").is_boolean() &&
           body.at("async").get<bool>();
}

std::string format_param(const httplib::Request& req) {
    return req.has_param("format") ? req.get_param_value("format") : "json";
}

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)) {}

Reply Service::health() const {
    return json_reply(200, {{"status", "ok"}, {"name", "aucpower"}, {"version", kVersion}});
}

Reply Service::constraints() const { return json_reply(200, api::constraints_document(config_.limits)); }

Reply Service::single(std::string_view body) const {
    if (body.size() > config_.max_body_bytes) return error_reply(413, "too_large", "request body too large");
    return guarded([&] {
        return json_reply(200, api::single_document(api::parse_single(parse_body(body), config_.limits)));
    });
}

template <typename Compute>
Reply Service::run_power(const json& body, std::string_view format, Compute&& compute) {
    if (format != "json" && format != "csv") {
        return error_reply(422, "validation", "format must be json or csv");
    }
    if (!wants_async(body)) return guarded([&] { return document_reply(compute(), format); });

    std::string token;
    {
        std::lock_guard lock(jobs_mutex_);
        std::ostringstream os;
        os << "job-" << ++next_job_ << "-" << std::hex << (random_seed() & 0xFFFFFFFFULL);
        token = os.str();
        jobs_[token] = std::async(std::launch::async, [compute, fmt = std::string(format)] {
                           return guarded([&] { return document_reply(compute(), fmt); });
                       }).share();
    }
    return json_reply(202, {{"job", token}, {"status_url", "/api/v1/jobs/" + token}});
}

Reply Service::pilot(std::string_view body, std::string_view format) {
    if (body.size() > config_.max_body_bytes) return error_reply(413, "too_large", "request body too large");
    json parsed;
    try {
        parsed = parse_body(body);
    } catch (const json::parse_error& e) {
        return error_reply(400, "malformed_json", e.what());
    }
    // Parse eagerly so validation errors are reported synchronously.
    api::PilotInputs inputs;
    try {
        inputs = api::parse_pilot(parsed, config_.limits, config_.threads);
    } catch (...) {
        return guarded([] () -> Reply { throw; });
    }
    return run_power(parsed, format, [inputs = std::move(inputs)] { return api::pilot_document(inputs); });
}

Reply Service::pilot_upload(std::string_view csv, std::string_view options, std::string_view format) {
    if (csv.size() > config_.max_body_bytes) return error_reply(413, "too_large", "uploaded file too large");
    json opts = json::object();
    api::PilotInputs inputs;
    try {
        if (!options.empty()) opts = parse_body(options);
        if (!opts.is_object()) {
            throw api::ValidationError(std::vector<api::FieldError>{{"options", "must be a JSON object"}});
        }
        PilotFileSpec spec;
        std::vector<api::FieldError> bad;
        auto take_string = [&](const char* key, std::string& dst) {
            if (!opts.contains(key)) return;
            if (opts.at(key).is_string() && !opts.at(key).get<std::string>().empty()) {
                dst = opts.at(key).get<std::string>();
            } else {
                bad.push_back({key, "must be a non-empty string"});
            }
            opts.erase(key);
        };
        take_string("label_column", spec.label_column);
        take_string("pred_a_column", spec.pred_a_column);
        take_string("pred_b_column", spec.pred_b_column);
        std::string delimiter = ",";
        take_string("delimiter", delimiter);
        if (delimiter.size() != 1) bad.push_back({"delimiter", "must be a single character"});
        if (!bad.empty()) throw api::ValidationError(bad);
        spec.delimiter = delimiter.front();

        std::istringstream in{std::string(csv)};
        ParsedPilot parsed = parse_pilot(in, spec);
        inputs = api::parse_pilot(opts, config_.limits, config_.threads, std::move(parsed.dataset));
    } catch (...) {
        return guarded([] () -> Reply { throw; });
    }
    return run_power(opts, format, [inputs = std::move(inputs)] { return api::pilot_document(inputs); });
}

Reply Service::binormal(std::string_view body, std::string_view format) {
    if (body.size() > config_.max_body_bytes) return error_reply(413, "too_large", "request body too large");
    json parsed;
    api::BinormalInputs inputs;
    try {
        parsed = parse_body(body);
        inputs = api::parse_binormal(parsed, config_.limits, config_.threads);
    } catch (...) {
        return guarded([] () -> Reply { throw; });
    }
    return run_power(parsed, format, [inputs] { return api::binormal_document(inputs); });
}

Reply Service::preview(std::string_view body) const {
    if (body.size() > config_.max_body_bytes) return error_reply(413, "too_large", "request body too large");
    return guarded([&] {
        return json_reply(200, api::preview_document(api::parse_preview(parse_body(body), config_.limits)));
    });
}

Reply Service::job(const std::string& token) {
    std::shared_future<Reply> fut;
    {
        std::lock_guard lock(jobs_mutex_);
        const auto it = jobs_.find(token);
        if (it == jobs_.end()) return error_reply(404, "not_found", "unknown job " + token);
        fut = it->second;
    }
    if (fut.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
        return json_reply(202, {{"job", token}, {"status", "running"}});
    }
    return fut.get();
}

void Service::mount(httplib::Server& server) {
    server.set_payload_max_length(config_.max_body_bytes);
    server.set_default_headers({{"Access-Control-Allow-Origin", config_.cors_origin},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

    auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };

    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, health());
    });
    server.Get("/api/v1/constraints", [this, send](const httplib::Request&, httplib::Response& res) {
        send(res, constraints());
    });
    server.Post("/api/v1/sample-size/single",
                [this, send](const httplib::Request& req, httplib::Response& res) {
                    send(res, single(req.body));
                });
    server.Post("/api/v1/power/pilot", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, pilot(req.body, format_param(req)));
    });
    server.Post("/api/v1/power/pilot/upload",
                [this, send](const httplib::Request& req, httplib::Response& res) {
                    if (!req.is_multipart_form_data() || !req.has_file("file")) {
                        send(res, error_reply(422, "validation",
                                              "expected multipart/form-data with a 'file' part"));
                        return;
                    }
                    const std::string options =
                        req.has_file("options") ? req.get_file_value("options").content : "";
                    send(res, pilot_upload(req.get_file_value("file").content, options,
                                           format_param(req)));
                });
    server.Post("/api/v1/power/binormal", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, binormal(req.body, format_param(req)));
    });
    server.Post("/api/v1/binormal/preview", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, preview(req.body));
    });
    server.Get("/api/v1/jobs/:token", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, job(req.path_params.at("token")));
    });
}

}  // namespace aucpower::service
