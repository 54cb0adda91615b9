#include "vmlab/http_server.hpp"

#include "vmlab/pages.hpp"

#include <httplib.h>

#include <charconv>
#include <cstdio>

namespace vmlab {

namespace {

constexpr const char* kJson = "application/json; charset=utf-8";
constexpr const char* kHtml = "text/html; charset=utf-8";

void send_json(httplib::Response& res, const json& doc, int status = 200) {
    res.status = status;
    res.set_content(doc.dump(), kJson);
}

void send_error(httplib::Response& res, const ApiError& error) {
    send_json(res, {{"code", error.code}, {"message", error.message}}, error.http_status);
}

// Runs a handler and turns every failure into a documented ApiError.
template <class Handler>
void guarded(httplib::Response& res, Handler&& handler) {
    try {
        handler();
    } catch (const LabError& e) {
        send_error(res, to_api_error(e));
    } catch (const json::exception& e) {
        send_error(res, {"malformed_input", std::string("invalid JSON body: ") + e.what(), 422});
    } catch (const std::exception& e) {
        send_error(res, {"internal", e.what(), 500});
    }
}

json parse_body(const httplib::Request& req) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object())
        throw LabError(ErrorCode::MalformedInput, "request body must be a JSON object");
    return body;
}

std::string string_field(const json& body, const char* name) {
    auto it = body.find(name);
    if (it == body.end() || !it->is_string())
        throw LabError(ErrorCode::MalformedInput, std::string("missing string field '") + name + "'");
    return it->get<std::string>();
}

std::int64_t parse_ticks(const httplib::Request& req) {
    if (!req.has_param("ticks")) throw LabError(ErrorCode::MalformedInput, "missing ticks parameter");
    const std::string text = req.get_param_value("ticks");
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw LabError(ErrorCode::MalformedInput, "ticks must be an integer");
    return value;
}

}  // namespace

std::string etag_for(std::string_view body) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : body) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "\"%016llx\"", static_cast<unsigned long long>(hash));
    return buf;
}

HttpServer::HttpServer(LabService& service, std::optional<std::filesystem::path> assets_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    if (assets_dir) server_->set_mount_point("/assets", assets_dir->string());
    install_routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0)
        throw LabError(ErrorCode::Internal, "cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
    if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

void HttpServer::install_routes() {
    httplib::Server& s = *server_;

    s.Post("/api/v1/sessions", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] { send_json(res, service_.create_session(), 201); });
    });

    s.Get("/api/v1/instruments", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] { send_json(res, service_.list_instruments()); });
    });

    s.Get(R"(/api/v1/instruments/([^/]+)/template)",
          [this](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] {
                  const std::string& body = service_.template_body(req.matches[1].str());
                  const std::string tag = etag_for(body);
                  res.set_header("ETag", tag);
                  res.set_header("Cache-Control", "public, max-age=3600");
                  if (req.get_header_value("If-None-Match") == tag) {
                      res.status = 304;
                      return;
                  }
                  res.set_content(body, kJson);
              });
          });

    s.Get(R"(/api/v1/instruments/([^/]+)/reading)",
          [this](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] {
                  // Validate the kind before the query so unknown kinds are 404.
                  service_.template_body(req.matches[1].str());
                  send_json(res, service_.get_reading(req.matches[1].str(), parse_ticks(req)));
              });
          });

    s.Post(R"(/api/v1/sessions/([^/]+)/exercises)",
           [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                   const json body = parse_body(req);
                   send_json(res, service_.issue_exercise(req.matches[1].str(), string_field(body, "kind")),
                             201);
               });
           });

    s.Get(R"(/api/v1/sessions/([^/]+)/exercises/([^/]+)/transform)",
          [this](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] {
                  send_json(res, service_.exercise_transform(req.matches[1].str(), req.matches[2].str()));
              });
          });

    s.Post(R"(/api/v1/sessions/([^/]+)/exercises/([^/]+)/answer)",
           [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                   const json body = parse_body(req);
                   send_json(res, service_.submit_answer(req.matches[1].str(), req.matches[2].str(),
                                                         string_field(body, "text")));
               });
           });

    s.Get(R"(/api/v1/sessions/([^/]+)/stats)",
          [this](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] { send_json(res, service_.get_stats(req.matches[1].str())); });
          });

    s.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(home_page(SiteFlavor::Served), kHtml);
    });
    s.Get("/safety", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(safety_page(SiteFlavor::Served), kHtml);
    });
    s.Get(R"(/lab/([^/]+))", [](const httplib::Request& req, httplib::Response& res) {
        const auto kind = kind_from_slug(req.matches[1].str());
        if (!kind) {
            res.status = 404;
            return;
        }
        res.set_content(lab_page(*kind, SiteFlavor::Served), kHtml);
    });
    s.Get("/assets/lab.js", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(std::string(lab_script()), "text/javascript; charset=utf-8");
    });
    s.Get("/assets/lab.css", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(std::string(lab_stylesheet()), "text/css; charset=utf-8");
    });

    s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        if (req.path.starts_with("/api/")) {
            send_error(res, {"not_found", "no such endpoint", 404});
        } else {
            res.set_content("<!DOCTYPE html>\n<title>Not found</title>\n<p>Page not found.</p>\n", kHtml);
        }
        return httplib::Server::HandlerResponse::Handled;
    });
}

}  // namespace vmlab
