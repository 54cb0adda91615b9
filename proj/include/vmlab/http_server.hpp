#pragma once

#include "vmlab/lab_service.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace vmlab {

/// Strong validator for a response body: quoted FNV-1a 64 hex digest.
std::string etag_for(std::string_view body);

/**
 * HTTP/1.1 binding of LabService under /api/v1 plus the lab pages.
 *
 * When assets_dir is given (the separately built web UI), files there are
 * served under /assets/ ahead of the built-in lab script and stylesheet.
 */
class HttpServer {
  public:
    explicit HttpServer(LabService& service,
                        std::optional<std::filesystem::path> assets_dir = std::nullopt);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the socket; port 0 picks an ephemeral port. Returns the bound
    /// port, or throws LabError(Internal) when binding fails.
    int bind(const std::string& host, int port);

    /// Serves until stop() is called. Requires a successful bind().
    void listen();

    void stop();

    bool running() const;

  private:
    void install_routes();

    LabService& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace vmlab
