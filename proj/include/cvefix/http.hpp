// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvefix {

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
    int status = 0;
    /// Header names are lower-cased.
    std::map<std::string, std::string> headers;
    std::string body;

    [[nodiscard]] std::optional<std::string> header(const std::string& name) const;
};

/// Minimal GET-only HTTP client. Implementations throw NetworkError when no response is obtained;
/// any HTTP status (including 4xx/5xx) is returned as a response.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url, const HttpHeaders& headers) = 0;
};

/// HTTPS client backed by cpp-httplib.
class LiveTransport final : public HttpTransport {
public:
    explicit LiveTransport(int timeout_seconds = 60) : timeout_seconds_(timeout_seconds) {}
    HttpResponse get(const std::string& url, const HttpHeaders& headers) override;

private:
    int timeout_seconds_;
};

/// Serves recorded responses from a fixture directory.
///
/// Layout: `<dir>/responses.json` is an array of
/// `{"url": ..., "status": 200, "headers": {...}, "body_file": "x.json"}` objects (or an inline
/// `"body"` string); body files are read relative to `<dir>`. URLs without a recording raise
/// NetworkError, which is how tests simulate an unreachable server.
class ReplayTransport final : public HttpTransport {
public:
    explicit ReplayTransport(std::filesystem::path dir);
    HttpResponse get(const std::string& url, const HttpHeaders& headers) override;

    /// URLs requested so far, in order.
    std::vector<std::string> requests() const;

private:
    struct Recording {
        int status;
        std::map<std::string, std::string> headers;
        std::filesystem::path body_file;
        std::optional<std::string> body;
    };
    std::filesystem::path dir_;
    std::map<std::string, Recording> recordings_;
    mutable std::mutex mutex_;
    std::vector<std::string> requests_;
};

/// Decorator that appends every response obtained through `inner` to a fixture directory in the
/// ReplayTransport layout.
class RecordingTransport final : public HttpTransport {
public:
    RecordingTransport(std::unique_ptr<HttpTransport> inner, std::filesystem::path dir);
    HttpResponse get(const std::string& url, const HttpHeaders& headers) override;

private:
    std::unique_ptr<HttpTransport> inner_;
    std::filesystem::path dir_;
    std::mutex mutex_;
    std::size_t counter_ = 0;
};

/// Reads a whole file as bytes; throws std::runtime_error if it cannot be opened.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cvefix
