// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/http.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "cvefix/errors.hpp"

namespace cvefix {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string target;  // /path?query
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw NetworkError("not an absolute URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::optional<std::string> HttpResponse::header(const std::string& name) const {
    const auto it = headers.find(lower(name));
    if (it == headers.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    // Write-then-rename keeps readers from seeing a half-written file.
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

HttpResponse LiveTransport::get(const std::string& url, const HttpHeaders& headers) {
    const auto parts = split_url(url);
    httplib::Client client(parts.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    httplib::Headers request_headers;
    request_headers.emplace("User-Agent", "cvefix/0.1");
    for (const auto& [k, v] : headers) {
        request_headers.emplace(k, v);
    }
    auto result = client.Get(parts.target, request_headers);
    if (!result) {
        throw NetworkError(url + ": " + httplib::to_string(result.error()));
    }
    HttpResponse response;
    response.status = result->status;
    response.body = std::move(result->body);
    for (const auto& [k, v] : result->headers) {
        response.headers.emplace(lower(k), v);
    }
    return response;
}

ReplayTransport::ReplayTransport(std::filesystem::path dir) : dir_(std::move(dir)) {
    const auto index = dir_ / "responses.json";
    if (!std::filesystem::exists(index)) {
        return;
    }
    const auto doc = nlohmann::json::parse(read_file(index));
    for (const auto& entry : doc) {
        Recording rec;
        rec.status = entry.value("status", 200);
        if (const auto h = entry.find("headers"); h != entry.end()) {
            for (const auto& [k, v] : h->items()) {
                rec.headers.emplace(lower(k), v.get<std::string>());
            }
        }
        if (const auto b = entry.find("body"); b != entry.end()) {
            rec.body = b->get<std::string>();
        }
        rec.body_file = entry.value("body_file", "");
        recordings_.insert_or_assign(entry.at("url").get<std::string>(), std::move(rec));
    }
}

HttpResponse ReplayTransport::get(const std::string& url, const HttpHeaders&) {
    {
        std::lock_guard lock(mutex_);
        requests_.push_back(url);
    }
    const auto it = recordings_.find(url);
    if (it == recordings_.end()) {
        throw NetworkError(url + ": no recorded response");
    }
    HttpResponse response;
    response.status = it->second.status;
    response.headers = it->second.headers;
    if (it->second.body) {
        response.body = *it->second.body;
    } else if (!it->second.body_file.empty()) {
        response.body = read_file(dir_ / it->second.body_file);
    }
    return response;
}

std::vector<std::string> ReplayTransport::requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
}

RecordingTransport::RecordingTransport(std::unique_ptr<HttpTransport> inner,
                                       std::filesystem::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {}

HttpResponse RecordingTransport::get(const std::string& url, const HttpHeaders& headers) {
    auto response = inner_->get(url, headers);
    std::lock_guard lock(mutex_);
    const auto index_path = dir_ / "responses.json";
    nlohmann::json index = nlohmann::json::array();
    if (std::filesystem::exists(index_path)) {
        index = nlohmann::json::parse(read_file(index_path));
        counter_ = std::max(counter_, index.size());
    }
    const auto body_file = "body_" + std::to_string(counter_++) + ".bin";
    write_file(dir_ / body_file, response.body);
    nlohmann::json entry{{"url", url}, {"status", response.status}, {"body_file", body_file}};
    entry["headers"] = response.headers;
    index.push_back(std::move(entry));
    write_file(index_path, index.dump(2));
    return response;
}

}  // namespace cvefix
