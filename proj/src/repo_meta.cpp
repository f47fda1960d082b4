// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/repo_meta.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "cvefix/codec.hpp"
#include "cvefix/errors.hpp"

namespace cvefix {

namespace {

using nlohmann::json;

struct UrlParts {
    std::string host;
    std::string path;  // owner/repo (possibly with GitLab subgroups)
};

UrlParts split_repo_url(const std::string& url) {
    const auto scheme = url.find("://");
    const auto rest = scheme == std::string::npos ? url : url.substr(scheme + 3);
    const auto slash = rest.find('/');
    if (slash == std::string::npos) {
        throw Error("not a repository url: " + url);
    }
    return {rest.substr(0, slash), rest.substr(slash + 1)};
}

std::optional<std::string> text_field(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
        return std::nullopt;
    }
    return it->get<std::string>();
}

std::optional<Timestamp> time_field(const json& doc, const char* key) {
    if (auto text = text_field(doc, key)) {
        return parse_timestamp(*text);
    }
    return std::nullopt;
}

int count_field(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_number_integer()) {
        return kMissingCount;
    }
    const auto v = it->get<long long>();
    return v < 0 ? kMissingCount : static_cast<int>(std::min<long long>(v, INT32_MAX));
}

std::optional<Timestamp> reset_time(const HttpResponse& r, Timestamp now) {
    for (const char* name : {"x-ratelimit-reset", "ratelimit-reset"}) {
        if (const auto v = r.header(name)) {
            try {
                const auto epoch = std::stoll(*v);
                // Some servers send seconds-until-reset rather than an epoch.
                if (epoch < 1000000000LL) {
                    return now + std::chrono::seconds(epoch);
                }
                return Timestamp(std::chrono::seconds(epoch));
            } catch (const std::exception&) {
            }
        }
    }
    if (const auto v = r.header("retry-after")) {
        try {
            return now + std::chrono::seconds(std::stoll(*v));
        } catch (const std::exception&) {
        }
    }
    if (r.header("x-ratelimit-remaining") == "0" || r.header("ratelimit-remaining") == "0") {
        return now + std::chrono::seconds(60);
    }
    return std::nullopt;
}

}  // namespace

const std::optional<ForgeCredentials>& Credentials::for_forge(Forge forge) const {
    switch (forge) {
        case Forge::github:
            return github;
        case Forge::gitlab:
            return gitlab;
        case Forge::bitbucket:
            break;
    }
    return bitbucket;
}

int hourly_limit(Forge forge, bool authenticated) {
    switch (forge) {
        case Forge::github:
            return authenticated ? 5000 : 60;
        case Forge::gitlab:
            return authenticated ? 2000 : 400;
        case Forge::bitbucket:
            break;
    }
    return authenticated ? 1000 : 60;
}

RateLimiter::RateLimiter(int per_hour, Clock& clock)
    : clock_(clock), per_hour_(std::max(1, per_hour)), tokens_(per_hour_), last_(clock.now()) {}

ScheduleDecision RateLimiter::reserve() {
    std::lock_guard lock(mutex_);
    const auto now = clock_.now();
    const double rate = per_hour_ / 3600.0;
    if (now > last_) {
        tokens_ = std::min<double>(per_hour_, tokens_ + rate * static_cast<double>((now - last_).count()));
        last_ = now;
    }
    tokens_ -= 1.0;
    auto send_at = now;
    if (tokens_ < 0) {
        send_at = now + std::chrono::seconds(static_cast<long long>(std::ceil(-tokens_ / rate)));
    }
    send_at = std::max(send_at, blocked_until_);
    return {send_at, std::chrono::duration_cast<std::chrono::seconds>(send_at - now)};
}

void RateLimiter::acquire() {
    const auto decision = reserve();
    if (decision.delay.count() > 0) {
        clock_.sleep_until(decision.send_at);
    }
}

void RateLimiter::block_until(Timestamp reset) {
    std::lock_guard lock(mutex_);
    blocked_until_ = std::max(blocked_until_, reset);
}

RepoMetaClient::RepoMetaClient(HttpTransport& http, Clock& clock, Credentials credentials, int retry_budget)
    : http_(http), clock_(clock), credentials_(std::move(credentials)), retry_budget_(std::max(0, retry_budget)) {}

RateLimiter& RepoMetaClient::limiter(Forge forge) {
    std::lock_guard lock(mutex_);
    auto& slot = limiters_[forge];
    if (!slot) {
        slot = std::make_unique<RateLimiter>(hourly_limit(forge, credentials_.for_forge(forge).has_value()), clock_);
    }
    return *slot;
}

HttpHeaders RepoMetaClient::headers_for(Forge forge) const {
    HttpHeaders h{{"User-Agent", "cvefix"}};
    const auto& cred = credentials_.for_forge(forge);
    switch (forge) {
        case Forge::github:
            h.emplace_back("Accept", "application/vnd.github+json");
            if (cred) {
                if (!cred->username.empty()) {
                    h.emplace_back("Authorization", "Basic " + base64_encode(cred->username + ":" + cred->token));
                } else {
                    h.emplace_back("Authorization", "Bearer " + cred->token);
                }
            }
            break;
        case Forge::gitlab:
            if (cred) {
                h.emplace_back("PRIVATE-TOKEN", cred->token);
            }
            break;
        case Forge::bitbucket:
            if (cred) {
                h.emplace_back("Authorization", "Basic " + base64_encode(cred->username + ":" + cred->token));
            }
            break;
    }
    return h;
}

std::string meta_api_url(const FixReference& ref) {
    const auto parts = split_repo_url(ref.repo_url);
    switch (ref.forge) {
        case Forge::github:
            return "https://api.github.com/repos/" + parts.path;
        case Forge::gitlab:
            return "https://" + parts.host + "/api/v4/projects/" + url_encode(parts.path);
        case Forge::bitbucket:
            break;
    }
    return "https://api.bitbucket.org/2.0/repositories/" + parts.path;
}

RepositoryMeta parse_meta(Forge forge, const std::string& repo_url, std::string_view body) {
    const auto doc = json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error("malformed repository metadata for " + repo_url);
    }
    RepositoryMeta m;
    m.repo_url = repo_url;
    m.description = text_field(doc, "description");
    switch (forge) {
        case Forge::github:
            m.repo_name = text_field(doc, "full_name").value_or("");
            m.date_created = time_field(doc, "created_at");
            m.date_last_push = time_field(doc, "pushed_at");
            m.homepage = text_field(doc, "homepage");
            m.repo_language = text_field(doc, "language");
            m.forks_count = count_field(doc, "forks_count");
            m.stars_count = count_field(doc, "stargazers_count");
            break;
        case Forge::gitlab:
            m.repo_name = text_field(doc, "path_with_namespace").value_or("");
            m.date_created = time_field(doc, "created_at");
            m.date_last_push = time_field(doc, "last_activity_at");
            m.forks_count = count_field(doc, "forks_count");
            m.stars_count = count_field(doc, "star_count");
            break;
        case Forge::bitbucket:
            m.repo_name = text_field(doc, "full_name").value_or("");
            m.date_created = time_field(doc, "created_on");
            m.date_last_push = time_field(doc, "updated_on");
            m.homepage = text_field(doc, "website");
            m.repo_language = text_field(doc, "language");
            break;
    }
    if (m.repo_name.empty()) {
        m.repo_name = split_repo_url(repo_url).path;
    }
    return m;
}

RepositoryMeta RepoMetaClient::fetch_meta(const FixReference& ref) {
    const auto url = meta_api_url(ref);
    const auto headers = headers_for(ref.forge);
    auto& lim = limiter(ref.forge);
    for (int attempt = 0;; ++attempt) {
        lim.acquire();
        const auto response = http_.get(url, headers);
        if (response.status == 200) {
            return parse_meta(ref.forge, ref.repo_url, response.body);
        }
        if (response.status == 404 || response.status == 410) {
            throw RepoUnavailable(ref.repo_url, fmt::format("metadata request returned {}", response.status));
        }
        if (response.status == 403 || response.status == 429) {
            if (const auto reset = reset_time(response, clock_.now())) {
                lim.block_until(*reset);
                if (attempt >= retry_budget_) {
                    throw RateLimited(fmt::format("{}: rate limited after {} retries", ref.repo_url, attempt),
                                      *reset);
                }
                spdlog::info("rate limited by {}; waiting until {}", forge_name(ref.forge), format_timestamp(*reset));
                continue;
            }
        }
        throw Error(fmt::format("{}: metadata request returned HTTP {}", ref.repo_url, response.status));
    }
}

}  // namespace cvefix
