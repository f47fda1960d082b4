// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "cvefix/clock.hpp"
#include "cvefix/http.hpp"
#include "cvefix/reference_resolver.hpp"
#include "cvefix/time.hpp"

namespace cvefix {

/// Sentinel for counts a forge does not provide.
inline constexpr int kMissingCount = -1;

struct RepositoryMeta {
    std::string repo_url;
    std::string repo_name;  // owner/name
    std::optional<std::string> description;
    std::optional<Timestamp> date_created;
    std::optional<Timestamp> date_last_push;
    std::optional<std::string> homepage;
    std::optional<std::string> repo_language;
    int forks_count = kMissingCount;
    int stars_count = kMissingCount;

    friend bool operator==(const RepositoryMeta&, const RepositoryMeta&) = default;
};

struct ForgeCredentials {
    std::string username;
    std::string token;
};

struct Credentials {
    std::optional<ForgeCredentials> github;
    std::optional<ForgeCredentials> gitlab;
    std::optional<ForgeCredentials> bitbucket;

    [[nodiscard]] const std::optional<ForgeCredentials>& for_forge(Forge forge) const;
};

/// Requests per hour a client allows itself.
[[nodiscard]] int hourly_limit(Forge forge, bool authenticated);

struct ScheduleDecision {
    Timestamp send_at;
    std::chrono::seconds delay{0};
};

/// Token bucket holding up to `per_hour` requests and refilling continuously. Thread-safe; one
/// instance is shared by all workers talking to the same forge.
class RateLimiter {
public:
    RateLimiter(int per_hour, Clock& clock);

    /// Take one token and report when the request may be sent.
    ScheduleDecision reserve();
    /// reserve(), then sleep on the clock until the send time.
    void acquire();
    /// No request goes out before `reset` (server-announced limit reset).
    void block_until(Timestamp reset);

    [[nodiscard]] int per_hour() const noexcept { return per_hour_; }

private:
    std::mutex mutex_;
    Clock& clock_;
    int per_hour_;
    double tokens_;
    Timestamp last_;
    Timestamp blocked_until_{};
};

/// Repository metadata client for GitHub, GitLab and Bitbucket.
class RepoMetaClient {
public:
    RepoMetaClient(HttpTransport& http, Clock& clock, Credentials credentials, int retry_budget = 2);

    /// Throws RepoUnavailable (404/410), RateLimited (budget exhausted) or Error.
    RepositoryMeta fetch_meta(const FixReference& ref);

    RateLimiter& limiter(Forge forge);

private:
    HttpHeaders headers_for(Forge forge) const;

    HttpTransport& http_;
    Clock& clock_;
    Credentials credentials_;
    int retry_budget_;
    std::mutex mutex_;
    std::map<Forge, std::unique_ptr<RateLimiter>> limiters_;
};

/// API endpoint describing the repository of a fix reference.
[[nodiscard]] std::string meta_api_url(const FixReference& ref);

/// Map a forge API document to a RepositoryMeta. Throws Error on malformed documents.
[[nodiscard]] RepositoryMeta parse_meta(Forge forge, const std::string& repo_url, std::string_view body);

}  // namespace cvefix
