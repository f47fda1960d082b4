// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include <deque>

#include "cvefix/clock.hpp"
#include "cvefix/codec.hpp"
#include "cvefix/http.hpp"
#include "cvefix/reference_resolver.hpp"
#include "cvefix/repo_meta.hpp"
#include "cvefix/time.hpp"
#include "fixture.hpp"

using namespace cvefix;

namespace {

class ScriptedTransport final : public HttpTransport {
public:
    explicit ScriptedTransport(std::deque<HttpResponse> script) : script_(std::move(script)) {}
    HttpResponse get(const std::string& url, const HttpHeaders& headers) override {
        urls.push_back(url);
        last_headers = headers;
        REQUIRE_FALSE(script_.empty());
        auto r = script_.front();
        if (script_.size() > 1) {
            script_.pop_front();
        }
        return r;
    }
    std::vector<std::string> urls;
    HttpHeaders last_headers;

private:
    std::deque<HttpResponse> script_;
};

const Timestamp kStart = *parse_timestamp("2024-01-01T00:00:00Z");

HttpResponse limited(long long reset_epoch) {
    return {403, {{"x-ratelimit-remaining", "0"}, {"x-ratelimit-reset", std::to_string(reset_epoch)}}, "{}"};
}

}  // namespace

TEST_CASE("recorded forge fixtures", "[repo_meta]") {
    cvefix::testing::TempDir tmp("cvefix-meta");
    const auto world = cvefix::testing::build_fixture_world(tmp.path());
    ReplayTransport http(world.fixtures_dir);
    ManualClock clock(kStart);
    RepoMetaClient client(http, clock, {});

    const auto gh = client.fetch_meta(*resolve(std::string(cvefix::testing::kLibparse) + "/commit/abcdef1", "CVE-1"));
    CHECK(gh.repo_name == "acme/libparse");
    CHECK(gh.description);
    CHECK(gh.date_created);
    CHECK(gh.date_last_push);
    CHECK(gh.homepage);
    CHECK(gh.repo_language == "C");
    CHECK(gh.forks_count == 12);
    CHECK(gh.stars_count == 340);

    const auto bb = client.fetch_meta(*resolve(std::string(cvefix::testing::kGemkit) + "/commits/abcdef1", "CVE-1"));
    CHECK(bb.stars_count == -1);
    CHECK(bb.forks_count == -1);
    CHECK(bb.repo_name == "rubyco/gemkit");

    const auto gone = *resolve(std::string(cvefix::testing::kVanished) + "/commit/abcdef1", "CVE-1");
    CHECK_THROWS_AS(client.fetch_meta(gone), RepoUnavailable);
}

TEST_CASE("meta_api_url", "[repo_meta]") {
    CHECK(meta_api_url({"C", "https://github.com/o/r", "abcdef", Forge::github}) == "https://api.github.com/repos/o/r");
    CHECK(meta_api_url({"C", "https://gitlab.com/g/sub/p", "abcdef", Forge::gitlab}) ==
          "https://gitlab.com/api/v4/projects/g%2Fsub%2Fp");
    CHECK(meta_api_url({"C", "https://bitbucket.org/o/r", "abcdef", Forge::bitbucket}) ==
          "https://api.bitbucket.org/2.0/repositories/o/r");
}

TEST_CASE("ten authenticated requests are not delayed", "[repo_meta]") {
    ManualClock clock(kStart);
    RateLimiter limiter(hourly_limit(Forge::github, true), clock);
    for (int i = 0; i < 10; ++i) {
        CHECK(limiter.reserve().delay.count() == 0);
    }
    CHECK(hourly_limit(Forge::github, false) == 60);
    CHECK(hourly_limit(Forge::github, true) == 5000);
}

TEST_CASE("the anonymous bucket spaces requests once empty", "[repo_meta]") {
    ManualClock clock(kStart);
    RateLimiter limiter(60, clock);
    for (int i = 0; i < 60; ++i) {
        REQUIRE(limiter.reserve().delay.count() == 0);
    }
    CHECK(limiter.reserve().delay.count() == 60);
}

TEST_CASE("a 403 with a reset time defers the next attempt", "[repo_meta]") {
    ManualClock clock(kStart);
    const auto reset = kStart + std::chrono::seconds(900);
    ScriptedTransport http({limited(reset.time_since_epoch().count()),
                            {200, {}, R"({"full_name":"o/r","forks_count":1,"stargazers_count":2})"}});
    RepoMetaClient client(http, clock, {});
    const auto meta = client.fetch_meta({"C", "https://github.com/o/r", "abcdef", Forge::github});
    CHECK(meta.stars_count == 2);
    CHECK(http.urls.size() == 2);
    REQUIRE_FALSE(clock.sleeps().empty());
    CHECK(clock.sleeps().back() >= reset);
    CHECK(clock.now() >= reset);
}

TEST_CASE("three 403s exhaust a retry budget of two", "[repo_meta]") {
    ManualClock clock(kStart);
    const auto reset = kStart + std::chrono::seconds(60);
    ScriptedTransport http({limited(reset.time_since_epoch().count())});
    RepoMetaClient client(http, clock, {}, 2);
    CHECK_THROWS_AS(client.fetch_meta({"C", "https://github.com/o/r", "abcdef", Forge::github}), RateLimited);
    CHECK(http.urls.size() == 3);
}

TEST_CASE("credentials become request headers", "[repo_meta]") {
    ManualClock clock(kStart);
    ScriptedTransport http({{200, {}, R"({"full_name":"o/r"})"}});
    Credentials creds;
    creds.github = ForgeCredentials{"me", "tok"};
    RepoMetaClient client(http, clock, creds);
    (void)client.fetch_meta({"C", "https://github.com/o/r", "abcdef", Forge::github});
    bool auth = false;
    for (const auto& [k, v] : http.last_headers) {
        auth = auth || (k == "Authorization" && v == "Basic " + base64_encode("me:tok"));
    }
    CHECK(auth);
    CHECK(client.limiter(Forge::github).per_hour() == 5000);
}
