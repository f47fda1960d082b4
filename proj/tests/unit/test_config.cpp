// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "cvefix/config.hpp"
#include "cvefix/http.hpp"
#include "fixture.hpp"

using namespace cvefix;

TEST_CASE("ini keys with env overrides", "[config]") {
    cvefix::testing::TempDir tmp("cvefix-config");
    const auto ini = tmp.path() / ".CVEfixes.ini";
    write_file(ini,
               "[CVEfixes]\ndatabase_path = data/x.db\nsample_limit = 25\n\n[GitHub]\ngithub_username = alice\n"
               "github_token = abc\n");
    auto c = default_config();
    apply_ini(c, ini);
    CHECK(c.database_path == "data/x.db");
    CHECK(c.sample_limit == 25);
    CHECK(c.github_username == "alice");
    CHECK(c.credentials().github->token == "abc");

    const std::map<std::string, std::string> env{{"CVEFIX_SAMPLE_LIMIT", "3"}, {"CVEFIX_WORKER_COUNT", "4"}};
    apply_env(c, [&](const std::string& name) -> std::optional<std::string> {
        const auto it = env.find(name);
        return it == env.end() ? std::nullopt : std::optional(it->second);
    });
    CHECK(c.sample_limit == 3);
    CHECK(c.worker_count == 4);
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("invalid values", "[config]") {
    auto c = default_config();
    CHECK_THROWS_AS(set_config_value(c, "no_such_key", "1"), ConfigError);
    CHECK_THROWS_AS(set_config_value(c, "sample_limit", "many"), ConfigError);
    set_config_value(c, "sample_limit", "-1");
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = default_config();
    set_config_value(c, "worker_count", "0");
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("defaults", "[config]") {
    const auto c = default_config();
    CHECK(c.sample_limit == 0);
    CHECK(c.worker_count == 1);
    CHECK(c.years.first == 2002);
    CHECK(c.years.last >= 2024);
    CHECK_FALSE(c.credentials().github);
    for (const auto key : {"database_path", "sample_limit", "github_username", "github_token", "cache_dir", "workdir",
                           "worker_count"}) {
        CHECK(std::find(config_keys().begin(), config_keys().end(), key) != config_keys().end());
    }
}
