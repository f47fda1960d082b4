// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "cvefix/errors.hpp"
#include "cvefix/feed_ingest.hpp"
#include "cvefix/repo_meta.hpp"

namespace cvefix {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct Config {
    std::filesystem::path database_path = "CVEfixes.db";
    int sample_limit = 0;  ///< 0 = unlimited
    std::optional<std::string> github_username;
    std::optional<std::string> github_token;
    std::optional<std::string> gitlab_token;
    std::optional<std::string> bitbucket_username;
    std::optional<std::string> bitbucket_token;
    std::filesystem::path cache_dir = ".cvefix-cache";
    std::filesystem::path workdir = ".cvefix-work";
    int worker_count = 1;

    std::string nvd_base_url = "https://nvd.nist.gov/feeds/json/cve/1.1/";
    YearRange years{2002, 2002};
    /// Recorded HTTP responses to replay instead of using the network.
    std::optional<std::filesystem::path> fixtures_dir;
    /// Local mirror of forge repositories used instead of cloning over the network.
    std::optional<std::filesystem::path> mirror_dir;
    /// MITRE CWE CSV; the bundled snapshot when absent.
    std::optional<std::filesystem::path> cwe_path;
    bool keep_clones = false;
    bool force_refresh = false;

    [[nodiscard]] Credentials credentials() const;
};

/// Defaults, with the year range ending at the current UTC year.
[[nodiscard]] Config default_config();

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
[[nodiscard]] std::optional<std::string> process_env(const std::string& name);

/// Sets one key from text. Throws ConfigError on an unknown key or a malformed value.
void set_config_value(Config& config, std::string_view key, const std::string& value);

/// Applies an INI file. Keys may appear at the top level or inside any section.
void apply_ini(Config& config, const std::filesystem::path& path);

/// Applies CVEFIX_<KEY> environment variables (upper-case key names).
void apply_env(Config& config, const EnvLookup& env = process_env);

/// Throws ConfigError when a value is out of range.
void validate(const Config& config);

/// Every recognised key, in documentation order.
[[nodiscard]] const std::vector<std::string_view>& config_keys();

}  // namespace cvefix
