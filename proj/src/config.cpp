// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace cvefix {

namespace {

int parse_int(std::string_view key, const std::string& value) {
    int out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, value));
    }
    return out;
}

bool parse_bool(std::string_view key, const std::string& value) {
    std::string v;
    std::transform(value.begin(), value.end(), std::back_inserter(v),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", key, value));
}

std::optional<std::string> non_empty(const std::string& value) {
    if (value.empty()) {
        return std::nullopt;
    }
    return value;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    auto out = s.substr(b, e - b + 1);
    if (out.size() >= 2 && (out.front() == '"' || out.front() == '\'') && out.back() == out.front()) {
        out = out.substr(1, out.size() - 2);
    }
    return out;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys{
        "database_path", "sample_limit",   "github_username", "github_token", "gitlab_token",
        "bitbucket_username", "bitbucket_token", "cache_dir", "workdir", "worker_count",
        "nvd_base_url", "first_year", "last_year", "fixtures_dir", "mirror_dir",
        "cwe_path", "keep_clones", "force_refresh",
    };
    return keys;
}

Credentials Config::credentials() const {
    Credentials c;
    if (github_token) {
        c.github = ForgeCredentials{github_username.value_or(""), *github_token};
    }
    if (gitlab_token) {
        c.gitlab = ForgeCredentials{"", *gitlab_token};
    }
    if (bitbucket_token) {
        c.bitbucket = ForgeCredentials{bitbucket_username.value_or(""), *bitbucket_token};
    }
    return c;
}

Config default_config() {
    Config c;
    const auto today = std::chrono::year_month_day(std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now()));
    c.years.last = static_cast<int>(today.year());
    return c;
}

std::optional<std::string> process_env(const std::string& name) {
    if (const char* v = std::getenv(name.c_str())) {
        return std::string(v);
    }
    return std::nullopt;
}

void set_config_value(Config& config, std::string_view key, const std::string& raw) {
    const auto value = trim(raw);
    if (key == "database_path") {
        config.database_path = value;
    } else if (key == "sample_limit") {
        config.sample_limit = parse_int(key, value);
    } else if (key == "github_username") {
        config.github_username = non_empty(value);
    } else if (key == "github_token") {
        config.github_token = non_empty(value);
    } else if (key == "gitlab_token") {
        config.gitlab_token = non_empty(value);
    } else if (key == "bitbucket_username") {
        config.bitbucket_username = non_empty(value);
    } else if (key == "bitbucket_token") {
        config.bitbucket_token = non_empty(value);
    } else if (key == "cache_dir") {
        config.cache_dir = value;
    } else if (key == "workdir") {
        config.workdir = value;
    } else if (key == "worker_count") {
        config.worker_count = parse_int(key, value);
    } else if (key == "nvd_base_url") {
        config.nvd_base_url = value;
    } else if (key == "first_year") {
        config.years.first = parse_int(key, value);
    } else if (key == "last_year") {
        config.years.last = parse_int(key, value);
    } else if (key == "fixtures_dir") {
        config.fixtures_dir = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
    } else if (key == "mirror_dir") {
        config.mirror_dir = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
    } else if (key == "cwe_path") {
        config.cwe_path = value.empty() ? std::nullopt : std::optional<std::filesystem::path>(value);
    } else if (key == "keep_clones") {
        config.keep_clones = parse_bool(key, value);
    } else if (key == "force_refresh") {
        config.force_refresh = parse_bool(key, value);
    } else {
        throw ConfigError(fmt::format("unknown configuration key '{}'", key));
    }
}

void apply_ini(Config& config, const std::filesystem::path& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.message()));
    }
    const auto apply = [&](const std::string& key, const std::string& value) {
        set_config_value(config, key, value);
    };
    for (const auto& [name, node] : tree) {
        if (node.empty()) {
            apply(name, node.data());
            continue;
        }
        for (const auto& [key, leaf] : node) {
            apply(key, leaf.data());
        }
    }
}

void apply_env(Config& config, const EnvLookup& env) {
    for (const auto key : config_keys()) {
        std::string name = "CVEFIX_";
        for (const char c : key) {
            name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
        if (const auto v = env(name)) {
            set_config_value(config, key, *v);
        }
    }
}

void validate(const Config& config) {
    if (config.sample_limit < 0) {
        throw ConfigError("sample_limit must be >= 0");
    }
    if (config.worker_count < 1) {
        throw ConfigError("worker_count must be >= 1");
    }
    if (config.years.first < 2002) {
        throw ConfigError("first_year must be 2002 or later");
    }
    if (config.years.last < config.years.first) {
        throw ConfigError("last_year must not precede first_year");
    }
    if (config.database_path.empty()) {
        throw ConfigError("database_path must not be empty");
    }
}

}  // namespace cvefix
