// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cvefix/config.hpp"

namespace cvefix::testing {

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "cvefix-test");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Runs git in `repo` with fixed identity and dates; throws on failure.
std::string git(const std::filesystem::path& repo, const std::vector<std::string>& args,
                const std::string& date = "2020-01-01T00:00:00Z");

/// Writes a file (creating parent directories) inside a working tree.
void put(const std::filesystem::path& repo, const std::string& relative, const std::string& content);

/// The offline world used by the end-to-end tests: three mirrored repositories, an unavailable
/// fourth one, two NVD feeds and recorded forge responses.
struct FixtureWorld {
    std::filesystem::path root;
    std::filesystem::path mirror_dir;
    std::filesystem::path fixtures_dir;
    std::filesystem::path cwe_csv;
    /// label ("a1", "b4", ...) -> full commit hash
    std::map<std::string, std::string> commits;

    /// Config pointing at the world, with the database and caches under `run_dir`.
    [[nodiscard]] Config config(const std::filesystem::path& run_dir, int worker_count = 1) const;
};

FixtureWorld build_fixture_world(const std::filesystem::path& root);

inline constexpr const char* kLibparse = "https://github.com/acme/libparse";
inline constexpr const char* kWebtool = "https://gitlab.com/pyteam/webtool";
inline constexpr const char* kGemkit = "https://bitbucket.org/rubyco/gemkit";
inline constexpr const char* kVanished = "https://github.com/ghost/vanished";

}  // namespace cvefix::testing
