// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvefix {

enum class Forge { github, gitlab, bitbucket };

[[nodiscard]] std::string_view forge_name(Forge forge);

/// A CVE reference resolved to a concrete commit in a forge-hosted git repository.
struct FixReference {
    std::string cve_id;
    std::string repo_url;     ///< https://host/owner/repo, no trailing slash, no ".git"
    std::string commit_hash;  ///< 6-40 lower-case hex digits
    Forge forge = Forge::github;

    friend bool operator==(const FixReference&, const FixReference&) = default;
};

/// How a reference URL relates to a supported forge. Only `commit` yields a FixReference.
enum class ReferenceKind { commit, pull_request, compare, other_forge_page, unsupported };

[[nodiscard]] ReferenceKind classify_reference(std::string_view url);

/// Recognizes direct commit URLs on GitHub, GitLab (including `/-/commit/` and the legacy
/// `/commit/` form, on gitlab.com and `gitlab.*` hosts) and Bitbucket (`/commits/`).
/// Query strings and fragments are ignored. Pure function.
[[nodiscard]] std::optional<FixReference> resolve(std::string_view url, std::string_view cve_id);

/// Forge commit URL shape with a hash of 4-40 hex digits. Shorter hashes than resolve() accepts
/// still mark a record as fix-referencing; they are dropped when resolved.
[[nodiscard]] bool is_commit_url(std::string_view url);

/// Removes exact duplicate triples, keeping first-seen order. The same commit under different
/// CVE ids is kept.
[[nodiscard]] std::vector<FixReference> dedupe(const std::vector<FixReference>& refs);

/// Per-kind counters for references that were inspected.
struct ReferenceStats {
    std::size_t commit = 0;
    std::size_t pull_request = 0;
    std::size_t compare = 0;
    std::size_t other_forge_page = 0;
    std::size_t unsupported = 0;

    void count(ReferenceKind kind);
};

}  // namespace cvefix
