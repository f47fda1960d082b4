// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvefix/time.hpp"

namespace cvefix {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Run a program (looked up on PATH) and capture its output. `extra_env` entries are
/// `NAME=value` strings added to the inherited environment.
[[nodiscard]] ProcessResult run_process(const std::vector<std::string>& argv,
                                        const std::vector<std::string>& extra_env = {},
                                        std::string_view stdin_data = {});

struct CommitInfo {
    std::string hash;
    std::vector<std::string> parents;
    std::string author_name;
    std::string author_email;
    Timestamp author_date;
    Timestamp committer_date;
    std::string message;
};

enum class TreeChangeKind { added, deleted, modified, renamed };

struct TreeChange {
    TreeChangeKind kind = TreeChangeKind::modified;
    std::optional<std::string> old_path;
    std::optional<std::string> new_path;
    std::string old_blob;
    std::string new_blob;
    std::string old_mode;
    std::string new_mode;
};

/// Thin wrapper over the `git` command line for one local repository.
class GitRepository {
public:
    explicit GitRepository(std::filesystem::path dir);

    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return dir_; }

    /// Full object id of a commit given a full or abbreviated hash (or HEAD). Throws CommitNotFound.
    [[nodiscard]] std::string resolve(std::string_view rev) const;

    [[nodiscard]] CommitInfo commit(std::string_view hash) const;

    /// Changes of `hash` against its first parent (or the empty tree for a root commit), with
    /// rename detection.
    [[nodiscard]] std::vector<TreeChange> changes(const CommitInfo& commit) const;

    /// Unified diff text for one change, starting at the first hunk header (or git's binary notice).
    [[nodiscard]] std::string diff(const CommitInfo& commit, const TreeChange& change) const;

    [[nodiscard]] std::string blob(std::string_view object_id) const;
    [[nodiscard]] std::size_t blob_size(std::string_view object_id) const;

    /// Run git with `args` inside this repository; throws Error on a non-zero exit.
    [[nodiscard]] std::string git(const std::vector<std::string>& args) const;

private:
    [[nodiscard]] const std::string& empty_tree() const;

    std::filesystem::path dir_;
    mutable std::string empty_tree_;
};

/// Environment that keeps git from prompting for credentials.
[[nodiscard]] std::vector<std::string> noninteractive_git_env();

}  // namespace cvefix
