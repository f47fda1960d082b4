// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvefix/code_metrics.hpp"
#include "cvefix/diff.hpp"
#include "cvefix/git.hpp"
#include "cvefix/language.hpp"
#include "cvefix/time.hpp"

namespace cvefix {

enum class ChangeType { added, deleted, modified, renamed };

[[nodiscard]] std::string_view change_type_name(ChangeType type);
[[nodiscard]] std::optional<ChangeType> parse_change_type(std::string_view name);

struct CommitChange {
    std::string hash;
    std::string repo_url;
    std::string author_name;
    Timestamp author_date;
    Timestamp committer_date;
    std::string message;
    bool is_merge = false;
    int num_lines_added = 0;
    int num_lines_deleted = 0;
    std::optional<double> dmm_unit_size;
    std::optional<double> dmm_unit_complexity;
    std::optional<double> dmm_unit_interfacing;

    friend bool operator==(const CommitChange&, const CommitChange&) = default;
};

struct FileChange {
    std::string file_change_id;
    std::string hash;
    std::string filename;
    std::optional<std::string> old_path;
    std::optional<std::string> new_path;
    ChangeType change_type = ChangeType::modified;
    std::optional<std::string> code_before;
    std::optional<std::string> code_after;
    std::string diff;
    ParsedDiff diff_parsed;
    int num_lines_added = 0;
    int num_lines_deleted = 0;
    std::optional<int> nloc;
    std::optional<int> complexity;
    std::optional<int> token_count;
    std::optional<std::string> programming_language;
    bool binary = false;

    friend bool operator==(const FileChange&, const FileChange&) = default;
};

struct MethodChange {
    std::string method_change_id;
    std::string file_change_id;
    std::string name;
    std::string signature;
    std::vector<std::string> parameters;
    int start_line = 1;
    int end_line = 1;
    std::string code;
    int nloc = 0;
    int complexity = 1;
    int token_count = 0;
    bool before_change = false;

    friend bool operator==(const MethodChange&, const MethodChange&) = default;
};

/// Everything extracted for one fix commit.
struct CommitExtraction {
    CommitChange commit;
    std::vector<FileChange> files;
    std::vector<MethodChange> methods;
    std::vector<std::string> warnings;
};

/// sha256(repo_url, hash, old_path, new_path) truncated to 32 hex characters.
[[nodiscard]] std::string make_file_change_id(std::string_view repo_url, std::string_view hash,
                                              std::string_view old_path, std::string_view new_path);
/// sha256(file_change_id, signature, before_change) truncated to 32 hex characters.
[[nodiscard]] std::string make_method_change_id(std::string_view file_change_id, std::string_view signature,
                                                bool before_change);

struct CloneOptions {
    /// Offline mirror root: https://host/owner/repo is looked up as <mirror_dir>/host/owner/repo.
    std::optional<std::filesystem::path> mirror_dir;
    /// Keep the clone on disk when the handle is destroyed.
    bool keep_clone = false;
};

/// A local clone of one repository. The clone directory is removed on destruction unless kept.
class RepoHandle {
public:
    RepoHandle(std::string repo_url, std::filesystem::path dir, bool owned);
    ~RepoHandle();
    RepoHandle(RepoHandle&& other) noexcept;
    RepoHandle& operator=(RepoHandle&&) = delete;
    RepoHandle(const RepoHandle&) = delete;
    RepoHandle& operator=(const RepoHandle&) = delete;

    [[nodiscard]] const std::string& repo_url() const noexcept { return repo_url_; }
    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return git_.dir(); }
    [[nodiscard]] const GitRepository& git() const noexcept { return git_; }
    /// Full hash for a full or abbreviated one. Throws CommitNotFound.
    [[nodiscard]] std::string resolve(std::string_view hash) const { return git_.resolve(hash); }

private:
    std::string repo_url_;
    GitRepository git_;
    bool owned_;
};

/// Clone repo_url (or its mirror, or a local path) into workdir. Throws RepoUnavailable.
[[nodiscard]] RepoHandle clone_repo(const std::string& repo_url, const std::filesystem::path& workdir,
                                    const CloneOptions& options = {});

/// Extract commit, file and method records for one fix commit. Throws CommitNotFound.
[[nodiscard]] CommitExtraction extract(const RepoHandle& handle, std::string_view hash,
                                       const LanguageDetector& detector = HeuristicLanguageDetector());

[[nodiscard]] CommitChange extract_commit(const RepoHandle& handle, std::string_view hash);
[[nodiscard]] std::vector<FileChange> extract_file_changes(const RepoHandle& handle, std::string_view hash);

/// Methods of the before image intersecting a deleted line and of the after image intersecting
/// an added line. Unsupported languages yield an empty list; unparseable sources add a warning.
[[nodiscard]] std::vector<MethodChange> extract_method_changes(const FileChange& file_change,
                                                               std::vector<std::string>* warnings = nullptr);

/// DMM inputs for a set of method changes, counting changed lines of `files` inside each span.
[[nodiscard]] std::vector<DmmUnit> dmm_units(const std::vector<FileChange>& files,
                                             const std::vector<MethodChange>& methods);

/// Lines [start_line, end_line] of text, without the final line terminator.
[[nodiscard]] std::string slice_lines(std::string_view text, int start_line, int end_line);

}  // namespace cvefix
