// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cvefix {

struct DiffLine {
    int line = 0;  ///< 1-based
    std::string text;

    friend bool operator==(const DiffLine&, const DiffLine&) = default;
};

/// Added lines are numbered in the post-image, deleted lines in the pre-image.
struct ParsedDiff {
    std::vector<DiffLine> added;
    std::vector<DiffLine> deleted;
    /// "\ No newline at end of file" seen after a pre-image / post-image line. Not part of the
    /// added/deleted lists; kept so the diff can be re-applied byte-exactly.
    bool old_missing_newline = false;
    bool new_missing_newline = false;

    friend bool operator==(const ParsedDiff&, const ParsedDiff&) = default;
};

/// Parses git unified diff text. Anything before the first `@@` hunk header (and between files)
/// is ignored. Throws DiffParseError for a malformed hunk header.
[[nodiscard]] ParsedDiff parse_diff(std::string_view diff);

/// Re-applies a parsed diff to the pre-image. Throws std::invalid_argument when a deleted line
/// does not match `before`.
[[nodiscard]] std::string apply_diff(std::string_view before, const ParsedDiff& diff);

/// Canonical column form: `{"added":[[line,"text"],...],"deleted":[[line,"text"],...]}`.
[[nodiscard]] std::string to_json_text(const ParsedDiff& diff);
[[nodiscard]] ParsedDiff parsed_diff_from_json(std::string_view text);

/// Splits on '\n'. A trailing newline does not produce an empty final element.
[[nodiscard]] std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace cvefix
