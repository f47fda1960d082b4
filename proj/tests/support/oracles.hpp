// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvefix::testing {

/// A line numbered 1-based in its own image.
struct NumberedLine {
    int line = 0;
    std::string text;
    friend bool operator==(const NumberedLine&, const NumberedLine&) = default;
};

/// Edit script from a longest-common-subsequence alignment, rendered as unified diff text.
struct OracleDiff {
    std::vector<NumberedLine> added;
    std::vector<NumberedLine> deleted;
    std::string unified;  ///< "--- a/f", "+++ b/f" and hunks with `context` lines of context
};

/// Line-level LCS diff. A missing final newline makes that line differ from the same text with one.
OracleDiff lcs_diff(std::string_view before, std::string_view after, int context = 3, bool terse_counts = false);

/// Random multi-line text over a small vocabulary so that lines repeat.
std::string random_text(std::mt19937& rng);

/// Random edit of `text`: deletions, insertions and replacements of whole lines, and sometimes a
/// change to the final newline.
std::string mutate_text(std::string_view text, std::mt19937& rng);

/// Lines of C-family source with code outside comments; strings and char literals are opaque.
int c_family_nloc(std::string_view source);

/// A single function in `language` with straight-line statements and `ifs` injected if-statements.
std::string generated_function(std::string_view language, int ifs, std::mt19937& rng);

/// Languages generated_function supports.
const std::vector<std::string>& generated_languages();

}  // namespace cvefix::testing
