// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvefix/language.hpp"
#include "cvefix/lexer.hpp"

namespace cvefix {

struct MethodProfile {
    int nloc = 0;
    int complexity = 1;
    int parameter_count = 0;
};

struct DmmScores {
    std::optional<double> unit_size;
    std::optional<double> unit_complexity;
    std::optional<double> unit_interfacing;

    [[nodiscard]] bool empty() const { return !unit_size && !unit_complexity && !unit_interfacing; }
};

enum class DmmProperty { size, complexity, interfacing };

/// Inclusive low-risk upper bounds.
struct DmmThresholds {
    int nloc = 15;
    int complexity = 5;
    int parameters = 2;
};

/// One changed method version and the number of changed lines that fall inside it (deleted lines
/// for the before image, added lines for the after image).
struct DmmUnit {
    MethodProfile profile;
    bool before_change = false;
    int changed_lines = 0;
};

/// Lines holding code outside comments. An empty or unknown language counts non-blank lines.
[[nodiscard]] int nloc(std::string_view source, std::string_view language = {});

/// 1 + decision points; absent for languages without decision rules.
[[nodiscard]] std::optional<int> cyclomatic_complexity(std::string_view method_source,
                                                       std::string_view language);

/// Lexical tokens after comment stripping.
[[nodiscard]] int token_count(std::string_view source, std::string_view language = {});

/// Decision points among tokens [begin, end) of a lexed source.
[[nodiscard]] int count_decisions(const std::vector<Token>& tokens, std::size_t begin, std::size_t end,
                                  const LanguageSpec& spec);

[[nodiscard]] bool is_low_risk(const MethodProfile& profile, DmmProperty property,
                               const DmmThresholds& thresholds = {});

/// good / (good + bad) over the changed lines; absent when no line was classified.
[[nodiscard]] std::optional<double> dmm(std::span<const DmmUnit> units, DmmProperty property,
                                        const DmmThresholds& thresholds = {});

[[nodiscard]] DmmScores dmm_scores(std::span<const DmmUnit> units, const DmmThresholds& thresholds = {});

/// Metrics for one method found in a file image.
struct MeasuredMethod {
    std::string name;
    std::string signature;
    std::vector<std::string> parameters;
    int start_line = 1;
    int end_line = 1;
    int nloc = 0;
    int complexity = 1;
    int token_count = 0;

    [[nodiscard]] MethodProfile profile() const {
        return {nloc, complexity, static_cast<int>(parameters.size())};
    }
};

/// Whole-file metrics plus the methods it contains.
struct SourceMetrics {
    int nloc = 0;
    int token_count = 0;
    /// Sum of method complexities; absent when the language has no method parser.
    std::optional<int> complexity;
    bool methods_supported = false;
    std::vector<MeasuredMethod> methods;
    std::optional<std::string> warning;
};

[[nodiscard]] SourceMetrics measure_source(std::string_view source, std::string_view language);

}  // namespace cvefix
