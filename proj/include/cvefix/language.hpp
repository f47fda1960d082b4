// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cvefix {

/// How method boundaries are discovered for a language.
enum class MethodSyntax { none, braces, python, ruby };

/// Lexical description of a programming language: enough to strip comments, find string
/// literals, count decision points and (for some languages) delimit methods.
struct LanguageSpec {
    std::string_view name;
    std::vector<std::string_view> line_comments;
    std::vector<std::pair<std::string_view, std::string_view>> block_comments;
    /// Block comments whose opening marker must start a line (Ruby `=begin`, Perl `=pod`).
    std::vector<std::pair<std::string_view, std::string_view>> line_start_blocks;
    std::string_view quotes = "\"'";
    bool triple_quotes = false;
    bool backslash_escapes = true;
    bool multiline_strings = false;
    bool c_preprocessor = false;
    /// `'` opens a literal only when it closes again within a few characters (Rust lifetimes,
    /// Lisp quote, OCaml type variables).
    bool short_single_quote = false;
    /// `'` after an operand is a transpose operator (MATLAB).
    bool quote_transpose = false;
    /// Ruby method names may end in `?` or `!`.
    bool predicate_identifiers = false;
    /// `<<ID` (or `<<<ID` for PHP) here-documents.
    bool heredocs = false;
    MethodSyntax methods = MethodSyntax::none;
    std::vector<std::string_view> decision_keywords;
    std::vector<std::string_view> decision_operators;
    /// Whether `?` counts as a ternary decision point.
    bool ternary = false;
};

/// Spec for a language name as returned by detect_language, or nullptr.
[[nodiscard]] const LanguageSpec* find_language(std::string_view name);

/// Every language name the detector can return, sorted.
[[nodiscard]] std::vector<std::string> supported_languages();

/// True when method-level extraction is available for the language.
[[nodiscard]] bool has_method_parser(std::string_view language);

/// Pluggable file-language classifier.
class LanguageDetector {
public:
    virtual ~LanguageDetector() = default;
    [[nodiscard]] virtual std::optional<std::string> detect(std::string_view filename,
                                                            std::string_view content) const = 0;
};

/// Extension table plus content heuristics for ambiguous extensions (`.h`, `.m`, `.pl`, `.inc`)
/// and extension-less scripts (shebang). Binary content (NUL bytes) yields nullopt.
class HeuristicLanguageDetector final : public LanguageDetector {
public:
    [[nodiscard]] std::optional<std::string> detect(std::string_view filename,
                                                    std::string_view content) const override;
};

/// Convenience wrapper around HeuristicLanguageDetector.
[[nodiscard]] std::optional<std::string> detect_language(std::string_view filename,
                                                         std::string_view content);

}  // namespace cvefix
