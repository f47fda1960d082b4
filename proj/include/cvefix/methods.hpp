// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvefix/language.hpp"
#include "cvefix/lexer.hpp"

namespace cvefix {

/// A function or method located in one file image.
struct MethodSpan {
    std::string name;
    std::vector<std::string> parameters;
    int start_line = 1;  // line of the name token
    int end_line = 1;    // line of the last body token
    std::size_t first_token = 0;
    std::size_t body_begin = 0;  // first token after the parameter list
    std::size_t last_token = 0;

    [[nodiscard]] std::string signature() const;
};

struct MethodScan {
    std::vector<MethodSpan> methods;
    /// Set when the structure could not be followed to the end (unbalanced braces, missing `end`).
    std::optional<std::string> problem;
};

/// Locate top-level functions and methods of classes/namespaces. Nested functions are part of
/// their enclosing method. Returns an empty scan for languages without a method parser.
[[nodiscard]] MethodScan find_methods(const LexedSource& lexed, const LanguageSpec& spec);

}  // namespace cvefix
