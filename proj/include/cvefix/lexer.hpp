// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cvefix/language.hpp"

namespace cvefix {

enum class TokenKind { identifier, number, string, op };

struct Token {
    std::string_view text;
    TokenKind kind = TokenKind::op;
    std::size_t offset = 0;
    int line = 1;      // 1-based line of the first character
    int end_line = 1;  // line of the last character (differs for multi-line strings)
    int column = 0;    // 0-based byte column of the first character
    bool preprocessor = false;
    /// Whitespace or a comment separates this token from the previous one.
    bool spaced = false;
};

struct LexedSource {
    std::vector<Token> tokens;
    /// code_line[n] is true when physical line n (1-based) holds part of a token.
    std::vector<bool> code_line;
    int physical_lines = 0;
};

/// Number of physical lines: newline count, plus one for an unterminated last line.
[[nodiscard]] int count_physical_lines(std::string_view source);

/// Tokenize source with the comment, string and preprocessor rules of `spec`. A null spec uses
/// a generic tokenizer with no comment syntax.
[[nodiscard]] LexedSource lex(std::string_view source, const LanguageSpec* spec);

}  // namespace cvefix
