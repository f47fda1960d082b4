// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/lexer.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace cvefix {

namespace {

constexpr std::array<std::string_view, 39> kOperators{
    ">>>=", "<<=", ">>=", "...", "->*", "<=>", "===", "!==", "**=", "&&=", "||=", "?\?=", ">>>",
    "::",   "->",  "=>",  "==",  "!=",  "<=",  ">=",  "&&",  "||",  "++",  "--",  "+=",  "-=",
    "*=",   "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",  "??",  "?.",  "..",  ":="};

bool ident_start(unsigned char c) {
    return std::isalpha(c) != 0 || c == '_' || c == '$' || c == '@' || c >= 0x80;
}

bool ident_char(unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '$' || c >= 0x80;
}

std::size_t utf8_length(unsigned char lead) {
    if (lead < 0x80) {
        return 1;
    }
    if ((lead & 0xE0) == 0xC0) {
        return 2;
    }
    if ((lead & 0xF0) == 0xE0) {
        return 3;
    }
    if ((lead & 0xF8) == 0xF0) {
        return 4;
    }
    return 1;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Heredoc {
    std::string id;
};

class Lexer {
public:
    Lexer(std::string_view src, const LanguageSpec* spec) : src_(src), spec_(spec) {}

    LexedSource run() {
        out_.physical_lines = count_physical_lines(src_);
        out_.code_line.assign(static_cast<std::size_t>(out_.physical_lines) + 2, false);
        while (i_ < src_.size()) {
            step();
        }
        return std::move(out_);
    }

private:
    char at(std::size_t k) const { return k < src_.size() ? src_[k] : '\0'; }

    bool starts(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

    void newline() {
        ++line_;
        line_start_ = i_ + 1;
        at_line_start_ = true;
        spaced_ = true;
        in_pp_ = false;
    }

    // Advance over [i_, end) while tracking newlines.
    void consume_to(std::size_t end) {
        end = std::min(end, src_.size());
        while (i_ < end) {
            if (src_[i_] == '\n') {
                ++line_;
                line_start_ = i_ + 1;
            }
            ++i_;
        }
    }

    // The newline at `nl` is preceded by a line-splicing backslash.
    [[nodiscard]] bool spliced(std::size_t nl) const {
        std::size_t k = nl;
        if (k > 0 && src_[k - 1] == '\r') {
            --k;
        }
        return k > 0 && src_[k - 1] == '\\';
    }

    void emit(std::size_t begin, TokenKind kind, int first_line, std::size_t first_line_start) {
        Token t;
        t.text = src_.substr(begin, i_ - begin);
        t.kind = kind;
        t.offset = begin;
        t.line = first_line;
        t.end_line = line_;
        t.column = static_cast<int>(begin - first_line_start);
        t.preprocessor = in_pp_;
        t.spaced = spaced_;
        for (int l = t.line; l <= t.end_line; ++l) {
            mark(l);
        }
        out_.tokens.push_back(t);
        spaced_ = false;
        at_line_start_ = false;
    }

    void mark(int l) {
        if (l >= 1 && static_cast<std::size_t>(l) < out_.code_line.size()) {
            out_.code_line[static_cast<std::size_t>(l)] = true;
        }
    }

    void step() {
        const auto c = static_cast<unsigned char>(src_[i_]);
        if (c == '\n') {
            newline();
            ++i_;
            if (!heredocs_.empty()) {
                read_heredoc_bodies();
            }
            return;
        }
        if (c == '\\' && (at(i_ + 1) == '\n' || (at(i_ + 1) == '\r' && at(i_ + 2) == '\n'))) {
            const bool pp = in_pp_;
            i_ += at(i_ + 1) == '\r' ? 2 : 1;
            ++line_;
            line_start_ = i_ + 1;
            ++i_;
            spaced_ = true;
            in_pp_ = pp;
            return;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++i_;
            spaced_ = true;
            return;
        }
        if (spec_ != nullptr && try_comment()) {
            return;
        }
        if (spec_ != nullptr && spec_->c_preprocessor && at_line_start_ && c == '#') {
            in_pp_ = true;
        }
        if (spec_ != nullptr && try_heredoc()) {
            return;
        }
        if (try_string()) {
            return;
        }
        const auto begin = i_;
        const int first_line = line_;
        const auto first_start = line_start_;
        if (std::isdigit(c) != 0 || (c == '.' && std::isdigit(static_cast<unsigned char>(at(i_ + 1))) != 0)) {
            lex_number();
            emit(begin, TokenKind::number, first_line, first_start);
            return;
        }
        if (ident_start(c)) {
            ++i_;
            while (i_ < src_.size() && ident_char(static_cast<unsigned char>(src_[i_]))) {
                ++i_;
            }
            if (spec_ != nullptr && spec_->predicate_identifiers && (at(i_) == '?' || at(i_) == '!') &&
                at(i_ + 1) != '=' && !(at(i_) == '?' && at(i_ + 1) == ':')) {
                ++i_;
            }
            if (try_raw_string(begin)) {
                emit(begin, TokenKind::string, first_line, first_start);
                return;
            }
            emit(begin, TokenKind::identifier, first_line, first_start);
            return;
        }
        for (const auto op : kOperators) {
            if (starts(op)) {
                i_ += op.size();
                emit(begin, TokenKind::op, first_line, first_start);
                return;
            }
        }
        i_ += utf8_length(c);
        emit(begin, TokenKind::op, first_line, first_start);
    }

    void lex_number() {
        const bool hex = src_[i_] == '0' && (at(i_ + 1) == 'x' || at(i_ + 1) == 'X');
        while (i_ < src_.size()) {
            const auto ch = static_cast<unsigned char>(src_[i_]);
            if (std::isalnum(ch) != 0 || ch == '_') {
                ++i_;
                continue;
            }
            if (ch == '.' && at(i_ + 1) != '.') {
                ++i_;
                continue;
            }
            if ((ch == '+' || ch == '-') && i_ > 0) {
                const char prev = src_[i_ - 1];
                if ((!hex && (prev == 'e' || prev == 'E')) || (hex && (prev == 'p' || prev == 'P'))) {
                    ++i_;
                    continue;
                }
            }
            if (ch == '\'' && spec_ != nullptr && spec_->c_preprocessor &&
                std::isalnum(static_cast<unsigned char>(at(i_ + 1))) != 0) {
                ++i_;
                continue;
            }
            break;
        }
    }

    bool try_comment() {
        const auto c = src_[i_];
        if (at_line_start_ && i_ == line_start_) {
            for (const auto& [open, close] : spec_->line_start_blocks) {
                if (starts(open)) {
                    skip_line_start_block(close);
                    return true;
                }
            }
        }
        std::string_view best_open;
        std::string_view best_close;
        bool best_is_block = false;
        for (const auto& [open, close] : spec_->block_comments) {
            if (open.size() > best_open.size() && starts(open)) {
                best_open = open;
                best_close = close;
                best_is_block = true;
            }
        }
        for (const auto open : spec_->line_comments) {
            if (open.size() > best_open.size() && starts(open)) {
                if (open == "#" && !hash_comment_allowed()) {
                    continue;
                }
                best_open = open;
                best_is_block = false;
            }
        }
        if (best_open.empty()) {
            return false;
        }
        if (c == '#' && spec_->name == "PHP" && at(i_ + 1) == '[') {
            return false;
        }
        if (best_is_block) {
            const auto end = src_.find(best_close, i_ + best_open.size());
            const auto stop = end == std::string_view::npos ? src_.size() : end + best_close.size();
            const bool pp = in_pp_;
            consume_to(stop);
            in_pp_ = pp;
        } else {
            auto end = src_.find('\n', i_);
            while (spec_->c_preprocessor && end != std::string_view::npos && spliced(end)) {
                end = src_.find('\n', end + 1);
            }
            const bool pp = in_pp_;
            consume_to(end == std::string_view::npos ? src_.size() : end);
            in_pp_ = pp;
        }
        spaced_ = true;
        return true;
    }

    bool hash_comment_allowed() const {
        if (i_ == 0) {
            return true;
        }
        const char prev = src_[i_ - 1];
        if (prev == '$') {
            return false;
        }
        if (spec_->name == "Shell") {
            return prev == ' ' || prev == '\t' || prev == '\n' || prev == ';' || prev == '(' ||
                   prev == '|' || prev == '&';
        }
        return true;
    }

    void skip_line_start_block(std::string_view close) {
        // Ends after the line that starts with `close`.
        std::size_t pos = src_.find('\n', i_);
        while (pos != std::string_view::npos) {
            if (src_.substr(pos + 1, close.size()) == close) {
                const auto eol = src_.find('\n', pos + 1);
                consume_to(eol == std::string_view::npos ? src_.size() : eol);
                spaced_ = true;
                return;
            }
            pos = src_.find('\n', pos + 1);
        }
        consume_to(src_.size());
    }

    bool try_heredoc() {
        if (!spec_->heredocs) {
            return false;
        }
        const bool php = spec_->name == "PHP";
        const auto intro = php ? std::string_view("<<<") : std::string_view("<<");
        if (!starts(intro) || (!php && at(i_ + 2) == '<')) {
            return false;
        }
        std::size_t k = i_ + intro.size();
        const bool shell = spec_->name == "Shell";
        if (php || shell) {
            while (at(k) == ' ') {
                ++k;
            }
        }
        bool flexible = false;
        if (!php && (at(k) == '~' || at(k) == '-')) {
            flexible = true;
            ++k;
        }
        char quote = '\0';
        if (at(k) == '\'' || at(k) == '"') {
            quote = at(k);
            ++k;
        }
        const auto id_begin = k;
        while (k < src_.size() && ident_char(static_cast<unsigned char>(src_[k])) && src_[k] != '$') {
            ++k;
        }
        if (k == id_begin) {
            return false;
        }
        const auto first = static_cast<unsigned char>(src_[id_begin]);
        if (std::isdigit(first) != 0) {
            return false;
        }
        if (!php && !shell && quote == '\0' && !flexible && !(std::isupper(first) != 0 || first == '_')) {
            return false;
        }
        if (quote != '\0') {
            if (at(k) != quote) {
                return false;
            }
            ++k;
        }
        heredocs_.push_back(Heredoc{std::string(src_.substr(id_begin, k - id_begin - (quote ? 1 : 0)))});
        const auto begin = i_;
        const int first_line = line_;
        const auto first_start = line_start_;
        i_ = k;
        emit(begin, TokenKind::string, first_line, first_start);
        return true;
    }

    void read_heredoc_bodies() {
        // i_ is at the first character of the line after the introducer.
        while (!heredocs_.empty() && i_ < src_.size()) {
            const auto eol = src_.find('\n', i_);
            const auto end = eol == std::string_view::npos ? src_.size() : eol;
            const auto text = src_.substr(i_, end - i_);
            mark(line_);
            const auto& id = heredocs_.front().id;
            const auto t = trim(text);
            const bool php_tail = spec_->name == "PHP" && t.starts_with(id) &&
                                  (t.size() == id.size() || !ident_char(static_cast<unsigned char>(t[id.size()])));
            if (t == id || php_tail) {
                heredocs_.erase(heredocs_.begin());
                if (php_tail && t.size() > id.size()) {
                    // Continue lexing after the terminator on the same line.
                    i_ = static_cast<std::size_t>(t.data() - src_.data()) + id.size();
                    at_line_start_ = false;
                    return;
                }
            }
            if (eol == std::string_view::npos) {
                i_ = src_.size();
                return;
            }
            i_ = eol;
            newline();
            ++i_;
        }
    }

    bool try_string() {
        const auto c = src_[i_];
        const bool csharp_verbatim = spec_ != nullptr && spec_->name == "C#" && c == '@' && at(i_ + 1) == '"';
        if (csharp_verbatim) {
            scan_verbatim();
            return true;
        }
        const std::string_view quotes = spec_ != nullptr ? spec_->quotes : std::string_view("\"'");
        if (quotes.find(c) == std::string_view::npos) {
            return false;
        }
        if (c == '\'' && spec_ != nullptr && spec_->quote_transpose && !spaced_ && !out_.tokens.empty()) {
            const auto& prev = out_.tokens.back();
            if (prev.kind != TokenKind::op || prev.text == ")" || prev.text == "]" || prev.text == "}" ||
                prev.text == "'") {
                return false;
            }
        }
        if (c == '\'' && spec_ != nullptr && spec_->short_single_quote && !short_literal()) {
            return false;
        }
        const auto begin = i_;
        const int first_line = line_;
        const auto first_start = line_start_;
        const bool escapes = spec_ == nullptr || spec_->backslash_escapes;
        if (spec_ != nullptr && spec_->triple_quotes && at(i_ + 1) == c && at(i_ + 2) == c) {
            const std::string closer(3, c);
            std::size_t k = i_ + 3;
            while (k < src_.size() && src_.substr(k, 3) != closer) {
                k += (escapes && src_[k] == '\\') ? 2 : 1;
            }
            consume_to(k + 3);
            emit(begin, TokenKind::string, first_line, first_start);
            return true;
        }
        const bool backtick = c == '`';
        const bool multiline = backtick || spec_ == nullptr || spec_->multiline_strings;
        const bool go_raw = backtick && spec_ != nullptr && spec_->name == "Go";
        std::size_t k = i_ + 1;
        while (k < src_.size() && src_[k] != c) {
            if (src_[k] == '\n' && !multiline) {
                break;
            }
            if (escapes && !go_raw && src_[k] == '\\' && k + 1 < src_.size()) {
                if (src_[k + 1] == '\n' && !multiline) {
                    k += 2;
                    continue;
                }
                k += 2;
                continue;
            }
            ++k;
        }
        if (k < src_.size() && src_[k] == c) {
            ++k;
        }
        consume_to(k);
        emit(begin, TokenKind::string, first_line, first_start);
        return true;
    }

    bool short_literal() const {
        if (at(i_ + 1) == '\\') {
            for (std::size_t k = i_ + 3; k < std::min(src_.size(), i_ + 14); ++k) {
                if (src_[k] == '\'') {
                    return true;
                }
                if (src_[k] == '\n') {
                    return false;
                }
            }
            return false;
        }
        if (i_ + 1 >= src_.size() || src_[i_ + 1] == '\n' || src_[i_ + 1] == '\'') {
            return false;
        }
        const auto len = utf8_length(static_cast<unsigned char>(src_[i_ + 1]));
        return at(i_ + 1 + len) == '\'';
    }

    void scan_verbatim() {
        const auto begin = i_;
        const int first_line = line_;
        const auto first_start = line_start_;
        std::size_t k = i_ + 2;
        while (k < src_.size()) {
            if (src_[k] == '"') {
                if (at(k + 1) == '"') {
                    k += 2;
                    continue;
                }
                ++k;
                break;
            }
            ++k;
        }
        consume_to(k);
        emit(begin, TokenKind::string, first_line, first_start);
    }

    bool try_raw_string(std::size_t ident_begin) {
        if (spec_ == nullptr) {
            return false;
        }
        const auto ident = src_.substr(ident_begin, i_ - ident_begin);
        if (spec_->c_preprocessor && at(i_) == '"' &&
            (ident == "R" || ident == "u8R" || ident == "uR" || ident == "UR" || ident == "LR")) {
            const auto paren = src_.find('(', i_ + 1);
            if (paren == std::string_view::npos || paren - i_ > 17) {
                return false;
            }
            const std::string closer = ")" + std::string(src_.substr(i_ + 1, paren - i_ - 1)) + "\"";
            const auto end = src_.find(closer, paren + 1);
            consume_to(end == std::string_view::npos ? src_.size() : end + closer.size());
            return true;
        }
        if (spec_->name == "Rust" && (ident == "r" || ident == "br") && (at(i_) == '"' || at(i_) == '#')) {
            std::size_t k = i_;
            while (at(k) == '#') {
                ++k;
            }
            if (at(k) != '"') {
                return false;
            }
            const std::string closer = "\"" + std::string(k - i_, '#');
            const auto end = src_.find(closer, k + 1);
            consume_to(end == std::string_view::npos ? src_.size() : end + closer.size());
            return true;
        }
        return false;
    }

    std::string_view src_;
    const LanguageSpec* spec_;
    LexedSource out_;
    std::size_t i_ = 0;
    int line_ = 1;
    std::size_t line_start_ = 0;
    bool at_line_start_ = true;
    bool spaced_ = true;
    bool in_pp_ = false;
    std::vector<Heredoc> heredocs_;
};

}  // namespace

int count_physical_lines(std::string_view source) {
    if (source.empty()) {
        return 0;
    }
    const auto newlines = static_cast<int>(std::count(source.begin(), source.end(), '\n'));
    return source.back() == '\n' ? newlines : newlines + 1;
}

LexedSource lex(std::string_view source, const LanguageSpec* spec) {
    return Lexer(source, spec).run();
}

}  // namespace cvefix
