// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/methods.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace cvefix {

std::string MethodSpan::signature() const {
    std::string out = name + "(";
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += parameters[i];
    }
    return out + ")";
}

namespace {

using Tokens = std::vector<Token>;

bool is(const Token& t, std::string_view text) {
    return t.text == text;
}

bool is_ident(const Token& t) {
    return t.kind == TokenKind::identifier;
}

std::string join_tokens(const Tokens& toks, const std::vector<std::size_t>& idx, std::size_t b,
                        std::size_t e) {
    std::string out;
    for (std::size_t k = b; k < e; ++k) {
        const auto& t = toks[idx[k]];
        if (k > b && t.spaced) {
            out += ' ';
        }
        out += t.text;
    }
    return out;
}

// Split the tokens strictly between open and close (positions in idx) at top-level commas.
std::vector<std::string> split_parameters(const Tokens& toks, const std::vector<std::size_t>& idx,
                                          std::size_t open, std::size_t close) {
    std::vector<std::string> params;
    int depth = 0;
    int angle = 0;
    std::size_t start = open + 1;
    for (std::size_t k = open + 1; k <= close; ++k) {
        const auto& t = toks[idx[k]];
        const bool last = k == close;
        if (!last) {
            if (is(t, "(") || is(t, "[") || is(t, "{")) {
                ++depth;
            } else if (is(t, ")") || is(t, "]") || is(t, "}")) {
                --depth;
            } else if (is(t, "<")) {
                ++angle;
            } else if (is(t, ">")) {
                angle = std::max(0, angle - 1);
            } else if (is(t, ">>")) {
                angle = std::max(0, angle - 2);
            }
        }
        if (last || (depth == 0 && angle == 0 && is(t, ","))) {
            if (k > start) {
                params.push_back(join_tokens(toks, idx, start, k));
            }
            start = k + 1;
        }
    }
    return params;
}

// ---------------------------------------------------------------------------------------------
// Brace languages

const std::set<std::string_view> kNotFunctionNames{
    "if",        "for",       "while",      "switch",     "catch",       "return",  "sizeof",
    "elif",      "elseif",    "foreach",    "using",      "lock",        "fixed",   "synchronized",
    "typeof",    "decltype",  "alignof",    "alignas",    "noexcept",    "do",      "with",
    "new",       "delete",    "throw",      "case",       "defined",     "__attribute__",
    "__declspec", "static_assert", "_Static_assert", "when", "guard",     "match",   "loop",
    "in",        "and",       "or",         "not",        "assert",      "await",   "yield",
    "typeid",    "_Generic",  "__typeof__", "asm",        "__asm__",     "else",    "try",
    "is",        "as",        "instanceof", "go",         "defer",       "select",  "super",
    "this",      "unless",    "until",      "function",   "func",        "fn",      "fun",
    "throws",    "where",     "requires",   "volatile",   "__asm",       "__typeof", "print",
    "echo",      "include",   "require",    "require_once", "include_once", "list",  "array",
    "isset",     "empty",     "unset",      "exit",       "die",         "eval",    "match"};

const std::set<std::string_view> kTypeDeclKeywords{"class", "interface", "record", "trait", "impl"};

bool c_like_language(const LanguageSpec& spec) {
    return spec.name == "C" || spec.name == "C++" || spec.name == "Objective-C";
}

bool js_like(const LanguageSpec& spec) {
    return spec.name == "JavaScript" || spec.name == "TypeScript";
}

bool asi_language(const LanguageSpec& spec) {
    return spec.name == "Kotlin" || spec.name == "Swift" || spec.name == "Go" || spec.name == "Scala" ||
           js_like(spec) || spec.name == "Groovy";
}

class BraceScanner {
public:
    BraceScanner(const LexedSource& lexed, const LanguageSpec& spec)
        : toks_(lexed.tokens), spec_(spec) {
        select_active_tokens();
        match_brackets();
    }

    MethodScan run() {
        MethodScan scan;
        std::size_t stmt_start = 0;
        std::optional<Candidate> cand;
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            const auto& t = tok(p);
            if (asi_language(spec_) && p > 0 && is_ident(t) && t.line > tok(p - 1).line) {
                const auto& prev = tok(p - 1);
                if (prev.kind != TokenKind::op || is(prev, ")") || is(prev, "]") || is(prev, "}")) {
                    stmt_start = p;
                    cand.reset();
                }
            }
            if (is(t, ";")) {
                stmt_start = p + 1;
                cand.reset();
                continue;
            }
            if (is(t, "}")) {
                stmt_start = p + 1;
                cand.reset();
                continue;
            }
            if (is(t, "(")) {
                if (cand && match_[cand->open] != kNone && p < match_[cand->open]) {
                    continue;
                }
                if (auto c = candidate_at(p, stmt_start)) {
                    if (match_[p] == kNone) {
                        scan.problem = fmt::format("unbalanced parentheses at line {}", t.line);
                        return scan;
                    }
                    cand = c;
                }
                continue;
            }
            if (!is(t, "{")) {
                continue;
            }
            if (match_[p] == kNone) {
                scan.problem = fmt::format("unbalanced braces at line {}", t.line);
                return scan;
            }
            if (cand && init_list_brace(*cand, p)) {
                p = match_[p];
                continue;
            }
            std::optional<MethodSpan> found;
            if (cand && match_[cand->open] < p && trailer_ok(match_[cand->open], p)) {
                found = make_span(*cand, p);
            } else if (js_like(spec_) && p > 0 && is(tok(p - 1), "=>")) {
                found = arrow_span(p);
            }
            if (found) {
                scan.methods.push_back(std::move(*found));
                p = match_[p];
                stmt_start = p + 1;
                cand.reset();
                continue;
            }
            stmt_start = p + 1;
            cand.reset();
        }
        return scan;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    struct Candidate {
        std::string name;
        std::size_t name_pos;
        std::size_t open;
    };

    const Token& tok(std::size_t p) const { return toks_[idx_[p]]; }

    void select_active_tokens() {
        // Keep the first branch of each preprocessor conditional.
        std::vector<bool> skipping;
        for (std::size_t k = 0; k < toks_.size(); ++k) {
            const auto& t = toks_[k];
            if (!t.preprocessor) {
                if (skipping.empty() || !skipping.back()) {
                    idx_.push_back(k);
                }
                continue;
            }
            const bool directive_start =
                is(t, "#") && (k == 0 || !toks_[k - 1].preprocessor || toks_[k - 1].end_line < t.line);
            if (!directive_start || k + 1 >= toks_.size() || !toks_[k + 1].preprocessor ||
                toks_[k + 1].line != t.line) {
                continue;
            }
            const auto directive = toks_[k + 1].text;
            if (directive == "if" || directive == "ifdef" || directive == "ifndef") {
                skipping.push_back(!skipping.empty() && skipping.back());
            } else if (directive == "else" || directive == "elif" || directive == "elifdef" ||
                       directive == "elifndef") {
                if (!skipping.empty()) {
                    skipping.back() = true;
                }
            } else if (directive == "endif" && !skipping.empty()) {
                skipping.pop_back();
            }
        }
    }

    void match_brackets() {
        match_.assign(idx_.size(), kNone);
        std::vector<std::size_t> stack;
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            const auto& t = tok(p);
            if (is(t, "(") || is(t, "{") || is(t, "[")) {
                stack.push_back(p);
            } else if (is(t, ")") || is(t, "}") || is(t, "]")) {
                const char want = is(t, ")") ? '(' : is(t, "}") ? '{' : '[';
                // Pop unmatched openers of other kinds (tolerates stray brackets).
                auto it = std::find_if(stack.rbegin(), stack.rend(),
                                       [&](std::size_t q) { return tok(q).text[0] == want; });
                if (it == stack.rend()) {
                    continue;
                }
                const auto q = *it;
                stack.erase(std::next(it).base(), stack.end());
                match_[q] = p;
                match_[p] = q;
            }
        }
    }

    std::size_t match_back_angle(std::size_t p) const {
        // p points at '>' or '>>'; returns the position of the matching '<' or kNone.
        int need = 0;
        for (std::size_t q = p + 1; q-- > 0;) {
            const auto& t = tok(q);
            if (is(t, ">")) {
                ++need;
            } else if (is(t, ">>")) {
                need += 2;
            } else if (is(t, "<")) {
                if (--need == 0) {
                    return q;
                }
            } else if (is(t, ";") || is(t, "{") || is(t, "}")) {
                return kNone;
            }
        }
        return kNone;
    }

    std::optional<Candidate> candidate_at(std::size_t p, std::size_t stmt_start) const {
        if (p == 0 || p <= stmt_start) {
            return std::nullopt;
        }
        std::size_t q = p - 1;
        // operator overloads
        for (std::size_t back = 1; back <= 3 && back <= p; ++back) {
            const auto& t = tok(p - back);
            if (is(t, "operator")) {
                if (back == 1 && p + 2 < idx_.size() && is(tok(p + 1), ")") && is(tok(p + 2), "(")) {
                    return std::nullopt;
                }
                std::string name = "operator";
                for (std::size_t k = p - back + 1; k < p; ++k) {
                    name += (is_ident(tok(k)) ? " " : "") + std::string(tok(k).text);
                }
                return finish_candidate(std::move(name), p - back, p, stmt_start);
            }
            if (!(t.kind == TokenKind::op || is_ident(t)) || is(t, ";") || is(t, "{") || is(t, "}")) {
                break;
            }
        }
        if (is(tok(q), ">") || is(tok(q), ">>")) {
            if (c_like_language(spec_)) {
                return std::nullopt;
            }
            const auto lt = match_back_angle(q);
            if (lt == kNone || lt == 0) {
                return std::nullopt;
            }
            q = lt - 1;
        }
        if (js_like(spec_) && (is(tok(q), "function") || (is(tok(q), "*") && q > 0 && is(tok(q - 1), "function")))) {
            return js_function_expression(is(tok(q), "*") ? q - 1 : q, stmt_start);
        }
        const auto& name_tok = tok(q);
        if (!is_ident(name_tok) || name_tok.text.starts_with('@') || kNotFunctionNames.contains(name_tok.text)) {
            return std::nullopt;
        }
        if (q > 0 && (is(tok(q - 1), "new") || is(tok(q - 1), ".") || is(tok(q - 1), "->") ||
                      is(tok(q - 1), "?."))) {
            return std::nullopt;
        }
        std::string name(name_tok.text);
        std::size_t first = q;
        if (first > 0 && is(tok(first - 1), "~")) {
            name = "~" + name;
            --first;
        }
        while (first >= 2 && is(tok(first - 1), "::") && is_ident(tok(first - 2))) {
            name = std::string(tok(first - 2).text) + "::" + name;
            first -= 2;
        }
        return finish_candidate(std::move(name), first, p, stmt_start);
    }

    std::optional<Candidate> js_function_expression(std::size_t fn, std::size_t stmt_start) const {
        std::size_t k = fn;
        if (k > 0 && is(tok(k - 1), "async")) {
            --k;
        }
        if (k < 2 || !(is(tok(k - 1), "=") || is(tok(k - 1), ":")) || !is_ident(tok(k - 2))) {
            return std::nullopt;
        }
        const auto open = fn + (is(tok(fn + 1), "*") ? 2 : 1);
        return finish_candidate(std::string(tok(k - 2).text), k - 2, open, stmt_start);
    }

    std::optional<Candidate> finish_candidate(std::string name, std::size_t first, std::size_t open,
                                              std::size_t stmt_start) const {
        for (std::size_t k = stmt_start; k < first; ++k) {
            const auto& t = tok(k);
            if (is_ident(t) && (kTypeDeclKeywords.contains(t.text) ||
                                (t.text == "object" && (spec_.name == "Kotlin" || spec_.name == "Scala")))) {
                return std::nullopt;
            }
        }
        return Candidate{std::move(name), first, open};
    }

    bool trailer_ok(std::size_t close, std::size_t brace) const {
        for (std::size_t k = close + 1; k < brace; ++k) {
            const auto& t = tok(k);
            if (is(t, "=")) {
                const bool expr_body = (spec_.name == "Scala" || spec_.name == "Kotlin") && k + 1 == brace;
                if (!expr_body) {
                    return false;
                }
            }
            if (is_ident(t) && (kTypeDeclKeywords.contains(t.text) || t.text == "struct" || t.text == "enum")) {
                return false;
            }
            if (is(t, "=>") && !js_like(spec_)) {
                return false;
            }
            if (is(t, "(") && match_[k] != kNone) {
                k = match_[k];
            }
        }
        return true;
    }

    bool init_list_brace(const Candidate& c, std::size_t brace) const {
        if (spec_.name != "C++" || brace == 0) {
            return false;
        }
        const auto close = match_[c.open];
        if (close == kNone || close >= brace) {
            return false;
        }
        bool colon = false;
        for (std::size_t k = close + 1; k < brace; ++k) {
            if (is(tok(k), ":")) {
                colon = true;
                break;
            }
        }
        const auto& prev = tok(brace - 1);
        return colon && (is_ident(prev) || is(prev, ">")) && !is(prev, "try");
    }

    MethodSpan make_span(const Candidate& c, std::size_t brace) const {
        MethodSpan m;
        m.name = c.name;
        const auto close = match_[c.open];
        m.parameters = split_parameters(toks_, idx_, c.open, close);
        if (c_like_language(spec_) && m.parameters.size() == 1 && m.parameters[0] == "void") {
            m.parameters.clear();
        }
        m.first_token = idx_[c.name_pos];
        m.body_begin = idx_[close] + 1;
        m.last_token = idx_[match_[brace]];
        m.start_line = toks_[m.first_token].line;
        m.end_line = toks_[m.last_token].end_line;
        return m;
    }

    std::optional<MethodSpan> arrow_span(std::size_t brace) const {
        const std::size_t arrow = brace - 1;
        std::size_t open = kNone;
        std::size_t close = kNone;
        std::size_t before = kNone;
        if (arrow == 0) {
            return std::nullopt;
        }
        if (is_ident(tok(arrow - 1)) && !(arrow >= 2 && is(tok(arrow - 2), ":"))) {
            before = arrow >= 2 ? arrow - 2 : kNone;
            open = arrow - 1;
            close = arrow - 1;
        } else {
            for (std::size_t k = arrow; k-- > 0 && arrow - k <= 12;) {
                if (is(tok(k), ")") && match_[k] != kNone &&
                    (k + 1 == arrow || is(tok(k + 1), ":"))) {
                    close = k;
                    open = match_[k];
                    break;
                }
            }
            if (open == kNone || open == 0) {
                return std::nullopt;
            }
            before = open - 1;
        }
        if (before != kNone && is(tok(before), "async") && before > 0) {
            --before;
        }
        if (before == kNone || before == 0 || !(is(tok(before), "=") || is(tok(before), ":"))) {
            return std::nullopt;
        }
        const auto& name_tok = tok(before - 1);
        if (!is_ident(name_tok)) {
            return std::nullopt;
        }
        MethodSpan m;
        m.name = std::string(name_tok.text);
        if (open == close) {
            m.parameters = {std::string(tok(open).text)};
        } else {
            m.parameters = split_parameters(toks_, idx_, open, close);
        }
        m.first_token = idx_[before - 1];
        m.body_begin = idx_[arrow];
        m.last_token = idx_[match_[brace]];
        m.start_line = name_tok.line;
        m.end_line = toks_[m.last_token].end_line;
        return m;
    }

    const Tokens& toks_;
    const LanguageSpec& spec_;
    std::vector<std::size_t> idx_;
    std::vector<std::size_t> match_;
};

// ---------------------------------------------------------------------------------------------
// Python

class PythonScanner {
public:
    explicit PythonScanner(const LexedSource& lexed) : toks_(lexed.tokens) {
        logical_start_.assign(toks_.size(), false);
        int depth = 0;
        int prev_line = 0;
        for (std::size_t k = 0; k < toks_.size(); ++k) {
            const auto& t = toks_[k];
            if (t.line != prev_line && depth == 0) {
                logical_start_[k] = true;
            }
            prev_line = t.end_line;
            if (is(t, "(") || is(t, "[") || is(t, "{")) {
                ++depth;
            } else if (is(t, ")") || is(t, "]") || is(t, "}")) {
                depth = std::max(0, depth - 1);
            }
        }
        for (std::size_t k = 0; k < toks_.size(); ++k) {
            all_.push_back(k);
        }
    }

    MethodScan run() {
        MethodScan scan;
        std::size_t k = 0;
        while (k < toks_.size()) {
            const auto& t = toks_[k];
            const bool def_start = is(t, "def") && (logical_start_[k] ||
                                                    (k > 0 && is(toks_[k - 1], "async") && logical_start_[k - 1]));
            if (!def_start) {
                ++k;
                continue;
            }
            const std::size_t head = logical_start_[k] ? k : k - 1;
            if (k + 2 >= toks_.size() || !is_ident(toks_[k + 1])) {
                scan.problem = fmt::format("malformed def at line {}", t.line);
                return scan;
            }
            std::size_t open = k + 2;
            if (is(toks_[open], "[")) {
                open = skip_group(open, "[", "]") + 1;
            }
            if (open >= toks_.size() || !is(toks_[open], "(")) {
                scan.problem = fmt::format("malformed def at line {}", t.line);
                return scan;
            }
            const auto close = skip_group(open, "(", ")");
            if (close >= toks_.size()) {
                scan.problem = fmt::format("unbalanced parentheses at line {}", t.line);
                return scan;
            }
            std::size_t colon = close + 1;
            while (colon < toks_.size() && !is(toks_[colon], ":")) {
                if (is(toks_[colon], "(") || is(toks_[colon], "[")) {
                    colon = skip_group(colon, toks_[colon].text, is(toks_[colon], "(") ? ")" : "]");
                }
                ++colon;
            }
            if (colon >= toks_.size()) {
                scan.problem = fmt::format("def without body at line {}", t.line);
                return scan;
            }
            const int indent = toks_[head].column;
            std::size_t last = colon;
            if (colon + 1 < toks_.size() && toks_[colon + 1].line == toks_[colon].end_line) {
                std::size_t n = colon + 1;
                while (n < toks_.size() && !logical_start_[n]) {
                    last = n++;
                }
            } else {
                std::size_t n = colon + 1;
                while (n < toks_.size() && !(logical_start_[n] && toks_[n].column <= indent)) {
                    last = n++;
                }
            }
            MethodSpan m;
            m.name = std::string(toks_[k + 1].text);
            m.parameters = split_parameters(toks_, all_, open, close);
            m.first_token = k + 1;
            m.body_begin = close + 1;
            m.last_token = last;
            m.start_line = toks_[k + 1].line;
            m.end_line = toks_[last].end_line;
            scan.methods.push_back(std::move(m));
            k = last + 1;
        }
        return scan;
    }

private:
    std::size_t skip_group(std::size_t open, std::string_view o, std::string_view c) const {
        int depth = 0;
        for (std::size_t k = open; k < toks_.size(); ++k) {
            if (toks_[k].text == o) {
                ++depth;
            } else if (toks_[k].text == c && --depth == 0) {
                return k;
            }
        }
        return toks_.size();
    }

    const Tokens& toks_;
    std::vector<bool> logical_start_;
    std::vector<std::size_t> all_;
};

// ---------------------------------------------------------------------------------------------
// Ruby

const std::set<std::string_view> kRubyOpeners{"class", "module", "def",   "if",  "unless", "while",
                                              "until", "case",   "begin", "for", "do"};
const std::set<std::string_view> kRubyModifiable{"if", "unless", "while", "until"};
const std::set<std::string_view> kRubyOpenerContext{"then", "else", "do", "and", "or",
                                                    "not", "begin", "elsif", "when", "in"};

class RubyScanner {
public:
    explicit RubyScanner(const LexedSource& lexed) : toks_(lexed.tokens) {
        for (std::size_t k = 0; k < toks_.size(); ++k) {
            all_.push_back(k);
        }
    }

    MethodScan run() {
        MethodScan scan;
        std::size_t k = 0;
        while (k < toks_.size()) {
            if (!keyword(k, "def")) {
                ++k;
                continue;
            }
            auto m = parse_def(k, scan);
            if (!m) {
                return scan;
            }
            k = m->last_token + 1;
            scan.methods.push_back(std::move(*m));
        }
        return scan;
    }

private:
    bool keyword(std::size_t k, std::string_view word) const {
        const auto& t = toks_[k];
        if (!is_ident(t) || t.text != word) {
            return false;
        }
        if (k > 0) {
            const auto& prev = toks_[k - 1];
            if (is(prev, ".") || is(prev, "&.") || is(prev, "::") || (is(prev, ":") && !t.spaced)) {
                return false;
            }
        }
        if (k + 1 < toks_.size() && is(toks_[k + 1], ":") && !toks_[k + 1].spaced) {
            return false;
        }
        return true;
    }

    bool opens_block(std::size_t k) const {
        const auto& t = toks_[k];
        if (!kRubyOpeners.contains(t.text) || !keyword(k, t.text)) {
            return false;
        }
        if (!kRubyModifiable.contains(t.text) || k == 0) {
            return true;
        }
        const auto& prev = toks_[k - 1];
        if (prev.end_line != t.line) {
            return true;
        }
        if (prev.kind == TokenKind::op) {
            return !(is(prev, ")") || is(prev, "]") || is(prev, "}"));
        }
        if (prev.kind == TokenKind::identifier) {
            return kRubyOpenerContext.contains(prev.text);
        }
        return false;
    }

    std::optional<MethodSpan> parse_def(std::size_t def, MethodScan& scan) const {
        const int line = toks_[def].line;
        std::size_t k = def + 1;
        if (k >= toks_.size() || toks_[k].line != line) {
            scan.problem = fmt::format("malformed def at line {}", line);
            return std::nullopt;
        }
        std::string name;
        const std::size_t name_pos = k;
        if (is_ident(toks_[k])) {
            name = std::string(toks_[k].text);
            ++k;
            if (k + 1 < toks_.size() && is(toks_[k], ".") && !toks_[k].spaced) {
                name += "." + std::string(toks_[k + 1].text);
                k += 2;
            }
            if (k < toks_.size() && is(toks_[k], "=") && !toks_[k].spaced && k + 1 < toks_.size() &&
                is(toks_[k + 1], "(")) {
                name += "=";
                ++k;
            }
        } else {
            while (k < toks_.size() && toks_[k].line == line && !is(toks_[k], "(") &&
                   (k == name_pos || !toks_[k].spaced)) {
                name += toks_[k].text;
                ++k;
            }
        }
        std::vector<std::string> params;
        std::size_t sig_end = k;  // first token after the signature
        if (k < toks_.size() && is(toks_[k], "(") && toks_[k].line == line) {
            int depth = 0;
            std::size_t close = k;
            for (; close < toks_.size(); ++close) {
                if (is(toks_[close], "(")) {
                    ++depth;
                } else if (is(toks_[close], ")") && --depth == 0) {
                    break;
                }
            }
            if (close >= toks_.size()) {
                scan.problem = fmt::format("unbalanced parentheses at line {}", line);
                return std::nullopt;
            }
            params = split_parameters(toks_, all_, k, close);
            sig_end = close + 1;
        } else {
            std::size_t e = k;
            while (e < toks_.size() && toks_[e].line == line && !is(toks_[e], ";")) {
                ++e;
            }
            if (e > k) {
                // Bare parameter list: treat [k, e) as if parenthesized.
                std::vector<std::size_t> idx;
                idx.push_back(0);
                for (std::size_t q = k; q < e; ++q) {
                    idx.push_back(q);
                }
                idx.push_back(0);
                params = split_parameters(toks_, idx, 0, idx.size() - 1);
            }
            sig_end = e;
        }
        MethodSpan m;
        m.name = name;
        m.parameters = std::move(params);
        m.first_token = name_pos;
        m.body_begin = sig_end;
        m.start_line = toks_[name_pos].line;
        if (sig_end < toks_.size() && is(toks_[sig_end], "=") && toks_[sig_end].line == toks_[sig_end - 1].end_line) {
            std::size_t last = sig_end;
            while (last + 1 < toks_.size() && toks_[last + 1].line == toks_[sig_end].line) {
                ++last;
            }
            m.last_token = last;
            m.end_line = toks_[last].end_line;
            return m;
        }
        int depth = 1;
        int loop_line = -1;
        for (std::size_t q = sig_end; q < toks_.size(); ++q) {
            const auto& t = toks_[q];
            if (keyword(q, "end")) {
                if (--depth == 0) {
                    m.last_token = q;
                    m.end_line = t.end_line;
                    return m;
                }
                continue;
            }
            if (!opens_block(q)) {
                continue;
            }
            if (t.text == "do" && loop_line == t.line) {
                loop_line = -1;
                continue;
            }
            if (t.text == "while" || t.text == "until" || t.text == "for") {
                loop_line = t.line;
            }
            ++depth;
        }
        scan.problem = fmt::format("def at line {} has no matching end", line);
        return std::nullopt;
    }

    const Tokens& toks_;
    std::vector<std::size_t> all_;
};

}  // namespace

MethodScan find_methods(const LexedSource& lexed, const LanguageSpec& spec) {
    switch (spec.methods) {
        case MethodSyntax::braces:
            return BraceScanner(lexed, spec).run();
        case MethodSyntax::python:
            return PythonScanner(lexed).run();
        case MethodSyntax::ruby:
            return RubyScanner(lexed).run();
        case MethodSyntax::none:
            break;
    }
    return {};
}

}  // namespace cvefix
