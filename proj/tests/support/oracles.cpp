// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace cvefix::testing {

namespace {

struct Token {
    std::string text;
    bool newline = true;
    friend bool operator==(const Token&, const Token&) = default;
};

std::vector<Token> tokens_of(std::string_view text) {
    std::vector<Token> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            out.push_back({std::string(text.substr(pos)), false});
            break;
        }
        out.push_back({std::string(text.substr(pos, nl - pos)), true});
        pos = nl + 1;
    }
    return out;
}

enum class Op { keep, del, add };

struct Edit {
    Op op;
    int a;  // index into before (keep/del)
    int b;  // index into after (keep/add)
};

std::vector<Edit> lcs_script(const std::vector<Token>& a, const std::vector<Token>& b) {
    const auto n = a.size();
    const auto m = b.size();
    std::vector<std::vector<int>> L(n + 1, std::vector<int>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            L[i][j] = a[i] == b[j] ? L[i + 1][j + 1] + 1 : std::max(L[i + 1][j], L[i][j + 1]);
        }
    }
    std::vector<Edit> script;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && a[i] == b[j] && L[i][j] == L[i + 1][j + 1] + 1) {
            script.push_back({Op::keep, static_cast<int>(i), static_cast<int>(j)});
            ++i;
            ++j;
        } else if (i < n && (j == m || L[i + 1][j] >= L[i][j + 1])) {
            script.push_back({Op::del, static_cast<int>(i), static_cast<int>(j)});
            ++i;
        } else {
            script.push_back({Op::add, static_cast<int>(i), static_cast<int>(j)});
            ++j;
        }
    }
    return script;
}

std::string range(int start, int count, bool terse) {
    if (count == 1 && terse) {
        return std::to_string(start);
    }
    return fmt::format("{},{}", start, count);
}

}  // namespace

OracleDiff lcs_diff(std::string_view before, std::string_view after, int context, bool terse_counts) {
    const auto a = tokens_of(before);
    const auto b = tokens_of(after);
    const auto script = lcs_script(a, b);
    OracleDiff out;
    for (const auto& e : script) {
        if (e.op == Op::del) {
            out.deleted.push_back({e.a + 1, a[static_cast<std::size_t>(e.a)].text});
        } else if (e.op == Op::add) {
            out.added.push_back({e.b + 1, b[static_cast<std::size_t>(e.b)].text});
        }
    }
    if (out.added.empty() && out.deleted.empty()) {
        return out;
    }
    out.unified = "--- a/file\n+++ b/file\n";

    // Group edits into hunks: changes closer than 2*context share a hunk.
    std::vector<std::size_t> changes;
    for (std::size_t k = 0; k < script.size(); ++k) {
        if (script[k].op != Op::keep) {
            changes.push_back(k);
        }
    }
    std::size_t c = 0;
    while (c < changes.size()) {
        std::size_t first = changes[c];
        std::size_t last = changes[c];
        while (c + 1 < changes.size() && changes[c + 1] - last <= static_cast<std::size_t>(2 * context)) {
            last = changes[++c];
        }
        ++c;
        const std::size_t begin = first >= static_cast<std::size_t>(context) ? first - context : 0;
        const std::size_t end = std::min(script.size(), last + 1 + context);
        int a_start = 0;
        int b_start = 0;
        int a_count = 0;
        int b_count = 0;
        std::string body;
        bool have_a = false;
        bool have_b = false;
        for (std::size_t k = begin; k < end; ++k) {
            const auto& e = script[k];
            const auto emit = [&](char mark, const Token& t) {
                body += mark;
                body += t.text;
                body += '\n';
                if (!t.newline) {
                    body += "\\ No newline at end of file\n";
                }
            };
            if (e.op != Op::add) {
                if (!have_a) {
                    a_start = e.a + 1;
                    have_a = true;
                }
                ++a_count;
            }
            if (e.op != Op::del) {
                if (!have_b) {
                    b_start = e.b + 1;
                    have_b = true;
                }
                ++b_count;
            }
            switch (e.op) {
                case Op::keep:
                    emit(' ', a[static_cast<std::size_t>(e.a)]);
                    break;
                case Op::del:
                    emit('-', a[static_cast<std::size_t>(e.a)]);
                    break;
                case Op::add:
                    emit('+', b[static_cast<std::size_t>(e.b)]);
                    break;
            }
        }
        // An empty side is anchored at the line before the hunk.
        if (!have_a) {
            a_start = script[begin].a;
        }
        if (!have_b) {
            b_start = script[begin].b;
        }
        out.unified += fmt::format("@@ -{} +{} @@\n", range(a_start, a_count, terse_counts),
                                   range(b_start, b_count, terse_counts));
        out.unified += body;
    }
    return out;
}

std::string random_text(std::mt19937& rng) {
    static const std::vector<std::string> vocabulary{
        "int x = 0;", "return x;", "}", "{", "", "    if (x) {", "x += 1;", "// note", "\tcall();", "caf\xc3\xa9",
        "end", "  ", "line with trailing space ", "a,b,c", "#include <stdio.h>", "win\r"};
    std::uniform_int_distribution<int> len(0, 30);
    std::uniform_int_distribution<std::size_t> pick(0, vocabulary.size() - 1);
    std::bernoulli_distribution final_newline(0.8);
    const int n = len(rng);
    std::string out;
    for (int i = 0; i < n; ++i) {
        out += vocabulary[pick(rng)];
        out += '\n';
    }
    if (!out.empty() && !final_newline(rng)) {
        out.pop_back();
        if (out.empty() || out.back() == '\n') {
            out += "tail";
        }
    }
    return out;
}

std::string mutate_text(std::string_view text, std::mt19937& rng) {
    auto lines = tokens_of(text);
    const bool had_final = lines.empty() || lines.back().newline;
    std::vector<std::string> out;
    for (const auto& t : lines) {
        out.push_back(t.text);
    }
    std::mt19937 local(rng());
    std::uniform_int_distribution<int> edits(0, 6);
    const auto other = tokens_of(random_text(local));
    const int n = edits(rng);
    for (int k = 0; k < n; ++k) {
        std::uniform_int_distribution<int> kind(0, 2);
        const int what = kind(rng);
        if (what == 0 && !out.empty()) {
            std::uniform_int_distribution<std::size_t> at(0, out.size() - 1);
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(at(rng)));
        } else if (what == 1 || out.empty()) {
            std::uniform_int_distribution<std::size_t> at(0, out.size());
            const std::string fresh = other.empty() ? std::string("new") : other[k % other.size()].text;
            out.insert(out.begin() + static_cast<std::ptrdiff_t>(at(rng)), fresh);
        } else {
            std::uniform_int_distribution<std::size_t> at(0, out.size() - 1);
            out[at(rng)] += " changed";
        }
    }
    std::bernoulli_distribution flip(0.15);
    bool final = had_final;
    if (flip(rng)) {
        final = !final;
    }
    std::string result;
    for (std::size_t i = 0; i < out.size(); ++i) {
        result += out[i];
        if (i + 1 < out.size() || final) {
            result += '\n';
        }
    }
    if (!final && !out.empty() && out.back().empty()) {
        result += "x";
    }
    return result;
}

int c_family_nloc(std::string_view s) {
    enum class State { code, line_comment, block_comment, string, chr };
    State state = State::code;
    int count = 0;
    bool line_has_code = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const char next = i + 1 < s.size() ? s[i + 1] : '\0';
        if (c == '\n') {
            count += line_has_code ? 1 : 0;
            line_has_code = false;
            if (state == State::line_comment) {
                state = State::code;
            }
            continue;
        }
        // Backslash-newline splices lines: neither character is code, and a line comment goes on.
        if (c == '\\' && next == '\n' && (state == State::code || state == State::line_comment)) {
            count += line_has_code ? 1 : 0;
            line_has_code = false;
            ++i;
            continue;
        }
        switch (state) {
            case State::code:
                if (c == '/' && next == '/') {
                    state = State::line_comment;
                    ++i;
                } else if (c == '/' && next == '*') {
                    state = State::block_comment;
                    ++i;
                } else if (c == '"') {
                    state = State::string;
                    line_has_code = true;
                } else if (c == '\'') {
                    state = State::chr;
                    line_has_code = true;
                } else if (c != ' ' && c != '\t' && c != '\r' && c != '\f' && c != '\v') {
                    line_has_code = true;
                }
                break;
            case State::line_comment:
                break;
            case State::block_comment:
                if (c == '*' && next == '/') {
                    state = State::code;
                    ++i;
                }
                break;
            case State::string:
            case State::chr:
                line_has_code = true;
                if (c == '\\') {
                    ++i;
                    if (i < s.size() && s[i] == '\n') {
                        count += 1;
                    }
                } else if ((state == State::string && c == '"') || (state == State::chr && c == '\'')) {
                    state = State::code;
                }
                break;
        }
    }
    return count + (line_has_code ? 1 : 0);
}

const std::vector<std::string>& generated_languages() {
    static const std::vector<std::string> langs{"C",     "C++",  "Java",   "JavaScript", "TypeScript", "Go",
                                                "C#",    "PHP",  "Python", "Ruby",       "Kotlin",     "Swift",
                                                "Scala", "Rust", "Dart"};
    return langs;
}

std::string generated_function(std::string_view language, int ifs, std::mt19937& rng) {
    std::uniform_int_distribution<int> filler(0, 3);
    std::uniform_int_distribution<int> value(1, 99);
    const std::string lang(language);
    const bool python = lang == "Python";
    const bool ruby = lang == "Ruby";
    std::string head;
    std::string tail;
    std::string indent = "    ";
    std::string assign_fmt;
    std::string if_open_fmt;
    std::string if_close;
    if (lang == "C" || lang == "C++") {
        head = "int compute(int x) {\n    int y = 0;\n";
        tail = "    return y;\n}\n";
        assign_fmt = "y = y + {};";
        if_open_fmt = "if (x > {}) {{";
        if_close = "}";
    } else if (lang == "Java" || lang == "C#") {
        head = "class Gen {\n    public int compute(int x) {\n        int y = 0;\n";
        tail = "        return y;\n    }\n}\n";
        indent = "        ";
        assign_fmt = "y = y + {};";
        if_open_fmt = "if (x > {}) {{";
        if_close = "}";
    } else if (lang == "JavaScript" || lang == "TypeScript" || lang == "Dart") {
        head = lang == "TypeScript" ? "function compute(x: number): number {\n    let y = 0;\n"
               : lang == "Dart"     ? "int compute(int x) {\n    var y = 0;\n"
                                    : "function compute(x) {\n    let y = 0;\n";
        tail = "    return y;\n}\n";
        assign_fmt = "y = y + {};";
        if_open_fmt = "if (x > {}) {{";
        if_close = "}";
    } else if (lang == "Go") {
        head = "package gen\n\nfunc compute(x int) int {\n    y := 0\n";
        tail = "    return y\n}\n";
        assign_fmt = "y = y + {}";
        if_open_fmt = "if x > {} {{";
        if_close = "}";
    } else if (lang == "PHP") {
        head = "<?php\nfunction compute($x) {\n    $y = 0;\n";
        tail = "    return $y;\n}\n";
        assign_fmt = "$y = $y + {};";
        if_open_fmt = "if ($x > {}) {{";
        if_close = "}";
    } else if (lang == "Kotlin") {
        head = "fun compute(x: Int): Int {\n    var y = 0\n";
        tail = "    return y\n}\n";
        assign_fmt = "y = y + {}";
        if_open_fmt = "if (x > {}) {{";
        if_close = "}";
    } else if (lang == "Swift") {
        head = "func compute(x: Int) -> Int {\n    var y = 0\n";
        tail = "    return y\n}\n";
        assign_fmt = "y = y + {}";
        if_open_fmt = "if x > {} {{";
        if_close = "}";
    } else if (lang == "Scala") {
        head = "object Gen {\n  def compute(x: Int): Int = {\n    var y = 0\n";
        tail = "    y\n  }\n}\n";
        assign_fmt = "y = y + {}";
        if_open_fmt = "if (x > {}) {{";
        if_close = "}";
    } else if (lang == "Rust") {
        head = "fn compute(x: i32) -> i32 {\n    let mut y = 0;\n";
        tail = "    y\n}\n";
        assign_fmt = "y = y + {};";
        if_open_fmt = "if x > {} {{";
        if_close = "}";
    } else if (python) {
        head = "def compute(x):\n    y = 0\n";
        tail = "    return y\n";
        assign_fmt = "y = y + {}";
        if_open_fmt = "if x > {}:";
    } else if (ruby) {
        head = "def compute(x)\n  y = 0\n";
        tail = "  y\nend\n";
        indent = "  ";
        assign_fmt = "y = y + {}";
        if_open_fmt = "if x > {}";
        if_close = "end";
    } else {
        throw std::invalid_argument("no generator for " + lang);
    }
    const std::string step = (python || ruby) ? "  " : "    ";
    std::string body;
    const auto statement = [&](const std::string& pad) {
        body += pad + fmt::format(fmt::runtime(assign_fmt), value(rng)) + "\n";
    };
    for (int k = 0; k < ifs; ++k) {
        for (int f = filler(rng); f > 0; --f) {
            statement(indent);
        }
        body += indent + fmt::format(fmt::runtime(if_open_fmt), value(rng)) + "\n";
        statement(indent + step);
        if (!if_close.empty()) {
            body += indent + if_close + "\n";
        }
    }
    for (int f = filler(rng); f > 0; --f) {
        statement(indent);
    }
    return head + body + tail;
}

}  // namespace cvefix::testing
