// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/code_metrics.hpp"

#include <algorithm>
#include <set>

#include "cvefix/methods.hpp"

namespace cvefix {

namespace {

const LanguageSpec* spec_for(std::string_view language) {
    return language.empty() ? nullptr : find_language(language);
}

int count_code_lines(const LexedSource& lexed) {
    return static_cast<int>(std::count(lexed.code_line.begin(), lexed.code_line.end(), true));
}

bool is_ternary(const std::vector<Token>& tokens, std::size_t q, std::size_t end, const LanguageSpec& spec) {
    if (q + 1 < end && tokens[q + 1].text == ":" && spec.name == "TypeScript") {
        return false;
    }
    int depth = 0;
    for (std::size_t k = q + 1; k < end; ++k) {
        const auto text = tokens[k].text;
        if (text == "(" || text == "[" || text == "{") {
            ++depth;
        } else if (text == ")" || text == "]" || text == "}") {
            if (--depth < 0) {
                return false;
            }
        } else if (depth == 0 && text == ";") {
            return false;
        } else if (depth == 0 && text == ":") {
            return true;
        }
    }
    return false;
}

}  // namespace

int count_decisions(const std::vector<Token>& tokens, std::size_t begin, std::size_t end,
                    const LanguageSpec& spec) {
    int n = 0;
    end = std::min(end, tokens.size());
    for (std::size_t k = begin; k < end; ++k) {
        const auto& t = tokens[k];
        if (t.preprocessor || t.kind == TokenKind::string || t.kind == TokenKind::number) {
            continue;
        }
        if (t.kind == TokenKind::identifier) {
            if (k > begin && (tokens[k - 1].text == "." || tokens[k - 1].text == "->")) {
                continue;
            }
            if (std::find(spec.decision_keywords.begin(), spec.decision_keywords.end(), t.text) !=
                spec.decision_keywords.end()) {
                ++n;
            }
            continue;
        }
        if (std::find(spec.decision_operators.begin(), spec.decision_operators.end(), t.text) !=
            spec.decision_operators.end()) {
            ++n;
        } else if (spec.ternary && t.text == "?" && is_ternary(tokens, k, end, spec)) {
            ++n;
        }
    }
    return n;
}

int nloc(std::string_view source, std::string_view language) {
    return count_code_lines(lex(source, spec_for(language)));
}

std::optional<int> cyclomatic_complexity(std::string_view method_source, std::string_view language) {
    const auto* spec = spec_for(language);
    if (spec == nullptr || spec->decision_keywords.empty()) {
        return std::nullopt;
    }
    const auto lexed = lex(method_source, spec);
    return 1 + count_decisions(lexed.tokens, 0, lexed.tokens.size(), *spec);
}

int token_count(std::string_view source, std::string_view language) {
    return static_cast<int>(lex(source, spec_for(language)).tokens.size());
}

bool is_low_risk(const MethodProfile& profile, DmmProperty property, const DmmThresholds& thresholds) {
    switch (property) {
        case DmmProperty::size:
            return profile.nloc <= thresholds.nloc;
        case DmmProperty::complexity:
            return profile.complexity <= thresholds.complexity;
        case DmmProperty::interfacing:
            return profile.parameter_count <= thresholds.parameters;
    }
    return false;
}

std::optional<double> dmm(std::span<const DmmUnit> units, DmmProperty property,
                          const DmmThresholds& thresholds) {
    long good = 0;
    long bad = 0;
    for (const auto& u : units) {
        const bool low = is_low_risk(u.profile, property, thresholds);
        // Added lines are good in low-risk units; deleted lines are good in high-risk units.
        const bool good_side = u.before_change ? !low : low;
        (good_side ? good : bad) += std::max(0, u.changed_lines);
    }
    if (good + bad == 0) {
        return std::nullopt;
    }
    return static_cast<double>(good) / static_cast<double>(good + bad);
}

DmmScores dmm_scores(std::span<const DmmUnit> units, const DmmThresholds& thresholds) {
    return {dmm(units, DmmProperty::size, thresholds), dmm(units, DmmProperty::complexity, thresholds),
            dmm(units, DmmProperty::interfacing, thresholds)};
}

SourceMetrics measure_source(std::string_view source, std::string_view language) {
    SourceMetrics out;
    const auto* spec = spec_for(language);
    const auto lexed = lex(source, spec);
    out.nloc = count_code_lines(lexed);
    out.token_count = static_cast<int>(lexed.tokens.size());
    if (spec == nullptr || spec->methods == MethodSyntax::none) {
        return out;
    }
    out.methods_supported = true;
    auto scan = find_methods(lexed, *spec);
    if (scan.problem) {
        out.warning = *scan.problem;
        return out;
    }
    int total = 0;
    for (auto& span : scan.methods) {
        MeasuredMethod m;
        m.name = span.name;
        m.signature = span.signature();
        m.parameters = span.parameters;
        m.start_line = span.start_line;
        m.end_line = span.end_line;
        std::set<int> lines;
        for (std::size_t k = span.first_token; k <= span.last_token && k < lexed.tokens.size(); ++k) {
            for (int l = lexed.tokens[k].line; l <= lexed.tokens[k].end_line; ++l) {
                lines.insert(l);
            }
        }
        m.nloc = static_cast<int>(lines.size());
        m.token_count = static_cast<int>(span.last_token - span.first_token + 1);
        m.complexity = 1 + count_decisions(lexed.tokens, span.body_begin, span.last_token + 1, *spec);
        total += m.complexity;
        out.methods.push_back(std::move(m));
    }
    out.complexity = total;
    return out;
}

}  // namespace cvefix
