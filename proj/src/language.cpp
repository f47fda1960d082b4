// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/language.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace cvefix {

namespace {

using Comments = std::vector<std::pair<std::string_view, std::string_view>>;

const Comments kCBlock{{"/*", "*/"}};
const std::vector<std::string_view> kCLine{"//"};
const std::vector<std::string_view> kHash{"#"};

const std::vector<std::string_view> kCDecisions{"if", "for", "while", "case", "catch"};
const std::vector<std::string_view> kShortCircuit{"&&", "||"};

LanguageSpec c_family(std::string_view name, std::vector<std::string_view> decisions = kCDecisions,
                      bool ternary = true) {
    LanguageSpec s;
    s.name = name;
    s.line_comments = kCLine;
    s.block_comments = kCBlock;
    s.methods = MethodSyntax::braces;
    s.decision_keywords = std::move(decisions);
    s.decision_operators = kShortCircuit;
    s.ternary = ternary;
    return s;
}

LanguageSpec comments_only(std::string_view name, std::vector<std::string_view> line,
                           Comments block = {}, std::string_view quotes = "\"'") {
    LanguageSpec s;
    s.name = name;
    s.line_comments = std::move(line);
    s.block_comments = std::move(block);
    s.quotes = quotes;
    return s;
}

std::vector<LanguageSpec> build_specs() {
    std::vector<LanguageSpec> v;

    auto c = c_family("C");
    c.c_preprocessor = true;
    v.push_back(c);
    auto cpp = c_family("C++");
    cpp.c_preprocessor = true;
    v.push_back(cpp);
    auto objc = c_family("Objective-C");
    objc.c_preprocessor = true;
    v.push_back(objc);
    auto cs = c_family("C#", {"if", "for", "foreach", "while", "case", "catch"});
    cs.c_preprocessor = true;
    v.push_back(cs);
    v.push_back(c_family("Java"));
    auto js = c_family("JavaScript");
    js.quotes = "\"'`";
    js.multiline_strings = false;
    v.push_back(js);
    auto ts = js;
    ts.name = "TypeScript";
    v.push_back(ts);
    auto go = c_family("Go", {"if", "for", "case"}, false);
    go.quotes = "\"'`";
    v.push_back(go);
    auto rust = c_family("Rust", {"if", "for", "while"}, false);
    rust.short_single_quote = true;
    v.push_back(rust);
    auto swift = c_family("Swift", {"if", "for", "while", "case", "catch", "guard"});
    swift.triple_quotes = true;
    v.push_back(swift);
    auto kotlin = c_family("Kotlin", {"if", "for", "while", "catch"}, false);
    kotlin.triple_quotes = true;
    v.push_back(kotlin);
    auto scala = c_family("Scala", {"if", "for", "while", "case", "catch"}, false);
    scala.triple_quotes = true;
    scala.short_single_quote = true;
    v.push_back(scala);
    auto dart = c_family("Dart");
    dart.triple_quotes = true;
    v.push_back(dart);
    auto groovy = c_family("Groovy");
    groovy.triple_quotes = true;
    v.push_back(groovy);
    auto php = c_family("PHP", {"if", "elseif", "for", "foreach", "while", "case", "catch"});
    php.line_comments = {"//", "#"};
    php.multiline_strings = true;
    php.heredocs = true;
    v.push_back(php);

    LanguageSpec py;
    py.name = "Python";
    py.line_comments = kHash;
    py.triple_quotes = true;
    py.methods = MethodSyntax::python;
    py.decision_keywords = {"if", "elif", "for", "while", "except", "and", "or"};
    v.push_back(py);

    LanguageSpec rb;
    rb.name = "Ruby";
    rb.line_comments = kHash;
    rb.line_start_blocks = {{"=begin", "=end"}};
    rb.multiline_strings = true;
    rb.predicate_identifiers = true;
    rb.heredocs = true;
    rb.methods = MethodSyntax::ruby;
    rb.decision_keywords = {"if", "elsif", "unless", "while", "until", "for", "when", "rescue",
                            "and", "or"};
    rb.decision_operators = kShortCircuit;
    rb.ternary = true;
    v.push_back(rb);

    auto perl = comments_only("Perl", kHash);
    perl.line_start_blocks = {{"=pod", "=cut"}, {"=head", "=cut"}, {"=begin", "=end"}};
    perl.multiline_strings = true;
    perl.heredocs = true;
    v.push_back(perl);
    auto shell = comments_only("Shell", kHash, {}, "\"'`");
    shell.multiline_strings = true;
    shell.heredocs = true;
    v.push_back(shell);
    auto ps = comments_only("PowerShell", kHash, {{"<#", "#>"}});
    ps.multiline_strings = true;
    v.push_back(ps);
    auto r = comments_only("R", kHash);
    r.multiline_strings = true;
    v.push_back(r);
    auto julia = comments_only("Julia", kHash, {{"#=", "=#"}});
    julia.triple_quotes = true;
    v.push_back(julia);
    auto elixir = comments_only("Elixir", kHash);
    elixir.triple_quotes = true;
    elixir.multiline_strings = true;
    v.push_back(elixir);
    auto coffee = comments_only("CoffeeScript", kHash, {{"###", "###"}}, "\"'`");
    coffee.triple_quotes = true;
    v.push_back(coffee);
    v.push_back(comments_only("YAML", kHash));
    v.push_back(comments_only("TOML", kHash));
    v.push_back(comments_only("Makefile", kHash));
    v.push_back(comments_only("CMake", kHash));
    v.push_back(comments_only("Dockerfile", kHash));

    auto sql = comments_only("SQL", {"--"}, kCBlock, "\"'`");
    sql.backslash_escapes = false;
    sql.multiline_strings = true;
    v.push_back(sql);
    v.push_back(comments_only("Lua", {"--"}, {{"--[[", "]]"}}));
    auto haskell = comments_only("Haskell", {"--"}, {{"{-", "-}"}});
    haskell.short_single_quote = true;
    v.push_back(haskell);

    v.push_back(comments_only("Erlang", {"%"}));
    v.push_back(comments_only("Prolog", {"%"}, kCBlock));
    v.push_back(comments_only("TeX", {"%"}, {}, ""));
    auto matlab = comments_only("Matlab", {"%"}, {{"%{", "%}"}});
    matlab.quote_transpose = true;
    v.push_back(matlab);

    auto lisp = comments_only("Lisp", {";"}, {{"#|", "|#"}}, "\"");
    v.push_back(lisp);
    v.push_back(comments_only("Clojure", {";"}, {}, "\""));
    v.push_back(comments_only("Assembly", {";", "#", "//"}, kCBlock, "\"'"));
    v.push_back(comments_only("Fortran", {"!"}));
    v.push_back(comments_only("Visual Basic", {"'"}, {}, "\""));
    v.push_back(comments_only("Batchfile", {"::"}, {}, "\""));
    auto ocaml = comments_only("OCaml", {}, {{"(*", "*)"}}, "\"");
    v.push_back(ocaml);
    auto pascal = comments_only("Pascal", {"//"}, {{"(*", "*)"}, {"{", "}"}}, "'");
    pascal.backslash_escapes = false;
    v.push_back(pascal);
    v.push_back(comments_only("Verilog", kCLine, kCBlock, "\""));
    v.push_back(comments_only("CSS", {}, kCBlock));
    v.push_back(comments_only("JSON", {}, {}, "\""));
    v.push_back(comments_only("HTML", {}, {{"<!--", "-->"}}, ""));
    v.push_back(comments_only("XML", {}, {{"<!--", "-->"}}, ""));
    v.push_back(comments_only("Markdown", {}, {{"<!--", "-->"}}, ""));
    return v;
}

const std::vector<LanguageSpec>& specs() {
    static const std::vector<LanguageSpec> all = build_specs();
    return all;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

const std::map<std::string, std::string, std::less<>>& extension_table() {
    static const std::map<std::string, std::string, std::less<>> table{
        {"asm", "Assembly"},     {"s", "Assembly"},       {"bat", "Batchfile"},
        {"cmd", "Batchfile"},    {"c", "C"},              {"cs", "C#"},
        {"cpp", "C++"},          {"cc", "C++"},           {"cxx", "C++"},
        {"c++", "C++"},          {"hpp", "C++"},          {"hh", "C++"},
        {"hxx", "C++"},          {"ipp", "C++"},          {"tpp", "C++"},
        {"clj", "Clojure"},      {"cljs", "Clojure"},     {"cljc", "Clojure"},
        {"cmake", "CMake"},      {"coffee", "CoffeeScript"}, {"css", "CSS"},
        {"scss", "CSS"},         {"dart", "Dart"},        {"ex", "Elixir"},
        {"exs", "Elixir"},       {"erl", "Erlang"},       {"hrl", "Erlang"},
        {"f", "Fortran"},        {"f90", "Fortran"},      {"f95", "Fortran"},
        {"for", "Fortran"},      {"go", "Go"},            {"groovy", "Groovy"},
        {"gradle", "Groovy"},    {"hs", "Haskell"},       {"lhs", "Haskell"},
        {"html", "HTML"},        {"htm", "HTML"},         {"xhtml", "HTML"},
        {"java", "Java"},        {"js", "JavaScript"},    {"mjs", "JavaScript"},
        {"cjs", "JavaScript"},   {"jsx", "JavaScript"},   {"json", "JSON"},
        {"jl", "Julia"},         {"kt", "Kotlin"},        {"kts", "Kotlin"},
        {"lisp", "Lisp"},        {"lsp", "Lisp"},         {"el", "Lisp"},
        {"cl", "Lisp"},          {"lua", "Lua"},          {"mk", "Makefile"},
        {"md", "Markdown"},      {"markdown", "Markdown"}, {"mm", "Objective-C"},
        {"ml", "OCaml"},         {"mli", "OCaml"},        {"pas", "Pascal"},
        {"pp", "Pascal"},        {"pm", "Perl"},          {"t", "Perl"},
        {"php", "PHP"},          {"phtml", "PHP"},        {"php3", "PHP"},
        {"php4", "PHP"},         {"php5", "PHP"},         {"phpt", "PHP"},
        {"ps1", "PowerShell"},   {"psm1", "PowerShell"},  {"pro", "Prolog"},
        {"py", "Python"},        {"pyw", "Python"},       {"pyi", "Python"},
        {"r", "R"},              {"rb", "Ruby"},          {"rake", "Ruby"},
        {"gemspec", "Ruby"},     {"erb", "Ruby"},         {"rs", "Rust"},
        {"scala", "Scala"},      {"sc", "Scala"},         {"sh", "Shell"},
        {"bash", "Shell"},       {"zsh", "Shell"},        {"ksh", "Shell"},
        {"sql", "SQL"},          {"swift", "Swift"},      {"tex", "TeX"},
        {"sty", "TeX"},          {"toml", "TOML"},        {"ts", "TypeScript"},
        {"tsx", "TypeScript"},   {"mts", "TypeScript"},   {"v", "Verilog"},
        {"sv", "Verilog"},       {"vb", "Visual Basic"},  {"bas", "Visual Basic"},
        {"vbs", "Visual Basic"}, {"xml", "XML"},          {"xsd", "XML"},
        {"xsl", "XML"},          {"svg", "XML"},          {"pom", "XML"},
        {"yml", "YAML"},         {"yaml", "YAML"},
    };
    return table;
}

bool contains_any(std::string_view hay, std::initializer_list<std::string_view> needles) {
    return std::any_of(needles.begin(), needles.end(),
                       [&](std::string_view n) { return hay.find(n) != std::string_view::npos; });
}

std::string detect_header(std::string_view content) {
    if (contains_any(content, {"@interface", "@implementation", "@property", "#import"})) {
        return "Objective-C";
    }
    if (contains_any(content, {"template<", "template <", "namespace ", "class ", "std::",
                               "public:", "private:", "constexpr", "nullptr"})) {
        return "C++";
    }
    return "C";
}

std::optional<std::string> from_shebang(std::string_view content) {
    if (!content.starts_with("#!")) {
        return std::nullopt;
    }
    const auto line = lower(content.substr(0, content.find('\n')));
    if (contains_any(line, {"python"})) {
        return "Python";
    }
    if (contains_any(line, {"ruby"})) {
        return "Ruby";
    }
    if (contains_any(line, {"perl"})) {
        return "Perl";
    }
    if (contains_any(line, {"node", "deno"})) {
        return "JavaScript";
    }
    if (contains_any(line, {"php"})) {
        return "PHP";
    }
    if (contains_any(line, {"pwsh", "powershell"})) {
        return "PowerShell";
    }
    if (contains_any(line, {"sh"})) {
        return "Shell";
    }
    return std::nullopt;
}

}  // namespace

const LanguageSpec* find_language(std::string_view name) {
    for (const auto& s : specs()) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

std::vector<std::string> supported_languages() {
    std::vector<std::string> out;
    for (const auto& s : specs()) {
        out.emplace_back(s.name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool has_method_parser(std::string_view language) {
    const auto* spec = find_language(language);
    return spec != nullptr && spec->methods != MethodSyntax::none;
}

std::optional<std::string> HeuristicLanguageDetector::detect(std::string_view filename,
                                                             std::string_view content) const {
    const auto probe = content.substr(0, std::min<std::size_t>(content.size(), 8000));
    if (probe.find('\0') != std::string_view::npos) {
        return std::nullopt;
    }
    const auto slash = filename.find_last_of("/\\");
    const auto base = slash == std::string_view::npos ? filename : filename.substr(slash + 1);
    const auto lower_base = lower(base);

    if (lower_base == "makefile" || lower_base == "gnumakefile") {
        return "Makefile";
    }
    if (lower_base == "dockerfile" || lower_base.starts_with("dockerfile.")) {
        return "Dockerfile";
    }
    if (lower_base == "cmakelists.txt") {
        return "CMake";
    }
    if (lower_base == "rakefile" || lower_base == "gemfile") {
        return "Ruby";
    }

    const auto dot = lower_base.rfind('.');
    if (dot == std::string::npos || dot == 0) {
        return from_shebang(content);
    }
    const auto ext = std::string_view(lower_base).substr(dot + 1);
    if (ext == "h") {
        return detect_header(probe);
    }
    if (ext == "m") {
        if (contains_any(probe, {"@interface", "@implementation", "#import", "#include"})) {
            return "Objective-C";
        }
        return "Matlab";
    }
    if (ext == "pl") {
        if (contains_any(probe, {":- ", ":-\n"}) && !contains_any(probe, {"my $", "use strict"})) {
            return "Prolog";
        }
        return "Perl";
    }
    if (ext == "inc") {
        if (contains_any(probe, {"<?php", "<?="})) {
            return "PHP";
        }
        return std::nullopt;
    }
    // Uppercase ".C" is a C++ convention.
    if (ext == "c" && base.ends_with(".C")) {
        return "C++";
    }
    const auto& table = extension_table();
    if (const auto it = table.find(ext); it != table.end()) {
        return it->second;
    }
    return from_shebang(content);
}

std::optional<std::string> detect_language(std::string_view filename, std::string_view content) {
    static const HeuristicLanguageDetector detector;
    return detector.detect(filename, content);
}

}  // namespace cvefix
