// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "cvefix/code_metrics.hpp"
#include "oracles.hpp"

using namespace cvefix;

TEST_CASE("nloc counts code lines", "[metrics]") {
    CHECK(nloc("int a;\n// one\nint b;\n\n/* two */\nint c;\n", "C") == 3);
    CHECK(nloc("", "C") == 0);
    CHECK(nloc("x\n\n  \ny\n") == 2);
    CHECK(nloc("a = 1  # note\n# only\n", "Python") == 1);
}

TEST_CASE("nloc agrees with the character scanner on C sources", "[metrics]") {
    const std::vector<std::string> sources{
        "/* a\n   b */ int x;\nint y; /* c\n d */\n\n// e\nchar *s = \"/* not a comment */\";\n",
        "int f(void) {\n  /* one */ /* two */\n  return '\"'; // q\n}\n/**/\n",
        "#define X 1 /* \n */\n  \t\nchar c = '/'; /* x */ int z;\n",
    };
    for (const auto& s : sources) {
        CHECK(nloc(s, "C") == cvefix::testing::c_family_nloc(s));
    }
    std::mt19937 rng(5);
    const std::vector<std::string> pieces{"int a;", "/*", "*/", "//c", "\"s/*\"", " ", "x = 1;", "'*'", "\\"};
    for (int i = 0; i < 300; ++i) {
        std::string s;
        const int n = static_cast<int>(rng() % 30);
        for (int k = 0; k < n; ++k) {
            s += pieces[rng() % pieces.size()];
            if (rng() % 3 == 0) {
                s += '\n';
            }
        }
        INFO(s);
        CHECK(nloc(s, "C") == cvefix::testing::c_family_nloc(s));
        CHECK(nloc(s, "C") <= count_physical_lines(s));
    }
}

TEST_CASE("cyclomatic complexity", "[metrics]") {
    CHECK(cyclomatic_complexity("int f(int a) {\n  return a;\n}\n", "C") == 1);
    CHECK(cyclomatic_complexity("int f(int a) {\n  if (a) return 1;\n  return 0;\n}\n", "C") == 2);
    CHECK(cyclomatic_complexity(
              "int f(int a, int b) {\n  int s = 0;\n  if (a && b) s = 1;\n  for (int i = 0; i < a; i++) s += i;\n"
              "  return s;\n}\n",
              "C") == 4);
    CHECK_FALSE(cyclomatic_complexity("whatever", "Brainfuck"));
}

TEST_CASE("generated programs gain one per if", "[metrics]") {
    std::mt19937 rng(11);
    for (const auto& lang : cvefix::testing::generated_languages()) {
        for (int ifs = 0; ifs < 5; ++ifs) {
            const auto src = cvefix::testing::generated_function(lang, ifs, rng);
            INFO(lang << "\n" << src);
            CHECK(cyclomatic_complexity(src, lang) == 1 + ifs);
        }
    }
}

TEST_CASE("dmm proportions", "[metrics]") {
    const MethodProfile low{5, 1, 1};
    const MethodProfile high{40, 12, 6};
    SECTION("all added lines in low-risk methods") {
        const std::vector<DmmUnit> units{{low, false, 4}, {low, false, 2}};
        CHECK(dmm(units, DmmProperty::size) == 1.0);
    }
    SECTION("all added lines in high-risk methods") {
        const std::vector<DmmUnit> units{{high, false, 6}};
        CHECK(dmm(units, DmmProperty::complexity) == 0.0);
    }
    SECTION("four good and six bad lines") {
        const std::vector<DmmUnit> units{{low, false, 3}, {high, true, 1}, {high, false, 6}};
        CHECK(dmm(units, DmmProperty::interfacing) == Catch::Approx(0.4));
        int good = 0;
        int total = 0;
        for (const auto& u : units) {
            const bool is_low = u.profile.parameter_count <= 2;
            good += (u.before_change ? !is_low : is_low) ? u.changed_lines : 0;
            total += u.changed_lines;
        }
        CHECK(good == 4);
        CHECK(total == 10);
    }
    SECTION("no changed lines") {
        CHECK_FALSE(dmm({}, DmmProperty::size));
        CHECK(dmm_scores({}).empty());
    }
    SECTION("thresholds are inclusive") {
        CHECK(is_low_risk({15, 5, 2}, DmmProperty::size));
        CHECK(is_low_risk({15, 5, 2}, DmmProperty::complexity));
        CHECK(is_low_risk({15, 5, 2}, DmmProperty::interfacing));
        CHECK_FALSE(is_low_risk({16, 6, 3}, DmmProperty::size));
        CHECK_FALSE(is_low_risk({16, 6, 3}, DmmProperty::complexity));
        CHECK_FALSE(is_low_risk({16, 6, 3}, DmmProperty::interfacing));
    }
}

TEST_CASE("measure_source", "[metrics]") {
    const auto m = measure_source("int a(int x) {\n  if (x) return 1;\n  return 0;\n}\nint b(void) { return 2; }\n", "C");
    CHECK(m.methods_supported);
    REQUIRE(m.methods.size() == 2);
    CHECK(m.complexity == 3);
    CHECK(m.nloc == 5);
    CHECK(m.methods[0].nloc == 4);
    CHECK(m.methods[0].token_count > 0);
    const auto none = measure_source("just text\n", "Markdown");
    CHECK_FALSE(none.complexity);
}
