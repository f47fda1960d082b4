// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cvefix/cwe_catalog.hpp"
#include "cvefix/feed_ingest.hpp"

using namespace cvefix;

namespace {

CveRecord with_labels(std::vector<std::string> labels) {
    CveRecord r;
    r.cve_id = "CVE-2020-0001";
    r.problem_types = std::move(labels);
    return r;
}

std::set<std::string> ids(const std::vector<CweAssignment>& a) {
    std::set<std::string> out;
    for (const auto& x : a) {
        out.insert(x.cwe_id);
    }
    return out;
}

}  // namespace

TEST_CASE("builtin snapshot", "[cwe]") {
    const auto& c = CweCatalog::builtin();
    CHECK(c.contains("NVD-CWE-noinfo"));
    CHECK(c.contains("NVD-CWE-Other"));
    REQUIRE(c.contains("CWE-79"));
    CHECK(c.find("CWE-79")->name.starts_with("Improper Neutralization of Input During Web Page Generation"));
    CHECK(c.size() > 2);
}

TEST_CASE("empty source holds only the pseudo entries", "[cwe]") {
    std::vector<std::string> warnings;
    const auto c = load_catalog(std::string_view{}, warnings);
    CHECK(c.size() == 2);
    CHECK(c.contains(kCweNoInfo));
    CHECK(c.contains(kCweOther));
}

TEST_CASE("CSV source and malformed fallback", "[cwe]") {
    std::vector<std::string> warnings;
    const auto c = load_catalog(
        std::string_view("CWE-ID,Name,Weakness Abstraction,Status,Description\n"
                         "79,Improper Neutralization of Input During Web Page Generation ('Cross-site Scripting'),Base,"
                         "Stable,\"The product does not neutralize, or incorrectly neutralizes, input.\"\n"),
        warnings);
    CHECK(c.size() == 3);
    REQUIRE(c.contains("CWE-79"));
    CHECK(c.find("CWE-79")->description.find("neutralizes, input") != std::string::npos);
    CHECK(warnings.empty());

    const auto bad = load_catalog(std::string_view("no,header,we,know\n1,2,3,4\n"), warnings);
    CHECK_FALSE(warnings.empty());
    CHECK(bad.size() == CweCatalog::builtin().size());
}

TEST_CASE("normalize_label", "[cwe]") {
    CHECK(normalize_label("CWE-119") == "CWE-119");
    CHECK(normalize_label("unknown") == "NVD-CWE-noinfo");
    CHECK(normalize_label("") == "NVD-CWE-noinfo");
    CHECK(normalize_label("NVD-CWE-Other") == "NVD-CWE-Other");
}

TEST_CASE("assign", "[cwe]") {
    CHECK(assign(with_labels({"CWE-79", "CWE-79"})).size() == 1);
    CHECK(ids(assign(with_labels({"CWE-20", "unknown"}))) == std::set<std::string>{"CWE-20", "NVD-CWE-noinfo"});
    const auto none = assign(with_labels({}));
    REQUIRE(none.size() == 1);
    CHECK(none[0].cwe_id == "NVD-CWE-noinfo");
    CHECK(none[0].cve_id == "CVE-2020-0001");
}

TEST_CASE("assign agrees with a brute-force set over random label lists", "[cwe]") {
    const std::vector<std::string> pool{"CWE-20", "CWE-79", "unknown", "", "NVD-CWE-Other", "CWE-787", "garbage"};
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> labels;
        const int n = static_cast<int>(rng() % 5);
        for (int k = 0; k < n; ++k) {
            labels.push_back(pool[rng() % pool.size()]);
        }
        std::set<std::string> want;
        for (const auto& l : labels) {
            const bool real = l.starts_with("CWE-") || l == "NVD-CWE-Other";
            want.insert(real ? l : "NVD-CWE-noinfo");
        }
        if (want.empty()) {
            want.insert("NVD-CWE-noinfo");
        }
        const auto got = assign(with_labels(labels));
        CHECK(got.size() == want.size());
        CHECK(ids(got) == want);
    }
}

TEST_CASE("cover_assignments adds stubs for unknown ids", "[cwe]") {
    CweCatalog c;
    std::vector<std::string> warnings;
    cover_assignments(c, {{"CVE-1", "CWE-999999"}}, warnings);
    CHECK(c.contains("CWE-999999"));
    CHECK(warnings.size() == 1);
}
