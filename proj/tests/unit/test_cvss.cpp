// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include "cvefix/cvss.hpp"
#include "cvefix/time.hpp"

using namespace cvefix;

TEST_CASE("CVSS v2 vectors round trip", "[cvss]") {
    for (const std::string v : {"AV:N/AC:L/Au:N/C:P/I:P/A:P", "AV:L/AC:H/Au:M/C:N/I:C/A:N", "AV:A/AC:M/Au:S/C:C/I:N/A:P"}) {
        const auto m = Cvss2Metrics::from_vector(v, 5.0);
        REQUIRE(m);
        CHECK(m->vector_string() == v);
    }
    CHECK_FALSE(Cvss2Metrics::from_vector("AV:X/AC:L/Au:N/C:P/I:P/A:P", 5.0));
    CHECK_FALSE(Cvss2Metrics::from_vector("AV:N/AC:L", 5.0));
}

TEST_CASE("CVSS v3 vectors round trip", "[cvss]") {
    const auto m = Cvss3Metrics::from_vector("CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:C/C:L/I:L/A:N", 6.1);
    REQUIRE(m);
    CHECK(m->scope == Scope::changed);
    CHECK(m->user_interaction == UserInteraction::required);
    CHECK(m->vector_string() == "CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:C/C:L/I:L/A:N");
    const auto v30 = Cvss3Metrics::from_vector("CVSS:3.0/AV:P/AC:H/PR:H/UI:N/S:U/C:H/I:H/A:H", 6.8);
    REQUIRE(v30);
    CHECK(v30->version == "3.0");
    CHECK(v30->attack_vector == AccessVector::physical);
    CHECK_FALSE(Cvss3Metrics::from_vector("CVSS:3.1/AV:N/AC:M/PR:N/UI:R/S:C/C:L/I:L/A:N", 6.1));
}

TEST_CASE("scores stay within 0 to 10", "[cvss]") {
    CHECK(valid_score(0.0));
    CHECK(valid_score(10.0));
    CHECK_FALSE(valid_score(10.1));
    CHECK_FALSE(valid_score(-0.1));
}

TEST_CASE("timestamps and day arithmetic", "[cvss]") {
    const auto a = parse_timestamp("2020-02-12T15:15Z");
    REQUIRE(a);
    CHECK(format_timestamp(*a) == "2020-02-12T15:15:00Z");
    const auto b = parse_timestamp("2020-02-10T12:00:00+02:00");
    REQUIRE(b);
    CHECK(format_timestamp(*b) == "2020-02-10T10:00:00Z");
    CHECK(days_between(*a, *a) == 0);
    CHECK(days_between(*a, *a - std::chrono::hours(72)) == -3);
    CHECK(days_between(*b, *a) == 2);
    CHECK_FALSE(parse_timestamp("yesterday"));
}
