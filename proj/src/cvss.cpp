// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/cvss.hpp"

#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace cvefix {

namespace {

template <typename E>
struct Entry {
    E value;
    char code;
    std::string_view label;
};

constexpr std::array<Entry<AccessVector>, 4> kAccessVector{{
    {AccessVector::local, 'L', "LOCAL"},
    {AccessVector::adjacent_network, 'A', "ADJACENT_NETWORK"},
    {AccessVector::network, 'N', "NETWORK"},
    {AccessVector::physical, 'P', "PHYSICAL"},
}};
constexpr std::array<Entry<AccessComplexity>, 3> kAccessComplexity{{
    {AccessComplexity::low, 'L', "LOW"},
    {AccessComplexity::medium, 'M', "MEDIUM"},
    {AccessComplexity::high, 'H', "HIGH"},
}};
constexpr std::array<Entry<Authentication>, 3> kAuthentication{{
    {Authentication::none, 'N', "NONE"},
    {Authentication::single, 'S', "SINGLE"},
    {Authentication::multiple, 'M', "MULTIPLE"},
}};
constexpr std::array<Entry<ImpactV2>, 3> kImpactV2{{
    {ImpactV2::none, 'N', "NONE"},
    {ImpactV2::partial, 'P', "PARTIAL"},
    {ImpactV2::complete, 'C', "COMPLETE"},
}};
constexpr std::array<Entry<PrivilegesRequired>, 3> kPrivileges{{
    {PrivilegesRequired::none, 'N', "NONE"},
    {PrivilegesRequired::low, 'L', "LOW"},
    {PrivilegesRequired::high, 'H', "HIGH"},
}};
constexpr std::array<Entry<UserInteraction>, 2> kUserInteraction{{
    {UserInteraction::none, 'N', "NONE"},
    {UserInteraction::required, 'R', "REQUIRED"},
}};
constexpr std::array<Entry<Scope>, 2> kScope{{
    {Scope::unchanged, 'U', "UNCHANGED"},
    {Scope::changed, 'C', "CHANGED"},
}};
constexpr std::array<Entry<ImpactV3>, 3> kImpactV3{{
    {ImpactV3::none, 'N', "NONE"},
    {ImpactV3::low, 'L', "LOW"},
    {ImpactV3::high, 'H', "HIGH"},
}};

template <typename E, std::size_t N>
const Entry<E>& find(const std::array<Entry<E>, N>& table, E value) {
    for (const auto& e : table) {
        if (e.value == value) {
            return e;
        }
    }
    return table.front();
}

template <typename E, std::size_t N>
std::optional<E> from_code(const std::array<Entry<E>, N>& table, std::string_view code) {
    if (code.size() != 1) {
        return std::nullopt;
    }
    for (const auto& e : table) {
        if (e.code == code[0]) {
            return e.value;
        }
    }
    return std::nullopt;
}

// Splits "AV:N/AC:L/..." into an ordered key -> value map. Duplicate keys are rejected.
std::optional<std::map<std::string, std::string, std::less<>>> split_vector(std::string_view v) {
    std::map<std::string, std::string, std::less<>> out;
    while (!v.empty()) {
        const auto slash = v.find('/');
        const auto part = v.substr(0, slash);
        const auto colon = part.find(':');
        if (colon == std::string_view::npos || colon == 0) {
            return std::nullopt;
        }
        if (!out.emplace(std::string(part.substr(0, colon)), std::string(part.substr(colon + 1)))
                 .second) {
            return std::nullopt;
        }
        if (slash == std::string_view::npos) {
            break;
        }
        v.remove_prefix(slash + 1);
    }
    return out;
}

}  // namespace

std::string_view label(AccessVector v) { return find(kAccessVector, v).label; }
std::string_view label(AccessComplexity v) { return find(kAccessComplexity, v).label; }
std::string_view label(Authentication v) { return find(kAuthentication, v).label; }
std::string_view label(ImpactV2 v) { return find(kImpactV2, v).label; }
std::string_view label(PrivilegesRequired v) { return find(kPrivileges, v).label; }
std::string_view label(UserInteraction v) { return find(kUserInteraction, v).label; }
std::string_view label(Scope v) { return find(kScope, v).label; }
std::string_view label(ImpactV3 v) { return find(kImpactV3, v).label; }

bool valid_score(double score) { return std::isfinite(score) && score >= 0.0 && score <= 10.0; }

std::string Cvss2Metrics::vector_string() const {
    std::string out;
    out += "AV:";
    out += find(kAccessVector, access_vector).code;
    out += "/AC:";
    out += find(kAccessComplexity, access_complexity).code;
    out += "/Au:";
    out += find(kAuthentication, authentication).code;
    out += "/C:";
    out += find(kImpactV2, confidentiality_impact).code;
    out += "/I:";
    out += find(kImpactV2, integrity_impact).code;
    out += "/A:";
    out += find(kImpactV2, availability_impact).code;
    return out;
}

std::optional<Cvss2Metrics> Cvss2Metrics::from_vector(std::string_view vector, double base_score) {
    const auto parts = split_vector(vector);
    if (!parts || parts->size() != 6) {
        return std::nullopt;
    }
    auto get = [&](std::string_view key) -> std::string_view {
        const auto it = parts->find(key);
        return it == parts->end() ? std::string_view{} : std::string_view{it->second};
    };
    const auto av = from_code(kAccessVector, get("AV"));
    const auto ac = from_code(kAccessComplexity, get("AC"));
    const auto au = from_code(kAuthentication, get("Au"));
    const auto c = from_code(kImpactV2, get("C"));
    const auto i = from_code(kImpactV2, get("I"));
    const auto a = from_code(kImpactV2, get("A"));
    if (!av || !ac || !au || !c || !i || !a || *av == AccessVector::physical) {
        return std::nullopt;
    }
    return Cvss2Metrics{base_score, *av, *ac, *au, *c, *i, *a};
}

std::string Cvss3Metrics::vector_string() const {
    std::string out = "CVSS:" + version;
    out += "/AV:";
    out += find(kAccessVector, attack_vector).code;
    out += "/AC:";
    out += find(kAccessComplexity, attack_complexity).code;
    out += "/PR:";
    out += find(kPrivileges, privileges_required).code;
    out += "/UI:";
    out += find(kUserInteraction, user_interaction).code;
    out += "/S:";
    out += find(kScope, scope).code;
    out += "/C:";
    out += find(kImpactV3, confidentiality_impact).code;
    out += "/I:";
    out += find(kImpactV3, integrity_impact).code;
    out += "/A:";
    out += find(kImpactV3, availability_impact).code;
    return out;
}

std::optional<Cvss3Metrics> Cvss3Metrics::from_vector(std::string_view vector, double base_score) {
    const auto parts = split_vector(vector);
    if (!parts || parts->size() != 9) {
        return std::nullopt;
    }
    auto get = [&](std::string_view key) -> std::string_view {
        const auto it = parts->find(key);
        return it == parts->end() ? std::string_view{} : std::string_view{it->second};
    };
    const auto version = get("CVSS");
    if (version != "3.0" && version != "3.1") {
        return std::nullopt;
    }
    Cvss3Metrics m;
    m.version = std::string(version);
    m.base_score = base_score;
    const auto av = from_code(kAccessVector, get("AV"));
    const auto ac = from_code(kAccessComplexity, get("AC"));
    const auto pr = from_code(kPrivileges, get("PR"));
    const auto ui = from_code(kUserInteraction, get("UI"));
    const auto s = from_code(kScope, get("S"));
    const auto c = from_code(kImpactV3, get("C"));
    const auto i = from_code(kImpactV3, get("I"));
    const auto a = from_code(kImpactV3, get("A"));
    if (!av || !ac || !pr || !ui || !s || !c || !i || !a || *ac == AccessComplexity::medium) {
        return std::nullopt;
    }
    m.attack_vector = *av;
    m.attack_complexity = *ac;
    m.privileges_required = *pr;
    m.user_interaction = *ui;
    m.scope = *s;
    m.confidentiality_impact = *c;
    m.integrity_impact = *i;
    m.availability_impact = *a;
    return m;
}

}  // namespace cvefix
