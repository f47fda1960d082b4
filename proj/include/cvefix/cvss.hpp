// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cvefix {

// Sub-attribute enums. Labels are the upper-case strings used by the NVD feeds
// (e.g. "ADJACENT_NETWORK"); codes are the single letters of the vector string.

enum class AccessVector { local, adjacent_network, network, physical };
enum class AccessComplexity { low, medium, high };
enum class Authentication { none, single, multiple };
enum class ImpactV2 { none, partial, complete };
enum class PrivilegesRequired { none, low, high };
enum class UserInteraction { none, required };
enum class Scope { unchanged, changed };
enum class ImpactV3 { none, low, high };

[[nodiscard]] std::string_view label(AccessVector v);
[[nodiscard]] std::string_view label(AccessComplexity v);
[[nodiscard]] std::string_view label(Authentication v);
[[nodiscard]] std::string_view label(ImpactV2 v);
[[nodiscard]] std::string_view label(PrivilegesRequired v);
[[nodiscard]] std::string_view label(UserInteraction v);
[[nodiscard]] std::string_view label(Scope v);
[[nodiscard]] std::string_view label(ImpactV3 v);

struct Cvss2Metrics {
    double base_score = 0.0;
    AccessVector access_vector = AccessVector::network;
    AccessComplexity access_complexity = AccessComplexity::low;
    Authentication authentication = Authentication::none;
    ImpactV2 confidentiality_impact = ImpactV2::none;
    ImpactV2 integrity_impact = ImpactV2::none;
    ImpactV2 availability_impact = ImpactV2::none;

    /// `AV:N/AC:L/Au:N/C:P/I:P/A:P`
    [[nodiscard]] std::string vector_string() const;

    /// Inverse of vector_string(); nullopt on any unknown or missing component.
    [[nodiscard]] static std::optional<Cvss2Metrics> from_vector(std::string_view vector,
                                                                 double base_score);

    friend bool operator==(const Cvss2Metrics&, const Cvss2Metrics&) = default;
};

struct Cvss3Metrics {
    std::string version = "3.1";
    double base_score = 0.0;
    std::string base_severity;
    AccessVector attack_vector = AccessVector::network;
    AccessComplexity attack_complexity = AccessComplexity::low;
    PrivilegesRequired privileges_required = PrivilegesRequired::none;
    UserInteraction user_interaction = UserInteraction::none;
    Scope scope = Scope::unchanged;
    ImpactV3 confidentiality_impact = ImpactV3::none;
    ImpactV3 integrity_impact = ImpactV3::none;
    ImpactV3 availability_impact = ImpactV3::none;

    /// `CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H`
    [[nodiscard]] std::string vector_string() const;

    /// Inverse of vector_string(). v3 has no MEDIUM attack complexity and no
    /// ADJACENT/PHYSICAL distinction beyond the letters A/P.
    [[nodiscard]] static std::optional<Cvss3Metrics> from_vector(std::string_view vector,
                                                                 double base_score);

    friend bool operator==(const Cvss3Metrics&, const Cvss3Metrics&) = default;
};

/// True when `score` is a finite value in [0, 10].
[[nodiscard]] bool valid_score(double score);

}  // namespace cvefix
