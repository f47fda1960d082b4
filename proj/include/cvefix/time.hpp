// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace cvefix {

/// UTC instant with one-second resolution. Every timestamp in the dataset uses this type.
using Timestamp = std::chrono::sys_seconds;

/// Parses ISO-8601 date-times as they appear in NVD feeds, forge APIs and git output.
///
/// Accepted shapes: `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM`, `YYYY-MM-DDTHH:MM:SS`, optionally with
/// fractional seconds (discarded) and a `Z` or `+HH:MM` / `-HHMM` offset. A missing offset means
/// UTC. A space is accepted in place of `T`.
[[nodiscard]] std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Canonical form: `YYYY-MM-DDTHH:MM:SSZ`.
[[nodiscard]] std::string format_timestamp(Timestamp ts);

/// Whole days between two instants, truncated toward zero (may be negative).
[[nodiscard]] long long days_between(Timestamp from, Timestamp to);

}  // namespace cvefix
