// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvefix/feed_ingest.hpp"

namespace cvefix {

inline constexpr std::string_view kCweNoInfo = "NVD-CWE-noinfo";
inline constexpr std::string_view kCweOther = "NVD-CWE-Other";

struct CweEntry {
    std::string cwe_id;  ///< "CWE-<n>", "NVD-CWE-noinfo" or "NVD-CWE-Other"
    std::string name;
    std::string description;
    std::optional<std::string> extended_description;
    std::optional<std::string> url;
    bool is_category = false;  ///< advisory only: the NVD labels categories as CWE-<n> too

    friend bool operator==(const CweEntry&, const CweEntry&) = default;
};

struct CweAssignment {
    std::string cve_id;
    std::string cwe_id;

    friend auto operator<=>(const CweAssignment&, const CweAssignment&) = default;
};

/// Weakness catalog keyed by cwe_id. Always contains the two NVD pseudo-entries.
/// Immutable after construction apart from add_stub(); safe for concurrent reads.
class CweCatalog {
public:
    /// Catalog containing only the two pseudo-entries.
    CweCatalog();

    /// Parses a MITRE-style CSV export. Columns are located by header name: `CWE-ID` and `Name`
    /// are required; `Description` (or `Summary`), `Extended Description` and `Kind` are optional.
    /// Throws csv::ParseError / std::invalid_argument on malformed input.
    [[nodiscard]] static CweCatalog from_csv(std::string_view text);

    /// The snapshot compiled into the library.
    [[nodiscard]] static const CweCatalog& builtin();

    [[nodiscard]] const CweEntry* find(std::string_view cwe_id) const;
    [[nodiscard]] bool contains(std::string_view cwe_id) const { return find(cwe_id) != nullptr; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }

    /// Entries ordered by cwe_id.
    [[nodiscard]] std::vector<CweEntry> entries() const;

    /// Adds an entry with an empty description for an id the source did not list.
    /// Returns false if the id was already present.
    bool add_stub(const std::string& cwe_id);

private:
    void put(CweEntry entry);

    std::map<std::string, CweEntry, std::less<>> entries_;
};

/// Loads the catalog from `source` (CSV text). Whitespace-only text yields the pseudo-entries
/// only; malformed text falls back to the built-in snapshot and records a warning.
[[nodiscard]] CweCatalog load_catalog(std::string_view source, std::vector<std::string>& warnings);

/// Loads from a file, or the built-in snapshot when `path` is empty. An unreadable file also
/// falls back to the snapshot with a warning.
[[nodiscard]] CweCatalog load_catalog(const std::optional<std::filesystem::path>& path,
                                      std::vector<std::string>& warnings);

/// Adds stub entries for every assignment whose cwe_id is unknown, with one warning each.
void cover_assignments(CweCatalog& catalog, const std::vector<CweAssignment>& assignments,
                       std::vector<std::string>& warnings);

/// Canonical cwe_id for a raw NVD problem-type label. `CWE-<n>` and the NVD pseudo ids pass
/// through (case is canonicalized); "unknown", empty and unrecognized labels map to
/// NVD-CWE-noinfo. Idempotent.
[[nodiscard]] std::string normalize_label(std::string_view raw);

/// One assignment per distinct normalized label, in first-seen order; never empty.
[[nodiscard]] std::vector<CweAssignment> assign(const CveRecord& cve);

}  // namespace cvefix
