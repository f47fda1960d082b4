// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvefix/clock.hpp"
#include "cvefix/cvss.hpp"
#include "cvefix/errors.hpp"
#include "cvefix/http.hpp"
#include "cvefix/time.hpp"

namespace cvefix {

struct ReferenceEntry {
    std::string url;
    std::string name;
    std::string refsource;
    std::vector<std::string> tags;

    friend bool operator==(const ReferenceEntry&, const ReferenceEntry&) = default;
};

/// One NVD vulnerability entry after flattening.
struct CveRecord {
    std::string cve_id;
    std::string description;
    Timestamp published_date;
    Timestamp last_modified_date;
    std::vector<ReferenceEntry> references;
    std::vector<std::string> problem_types;  ///< raw CWE labels, in feed order
    std::optional<Cvss2Metrics> cvss2;
    std::optional<Cvss3Metrics> cvss3;
    std::optional<double> exploitability_score;
    std::optional<double> impact_score;
    std::optional<std::string> severity;

    friend bool operator==(const CveRecord&, const CveRecord&) = default;
};

/// A per-item diagnostic from parse_feed. `item_index` is the position in CVE_Items.
struct FeedIssue {
    std::size_t item_index = 0;
    std::string cve_id;
    std::string message;
};

struct ParsedFeed {
    std::vector<CveRecord> records;
    std::vector<FeedIssue> errors;    ///< items skipped because they violate the schema
    std::vector<FeedIssue> warnings;  ///< items kept despite an oddity (e.g. disagreeing duplicates)
    std::size_t rejected = 0;         ///< items dropped as "** REJECT **"
};

class FeedFormatError : public Error {
public:
    using Error::Error;
};

[[nodiscard]] bool is_cve_id(std::string_view id);

/// Parses an NVD JSON 1.1 feed document. Throws FeedFormatError if the document as a whole is not
/// a feed (no CVE_Items array); item-level problems are reported in ParsedFeed::errors.
///
/// Fields repeated at several nesting levels of `impact` (exploitabilityScore, impactScore, ...)
/// are collapsed to their first occurrence in document order; disagreeing duplicates produce a
/// warning.
[[nodiscard]] ParsedFeed parse_feed(const nlohmann::ordered_json& document);

/// Keeps exactly the records that have at least one reference resolvable to a forge commit.
[[nodiscard]] std::vector<CveRecord> filter_fix_referencing(const std::vector<CveRecord>& records);

/// Concatenates per-year results in the given order, dropping later duplicates of a cve_id.
/// Returns the number of dropped duplicates through `duplicates`.
[[nodiscard]] std::vector<CveRecord> merge_records(std::vector<ParsedFeed> feeds,
                                                   std::size_t* duplicates = nullptr);

struct YearRange {
    int first = 2002;
    int last = 2002;
};

struct FeedFetchOptions {
    std::filesystem::path cache_dir;
    std::string base_url = "https://nvd.nist.gov/feeds/json/cve/1.1/";
    bool force_refresh = false;
    /// A cached feed younger than this is used without contacting the server.
    std::chrono::seconds max_age = std::chrono::hours(24);
};

struct FeedDocument {
    int year = 0;
    bool from_cache = false;
    std::string sha256;  ///< of the decompressed JSON
    nlohmann::ordered_json json;
};

struct FeedFailure {
    int year = 0;
    std::string message;
};

struct FetchResult {
    std::vector<FeedDocument> documents;  ///< in year order
    std::vector<FeedFailure> failures;    ///< corrupt years; other years still returned
};

[[nodiscard]] std::string feed_file_name(int year);

/// Retrieves the `nvdcve-1.1-<year>.json.gz` feeds, using `<cache_dir>/nvd-1.1/` as a cache.
///
/// A fresh cached copy (see FeedFetchOptions::max_age) is used without network access. Otherwise
/// the `.meta` file is consulted and the feed downloaded only when its SHA-256 differs from the
/// manifest. When the server is unreachable a cached copy is used unless `force_refresh` is set;
/// with no usable copy an IngestError naming the year is thrown. Corrupt downloads or cache files
/// are reported per year in FetchResult::failures.
[[nodiscard]] FetchResult fetch_feeds(YearRange years, const FeedFetchOptions& options,
                                      HttpTransport& http, Clock& clock);

}  // namespace cvefix
