// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvefix/storage.hpp"

namespace cvefix::analytics {

/// A CSV-ready table.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::string to_csv() const;
};

struct SummaryRow {
    std::string metric;
    std::int64_t value = 0;
};

/// Distinct CVEs, CWE types in use, projects, commits, files, methods and detected languages.
[[nodiscard]] std::vector<SummaryRow> summary(const Database& db);

enum class RankBy { cves, commits, files, methods };

[[nodiscard]] std::optional<RankBy> parse_rank_by(std::string_view name);

struct ProjectRank {
    std::string project;  ///< final path segment of repo_url
    std::string repo_url;
    std::int64_t cve_count = 0;
    std::int64_t commit_count = 0;
    std::int64_t file_count = 0;
    std::int64_t method_count = 0;
    std::optional<double> avg_cvss2;
    std::optional<double> avg_cvss3;
    std::optional<double> avg_exploitability;
    std::optional<double> avg_impact;
};

/// Ranked descending by the chosen count, ties by project name then repo_url. n <= 0 means all.
[[nodiscard]] std::vector<ProjectRank> top_projects(const Database& db, RankBy by, int n);

struct CweRow {
    std::string cwe_id;
    std::string description;
    std::int64_t cve_count = 0;
    std::int64_t commit_count = 0;
    std::int64_t file_count = 0;
};

/// Ordered by cve_count descending, then cwe_id. n <= 0 means all.
[[nodiscard]] std::vector<CweRow> cwe_distribution(const Database& db, int n);

enum class DayGroup { all, per_project };

struct FixDelay {
    std::string cve_id;
    std::string hash;
    std::string repo_url;
    long long days = 0;
};

/// One value per fixes row: committer_date - published_date in whole days, truncated toward zero.
[[nodiscard]] std::vector<FixDelay> fix_delays(const Database& db);

struct DayStats {
    std::string group;  ///< "all" or the project name
    std::string repo_url;
    std::int64_t count = 0;
    std::int64_t negative_count = 0;
    long long min = 0;
    long long max = 0;
    double mean = 0;
    double median = 0;
    double q1 = 0;
    double q3 = 0;
};

/// Summary of a sample; quartiles use linear interpolation between order statistics.
[[nodiscard]] DayStats describe(std::vector<long long> values);

[[nodiscard]] std::vector<DayStats> days_to_fix(const Database& db, DayGroup group);

struct SeverityAggregate {
    std::string project;
    std::string repo_url;
    std::int64_t cve_count = 0;
    std::optional<double> avg_cvss2;
    std::optional<double> avg_cvss3;
    std::optional<double> avg_exploitability;
    std::optional<double> avg_impact;
};

struct DmmAggregate {
    std::string project;
    std::string repo_url;
    std::int64_t commit_count = 0;
    std::optional<double> dmm_unit_size;
    std::optional<double> dmm_unit_complexity;
    std::optional<double> dmm_unit_interfacing;
    /// Mean of the three project means; absent unless all three are present.
    std::optional<double> overall;
};

[[nodiscard]] std::vector<SeverityAggregate> severity_aggregates(const Database& db);
[[nodiscard]] std::vector<DmmAggregate> dmm_aggregates(const Database& db);

[[nodiscard]] std::string project_name(std::string_view repo_url);

[[nodiscard]] Table summary_table(const Database& db);
[[nodiscard]] Table top_projects_table(const Database& db, RankBy by, int n);
[[nodiscard]] Table cwe_distribution_table(const Database& db, int n);
[[nodiscard]] Table days_to_fix_table(const Database& db);
[[nodiscard]] Table severity_table(const Database& db);
[[nodiscard]] Table dmm_table(const Database& db);
/// Severity and DMM aggregates side by side, one row per project.
[[nodiscard]] Table per_project_table(const Database& db);

/// Report names accepted by `report`, in output order.
inline constexpr std::array<std::string_view, 5> kReports{"summary", "top_projects", "cwe_distribution",
                                                          "days_to_fix", "per_project_aggregates"};

/// Builds a report by name (top lists use n = 10, ranked by CVEs). Throws std::invalid_argument.
[[nodiscard]] Table report(const Database& db, std::string_view name);

}  // namespace cvefix::analytics
