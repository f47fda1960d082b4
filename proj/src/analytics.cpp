// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/analytics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "cvefix/csv.hpp"
#include "cvefix/errors.hpp"
#include "cvefix/time.hpp"

namespace cvefix::analytics {

namespace {

std::int64_t as_int(const SqlValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return *i;
    }
    if (const auto* d = std::get_if<double>(&v)) {
        return static_cast<std::int64_t>(*d);
    }
    return 0;
}

std::optional<double> as_real(const SqlValue& v) {
    if (const auto* d = std::get_if<double>(&v)) {
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return static_cast<double>(*i);
    }
    return std::nullopt;
}

std::string as_string(const SqlValue& v) {
    return to_text(v);
}

std::string real_text(const std::optional<double>& v) {
    return v ? fmt::format("{}", *v) : std::string();
}

std::int64_t scalar(const Database& db, std::string_view sql) {
    const auto r = db.query(sql);
    return r.rows.empty() ? 0 : as_int(r.rows.front().front());
}

double quantile(const std::vector<long long>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) {
        return static_cast<double>(sorted[lo]);
    }
    return static_cast<double>(sorted[lo]) + frac * static_cast<double>(sorted[lo + 1] - sorted[lo]);
}

std::optional<double> mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        return std::nullopt;
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

bool by_name(const std::string& a_name, const std::string& a_url, const std::string& b_name,
             const std::string& b_url) {
    if (a_name != b_name) {
        return a_name < b_name;
    }
    return a_url < b_url;
}

}  // namespace

std::string Table::to_csv() const {
    std::string out = csv::format_row(header);
    for (const auto& row : rows) {
        out += csv::format_row(row);
    }
    return out;
}

std::string project_name(std::string_view repo_url) {
    while (!repo_url.empty() && repo_url.back() == '/') {
        repo_url.remove_suffix(1);
    }
    const auto slash = repo_url.rfind('/');
    return std::string(slash == std::string_view::npos ? repo_url : repo_url.substr(slash + 1));
}

std::vector<SummaryRow> summary(const Database& db) {
    return {
        {"cves", scalar(db, "SELECT COUNT(DISTINCT cve_id) FROM cve")},
        {"cwe_types", scalar(db, "SELECT COUNT(DISTINCT cwe_id) FROM cwe_classification")},
        {"projects", scalar(db, "SELECT COUNT(DISTINCT repo_url) FROM repository")},
        {"commits", scalar(db, "SELECT COUNT(DISTINCT hash) FROM commits")},
        {"files", scalar(db, "SELECT COUNT(DISTINCT file_change_id) FROM file_change")},
        {"methods", scalar(db, "SELECT COUNT(DISTINCT method_change_id) FROM method_change")},
        {"languages",
         scalar(db, "SELECT COUNT(DISTINCT programming_language) FROM file_change "
                    "WHERE programming_language IS NOT NULL")},
    };
}

std::optional<RankBy> parse_rank_by(std::string_view name) {
    if (name == "cves") {
        return RankBy::cves;
    }
    if (name == "commits") {
        return RankBy::commits;
    }
    if (name == "files") {
        return RankBy::files;
    }
    if (name == "methods") {
        return RankBy::methods;
    }
    return std::nullopt;
}

std::vector<ProjectRank> top_projects(const Database& db, RankBy by, int n) {
    const auto r = db.query(R"(
SELECT r.repo_url,
  (SELECT COUNT(DISTINCT fx.cve_id) FROM fixes fx WHERE fx.repo_url = r.repo_url),
  (SELECT COUNT(*) FROM commits c WHERE c.repo_url = r.repo_url),
  (SELECT COUNT(*) FROM file_change f JOIN commits c ON c.hash = f.hash WHERE c.repo_url = r.repo_url),
  (SELECT COUNT(*) FROM method_change m JOIN file_change f ON f.file_change_id = m.file_change_id
     JOIN commits c ON c.hash = f.hash WHERE c.repo_url = r.repo_url),
  (SELECT AVG(cv.cvss2_base_score) FROM cve cv WHERE cv.cve_id IN
     (SELECT fx.cve_id FROM fixes fx WHERE fx.repo_url = r.repo_url)),
  (SELECT AVG(cv.cvss3_base_score) FROM cve cv WHERE cv.cve_id IN
     (SELECT fx.cve_id FROM fixes fx WHERE fx.repo_url = r.repo_url)),
  (SELECT AVG(cv.exploitability_score) FROM cve cv WHERE cv.cve_id IN
     (SELECT fx.cve_id FROM fixes fx WHERE fx.repo_url = r.repo_url)),
  (SELECT AVG(cv.impact_score) FROM cve cv WHERE cv.cve_id IN
     (SELECT fx.cve_id FROM fixes fx WHERE fx.repo_url = r.repo_url))
FROM repository r)");
    std::vector<ProjectRank> out;
    for (const auto& row : r.rows) {
        ProjectRank p;
        p.repo_url = as_string(row[0]);
        p.project = project_name(p.repo_url);
        p.cve_count = as_int(row[1]);
        p.commit_count = as_int(row[2]);
        p.file_count = as_int(row[3]);
        p.method_count = as_int(row[4]);
        p.avg_cvss2 = as_real(row[5]);
        p.avg_cvss3 = as_real(row[6]);
        p.avg_exploitability = as_real(row[7]);
        p.avg_impact = as_real(row[8]);
        out.push_back(std::move(p));
    }
    const auto key = [by](const ProjectRank& p) {
        switch (by) {
            case RankBy::cves:
                return p.cve_count;
            case RankBy::commits:
                return p.commit_count;
            case RankBy::files:
                return p.file_count;
            case RankBy::methods:
                return p.method_count;
        }
        return std::int64_t{0};
    };
    std::sort(out.begin(), out.end(), [&](const ProjectRank& a, const ProjectRank& b) {
        if (key(a) != key(b)) {
            return key(a) > key(b);
        }
        return by_name(a.project, a.repo_url, b.project, b.repo_url);
    });
    if (n > 0 && out.size() > static_cast<std::size_t>(n)) {
        out.resize(static_cast<std::size_t>(n));
    }
    return out;
}

std::vector<CweRow> cwe_distribution(const Database& db, int n) {
    const auto r = db.query(R"(
SELECT cc.cwe_id, COALESCE(w.cwe_name, ''),
  COUNT(DISTINCT cc.cve_id),
  (SELECT COUNT(DISTINCT fx.hash) FROM fixes fx JOIN cwe_classification k ON k.cve_id = fx.cve_id
     WHERE k.cwe_id = cc.cwe_id),
  (SELECT COUNT(DISTINCT f.file_change_id) FROM file_change f JOIN fixes fx ON fx.hash = f.hash
     JOIN cwe_classification k ON k.cve_id = fx.cve_id WHERE k.cwe_id = cc.cwe_id)
FROM cwe_classification cc LEFT JOIN cwe w ON w.cwe_id = cc.cwe_id
GROUP BY cc.cwe_id
ORDER BY COUNT(DISTINCT cc.cve_id) DESC, cc.cwe_id ASC)");
    std::vector<CweRow> out;
    for (const auto& row : r.rows) {
        out.push_back({as_string(row[0]), as_string(row[1]), as_int(row[2]), as_int(row[3]), as_int(row[4])});
    }
    if (n > 0 && out.size() > static_cast<std::size_t>(n)) {
        out.resize(static_cast<std::size_t>(n));
    }
    return out;
}

std::vector<FixDelay> fix_delays(const Database& db) {
    const auto r = db.query(R"(
SELECT fx.cve_id, fx.hash, fx.repo_url, cv.published_date, c.committer_date
FROM fixes fx JOIN cve cv ON cv.cve_id = fx.cve_id JOIN commits c ON c.hash = fx.hash
ORDER BY fx.cve_id, fx.hash)");
    std::vector<FixDelay> out;
    for (const auto& row : r.rows) {
        const auto published = parse_timestamp(as_string(row[3]));
        const auto committed = parse_timestamp(as_string(row[4]));
        if (!published || !committed) {
            throw StorageError(fmt::format("unparseable date for {} / {}", as_string(row[0]), as_string(row[1])));
        }
        out.push_back({as_string(row[0]), as_string(row[1]), as_string(row[2]), days_between(*published, *committed)});
    }
    return out;
}

DayStats describe(std::vector<long long> values) {
    DayStats s;
    s.count = static_cast<std::int64_t>(values.size());
    if (values.empty()) {
        return s;
    }
    std::sort(values.begin(), values.end());
    s.negative_count = std::count_if(values.begin(), values.end(), [](long long v) { return v < 0; });
    s.min = values.front();
    s.max = values.back();
    long double total = 0;
    for (const auto v : values) {
        total += v;
    }
    s.mean = static_cast<double>(total / static_cast<long double>(values.size()));
    s.median = quantile(values, 0.5);
    s.q1 = quantile(values, 0.25);
    s.q3 = quantile(values, 0.75);
    return s;
}

std::vector<DayStats> days_to_fix(const Database& db, DayGroup group) {
    const auto delays = fix_delays(db);
    std::vector<DayStats> out;
    if (group == DayGroup::all) {
        std::vector<long long> values;
        for (const auto& d : delays) {
            values.push_back(d.days);
        }
        auto s = describe(std::move(values));
        s.group = "all";
        out.push_back(std::move(s));
        return out;
    }
    std::map<std::string, std::vector<long long>> by_repo;
    for (const auto& d : delays) {
        by_repo[d.repo_url].push_back(d.days);
    }
    for (auto& [url, values] : by_repo) {
        auto s = describe(std::move(values));
        s.group = project_name(url);
        s.repo_url = url;
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const DayStats& a, const DayStats& b) { return by_name(a.group, a.repo_url, b.group, b.repo_url); });
    return out;
}

std::vector<SeverityAggregate> severity_aggregates(const Database& db) {
    std::vector<SeverityAggregate> out;
    for (const auto& p : top_projects(db, RankBy::cves, 0)) {
        out.push_back({p.project, p.repo_url, p.cve_count, p.avg_cvss2, p.avg_cvss3, p.avg_exploitability,
                       p.avg_impact});
    }
    std::sort(out.begin(), out.end(), [](const SeverityAggregate& a, const SeverityAggregate& b) {
        return by_name(a.project, a.repo_url, b.project, b.repo_url);
    });
    return out;
}

std::vector<DmmAggregate> dmm_aggregates(const Database& db) {
    const auto r = db.query(
        "SELECT repo_url, dmm_unit_size, dmm_unit_complexity, dmm_unit_interfacing FROM commits ORDER BY hash");
    struct Acc {
        std::int64_t commits = 0;
        std::vector<double> size, complexity, interfacing;
    };
    std::map<std::string, Acc> by_repo;
    for (const auto& url : db.query("SELECT repo_url FROM repository").rows) {
        by_repo[as_string(url[0])];
    }
    for (const auto& row : r.rows) {
        auto& acc = by_repo[as_string(row[0])];
        ++acc.commits;
        if (const auto v = as_real(row[1])) {
            acc.size.push_back(*v);
        }
        if (const auto v = as_real(row[2])) {
            acc.complexity.push_back(*v);
        }
        if (const auto v = as_real(row[3])) {
            acc.interfacing.push_back(*v);
        }
    }
    std::vector<DmmAggregate> out;
    for (const auto& [url, acc] : by_repo) {
        DmmAggregate a;
        a.project = project_name(url);
        a.repo_url = url;
        a.commit_count = acc.commits;
        a.dmm_unit_size = mean_of(acc.size);
        a.dmm_unit_complexity = mean_of(acc.complexity);
        a.dmm_unit_interfacing = mean_of(acc.interfacing);
        if (a.dmm_unit_size && a.dmm_unit_complexity && a.dmm_unit_interfacing) {
            a.overall = (*a.dmm_unit_size + *a.dmm_unit_complexity + *a.dmm_unit_interfacing) / 3.0;
        }
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const DmmAggregate& a, const DmmAggregate& b) {
        return by_name(a.project, a.repo_url, b.project, b.repo_url);
    });
    return out;
}

Table summary_table(const Database& db) {
    Table t{{"metric", "value"}, {}};
    for (const auto& row : summary(db)) {
        t.rows.push_back({row.metric, std::to_string(row.value)});
    }
    return t;
}

Table top_projects_table(const Database& db, RankBy by, int n) {
    Table t{{"rank", "project", "repo_url", "cve_count", "commit_count", "file_count", "method_count", "avg_cvss2",
             "avg_cvss3", "avg_exploitability", "avg_impact"},
            {}};
    int rank = 0;
    for (const auto& p : top_projects(db, by, n)) {
        t.rows.push_back({std::to_string(++rank), p.project, p.repo_url, std::to_string(p.cve_count),
                          std::to_string(p.commit_count), std::to_string(p.file_count),
                          std::to_string(p.method_count), real_text(p.avg_cvss2), real_text(p.avg_cvss3),
                          real_text(p.avg_exploitability), real_text(p.avg_impact)});
    }
    return t;
}

Table cwe_distribution_table(const Database& db, int n) {
    Table t{{"cwe_id", "description", "cve_count", "commit_count", "file_count"}, {}};
    for (const auto& c : cwe_distribution(db, n)) {
        t.rows.push_back({c.cwe_id, c.description, std::to_string(c.cve_count), std::to_string(c.commit_count),
                          std::to_string(c.file_count)});
    }
    return t;
}

Table days_to_fix_table(const Database& db) {
    Table t{{"group", "repo_url", "count", "negative_count", "min", "max", "mean", "median", "q1", "q3"}, {}};
    auto rows = days_to_fix(db, DayGroup::all);
    for (auto& s : days_to_fix(db, DayGroup::per_project)) {
        rows.push_back(std::move(s));
    }
    for (const auto& s : rows) {
        const bool empty = s.count == 0;
        t.rows.push_back({s.group, s.repo_url, std::to_string(s.count), std::to_string(s.negative_count),
                          empty ? "" : std::to_string(s.min), empty ? "" : std::to_string(s.max),
                          empty ? "" : fmt::format("{}", s.mean), empty ? "" : fmt::format("{}", s.median),
                          empty ? "" : fmt::format("{}", s.q1), empty ? "" : fmt::format("{}", s.q3)});
    }
    return t;
}

Table severity_table(const Database& db) {
    Table t{{"project", "repo_url", "cve_count", "avg_cvss2", "avg_cvss3", "avg_exploitability", "avg_impact"}, {}};
    for (const auto& a : severity_aggregates(db)) {
        t.rows.push_back({a.project, a.repo_url, std::to_string(a.cve_count), real_text(a.avg_cvss2),
                          real_text(a.avg_cvss3), real_text(a.avg_exploitability), real_text(a.avg_impact)});
    }
    return t;
}

Table dmm_table(const Database& db) {
    Table t{{"project", "repo_url", "commit_count", "dmm_unit_size", "dmm_unit_complexity", "dmm_unit_interfacing",
             "overall"},
            {}};
    for (const auto& a : dmm_aggregates(db)) {
        t.rows.push_back({a.project, a.repo_url, std::to_string(a.commit_count), real_text(a.dmm_unit_size),
                          real_text(a.dmm_unit_complexity), real_text(a.dmm_unit_interfacing),
                          real_text(a.overall)});
    }
    return t;
}

Table per_project_table(const Database& db) {
    Table t{{"project", "repo_url", "cve_count", "avg_cvss2", "avg_cvss3", "avg_exploitability", "avg_impact",
             "commit_count", "dmm_unit_size", "dmm_unit_complexity", "dmm_unit_interfacing", "overall_dmm"},
            {}};
    const auto severity = severity_aggregates(db);
    const auto dmm = dmm_aggregates(db);
    for (std::size_t i = 0; i < severity.size() && i < dmm.size(); ++i) {
        const auto& s = severity[i];
        const auto& d = dmm[i];
        t.rows.push_back({s.project, s.repo_url, std::to_string(s.cve_count), real_text(s.avg_cvss2),
                          real_text(s.avg_cvss3), real_text(s.avg_exploitability), real_text(s.avg_impact),
                          std::to_string(d.commit_count), real_text(d.dmm_unit_size),
                          real_text(d.dmm_unit_complexity), real_text(d.dmm_unit_interfacing),
                          real_text(d.overall)});
    }
    return t;
}

Table report(const Database& db, std::string_view name) {
    if (name == "summary") {
        return summary_table(db);
    }
    if (name == "top_projects") {
        return top_projects_table(db, RankBy::cves, 10);
    }
    if (name == "cwe_distribution") {
        return cwe_distribution_table(db, 10);
    }
    if (name == "days_to_fix") {
        return days_to_fix_table(db);
    }
    if (name == "per_project_aggregates") {
        return per_project_table(db);
    }
    throw std::invalid_argument(fmt::format("unknown report '{}'", name));
}

}  // namespace cvefix::analytics
