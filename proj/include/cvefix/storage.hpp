// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cvefix/change_extractor.hpp"
#include "cvefix/cwe_catalog.hpp"
#include "cvefix/feed_ingest.hpp"
#include "cvefix/reference_resolver.hpp"
#include "cvefix/repo_meta.hpp"

struct sqlite3;

namespace cvefix {

/// The eight tables, parents before children.
inline constexpr std::array<std::string_view, 8> kTables{
    "cve", "cwe", "cwe_classification", "repository", "commits", "fixes", "file_change", "method_change"};

/// Rows per table.
using RowCounts = std::map<std::string, std::int64_t, std::less<>>;

using SqlValue = std::variant<std::monostate, std::int64_t, double, std::string>;

struct QueryResult {
    std::vector<std::string> columns;
    std::vector<std::vector<SqlValue>> rows;
};

/// Text rendering used by the CLI: NULL prints as empty, reals with up to 17 significant digits.
[[nodiscard]] std::string to_text(const SqlValue& value);

/// Everything persisted for one repository in a single transaction.
struct RepositoryBatch {
    RepositoryMeta repository;
    std::vector<CveRecord> cves;
    std::vector<CweAssignment> classifications;
    std::vector<FixReference> fixes;  // commit_hash must be the full hash of a commit below
    std::vector<CommitExtraction> commits;
};

struct IntegrityReport {
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// SQLite-backed dataset store.
class Database {
public:
    /// Opens (creating if needed) a database file and ensures the schema exists.
    static Database open(const std::filesystem::path& path);
    /// Opens an existing database without creating or altering it. Throws StorageError.
    static Database open_existing(const std::filesystem::path& path, bool read_only = true);
    static Database open_memory();

    Database(Database&& other) noexcept;
    Database& operator=(Database&& other) noexcept;
    Database(const Database&) = delete;
    Database& operator=(const Database&) = delete;
    ~Database();

    /// Upserts every catalog entry into `cwe`. Returns the number of new rows.
    RowCounts persist_catalog(const CweCatalog& catalog);

    /// Upserts a repository batch in one transaction; returns new rows per table. On any failure
    /// (including foreign-key violations) the transaction is rolled back and StorageError thrown.
    RowCounts persist(const RepositoryBatch& batch);

    [[nodiscard]] RowCounts counts() const;

    /// Runs SQL text (one or more statements) and returns the rows of the last one.
    [[nodiscard]] QueryResult query(std::string_view sql) const;

    /// Deterministic SQL text dump: schema, then rows ordered by primary key.
    [[nodiscard]] std::string export_dump() const;

    /// Foreign-key and reverse-orphan checks.
    [[nodiscard]] IntegrityReport check_integrity() const;

    [[nodiscard]] sqlite3* handle() const noexcept { return db_; }

private:
    explicit Database(sqlite3* db) : db_(db) {}
    void exec(std::string_view sql) const;
    void create_schema();

    sqlite3* db_ = nullptr;
};

/// Replays a dump into a new database file (which must not contain tables yet).
void load_dump(const std::filesystem::path& path, std::string_view sql);

/// Schema DDL statements.
[[nodiscard]] const std::vector<std::string>& schema_statements();

}  // namespace cvefix
