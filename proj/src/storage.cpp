// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/storage.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "cvefix/codec.hpp"
#include "cvefix/errors.hpp"

namespace cvefix {

namespace {

using nlohmann::json;

const std::map<std::string_view, std::vector<std::string_view>> kPrimaryKeys{
    {"cve", {"cve_id"}},
    {"cwe", {"cwe_id"}},
    {"cwe_classification", {"cve_id", "cwe_id"}},
    {"repository", {"repo_url"}},
    {"commits", {"hash"}},
    {"fixes", {"cve_id", "hash"}},
    {"file_change", {"file_change_id"}},
    {"method_change", {"method_change_id"}},
};

class Statement {
public:
    Statement(sqlite3* db, std::string_view sql) : db_(db) {
        const char* tail = nullptr;
        if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &stmt_, &tail) != SQLITE_OK) {
            throw StorageError(sqlite3_errmsg(db));
        }
    }
    ~Statement() { sqlite3_finalize(stmt_); }
    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;

    Statement& bind(int i, std::nullopt_t) {
        check(sqlite3_bind_null(stmt_, i));
        return *this;
    }
    Statement& bind(int i, std::string_view v) {
        check(sqlite3_bind_text64(stmt_, i, v.data(), v.size(), SQLITE_TRANSIENT, SQLITE_UTF8));
        return *this;
    }
    Statement& bind(int i, const std::string& v) { return bind(i, std::string_view(v)); }
    Statement& bind(int i, const char* v) { return bind(i, std::string_view(v)); }
    Statement& bind(int i, std::int64_t v) {
        check(sqlite3_bind_int64(stmt_, i, v));
        return *this;
    }
    Statement& bind(int i, int v) { return bind(i, static_cast<std::int64_t>(v)); }
    Statement& bind(int i, bool v) { return bind(i, static_cast<std::int64_t>(v ? 1 : 0)); }
    Statement& bind(int i, double v) {
        check(sqlite3_bind_double(stmt_, i, v));
        return *this;
    }
    Statement& bind(int i, Timestamp v) { return bind(i, format_timestamp(v)); }
    template <typename T>
    Statement& bind(int i, const std::optional<T>& v) {
        if (!v) {
            return bind(i, std::nullopt);
        }
        return bind(i, *v);
    }

    /// true while rows remain.
    bool step() {
        const int rc = sqlite3_step(stmt_);
        if (rc == SQLITE_ROW) {
            return true;
        }
        if (rc == SQLITE_DONE) {
            return false;
        }
        throw StorageError(sqlite3_errmsg(db_));
    }

    void run() {
        while (step()) {
        }
        reset();
    }

    void reset() {
        sqlite3_reset(stmt_);
        sqlite3_clear_bindings(stmt_);
    }

    std::int64_t int_at(int col) const { return sqlite3_column_int64(stmt_, col); }

    SqlValue value_at(int col) const {
        switch (sqlite3_column_type(stmt_, col)) {
            case SQLITE_INTEGER:
                return static_cast<std::int64_t>(sqlite3_column_int64(stmt_, col));
            case SQLITE_FLOAT:
                return sqlite3_column_double(stmt_, col);
            case SQLITE_NULL:
                return std::monostate{};
            default: {
                const auto* p = static_cast<const char*>(sqlite3_column_blob(stmt_, col));
                const auto n = static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col));
                return p == nullptr ? std::string() : std::string(p, n);
            }
        }
    }

    sqlite3_stmt* get() const { return stmt_; }

private:
    void check(int rc) const {
        if (rc != SQLITE_OK) {
            throw StorageError(sqlite3_errmsg(db_));
        }
    }

    sqlite3* db_;
    sqlite3_stmt* stmt_ = nullptr;
};

std::string references_json(const CveRecord& cve) {
    json arr = json::array();
    for (const auto& r : cve.references) {
        json entry = json::object();
        entry["url"] = r.url;
        entry["name"] = r.name;
        entry["refsource"] = r.refsource;
        entry["tags"] = r.tags;
        arr.push_back(std::move(entry));
    }
    return arr.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string problemtype_json(const CveRecord& cve) {
    return json(cve.problem_types).dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string parameters_json(const std::vector<std::string>& params) {
    return json(params).dump(-1, ' ', false, json::error_handler_t::replace);
}

bool exists(sqlite3* db, std::string_view table, const std::vector<std::string>& key) {
    const auto& cols = kPrimaryKeys.at(table);
    std::string sql = fmt::format("SELECT 1 FROM {} WHERE ", table);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        sql += fmt::format("{}{} = ?{}", i ? " AND " : "", cols[i], i + 1);
    }
    Statement st(db, sql);
    for (std::size_t i = 0; i < key.size(); ++i) {
        st.bind(static_cast<int>(i + 1), key[i]);
    }
    return st.step();
}

// INSERT ... ON CONFLICT(pk) DO UPDATE SET every non-key column.
std::string upsert_sql(std::string_view table, const std::vector<std::string_view>& columns) {
    const auto& pk = kPrimaryKeys.at(table);
    std::string cols;
    std::string params;
    std::string updates;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        cols += fmt::format("{}{}", i ? ", " : "", columns[i]);
        params += fmt::format("{}?{}", i ? ", " : "", i + 1);
        if (std::find(pk.begin(), pk.end(), columns[i]) == pk.end()) {
            updates += fmt::format("{}{} = excluded.{}", updates.empty() ? "" : ", ", columns[i], columns[i]);
        }
    }
    std::string conflict;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        conflict += fmt::format("{}{}", i ? ", " : "", pk[i]);
    }
    return fmt::format("INSERT INTO {} ({}) VALUES ({}) ON CONFLICT ({}) DO {}", table, cols, params, conflict,
                       updates.empty() ? std::string("NOTHING") : "UPDATE SET " + updates);
}

class Transaction {
public:
    explicit Transaction(sqlite3* db) : db_(db) { exec("BEGIN IMMEDIATE"); }
    ~Transaction() {
        if (!done_) {
            sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
        }
    }
    Transaction(const Transaction&) = delete;
    Transaction& operator=(const Transaction&) = delete;
    void commit() {
        exec("COMMIT");
        done_ = true;
    }

private:
    void exec(const char* sql) {
        char* err = nullptr;
        if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
            std::string msg = err != nullptr ? err : "unknown error";
            sqlite3_free(err);
            throw StorageError(msg);
        }
    }
    sqlite3* db_;
    bool done_ = false;
};

class Upserter {
public:
    Upserter(sqlite3* db, std::string_view table, std::vector<std::string_view> columns)
        : db_(db), table_(table), stmt_(db, upsert_sql(table, columns)) {}

    template <typename... Args>
    void put(const std::vector<std::string>& key, RowCounts& counts, const Args&... args) {
        const bool is_new = !exists(db_, table_, key);
        int i = 0;
        (stmt_.bind(++i, args), ...);
        stmt_.run();
        if (is_new) {
            ++counts[std::string(table_)];
        }
    }

private:
    sqlite3* db_;
    std::string_view table_;
    Statement stmt_;
};

std::string sql_literal(const SqlValue& v) {
    if (std::holds_alternative<std::monostate>(v)) {
        return "NULL";
    }
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&v)) {
        if (!std::isfinite(*d)) {
            return *d > 0 ? "1e999" : (*d < 0 ? "-1e999" : "NULL");
        }
        auto s = fmt::format("{:.17g}", *d);
        if (s.find_first_of(".eEn") == std::string::npos) {
            s += ".0";
        }
        return s;
    }
    const auto& s = std::get<std::string>(v);
    if (s.find('\0') != std::string::npos || !is_valid_utf8(s)) {
        std::string hex;
        static constexpr char kHex[] = "0123456789abcdef";
        for (const char c : s) {
            hex.push_back(kHex[static_cast<unsigned char>(c) >> 4]);
            hex.push_back(kHex[static_cast<unsigned char>(c) & 0xF]);
        }
        return "CAST(X'" + hex + "' AS TEXT)";
    }
    std::string out = "'";
    for (const char c : s) {
        if (c == '\'') {
            out += "''";
        } else {
            out.push_back(c);
        }
    }
    return out + "'";
}

}  // namespace

std::string to_text(const SqlValue& value) {
    if (std::holds_alternative<std::monostate>(value)) {
        return {};
    }
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&value)) {
        return fmt::format("{}", *d);
    }
    return std::get<std::string>(value);
}

const std::vector<std::string>& schema_statements() {
    static const std::vector<std::string> statements{
        R"(CREATE TABLE cve (
    cve_id TEXT PRIMARY KEY NOT NULL,
    published_date TEXT NOT NULL,
    last_modified_date TEXT NOT NULL,
    description TEXT NOT NULL,
    reference_json TEXT NOT NULL,
    problemtype_json TEXT NOT NULL,
    cvss2_vector_string TEXT,
    cvss2_access_vector TEXT,
    cvss2_access_complexity TEXT,
    cvss2_authentication TEXT,
    cvss2_confidentiality_impact TEXT,
    cvss2_integrity_impact TEXT,
    cvss2_availability_impact TEXT,
    cvss2_base_score REAL,
    cvss3_vector_string TEXT,
    cvss3_attack_vector TEXT,
    cvss3_attack_complexity TEXT,
    cvss3_privileges_required TEXT,
    cvss3_user_interaction TEXT,
    cvss3_scope TEXT,
    cvss3_confidentiality_impact TEXT,
    cvss3_integrity_impact TEXT,
    cvss3_availability_impact TEXT,
    cvss3_base_score REAL,
    cvss3_base_severity TEXT,
    exploitability_score REAL,
    impact_score REAL,
    severity TEXT
))",
        R"(CREATE TABLE cwe (
    cwe_id TEXT PRIMARY KEY NOT NULL,
    cwe_name TEXT NOT NULL,
    description TEXT NOT NULL,
    extended_description TEXT,
    url TEXT,
    is_category INTEGER NOT NULL DEFAULT 0
))",
        R"(CREATE TABLE cwe_classification (
    cve_id TEXT NOT NULL REFERENCES cve (cve_id),
    cwe_id TEXT NOT NULL REFERENCES cwe (cwe_id),
    PRIMARY KEY (cve_id, cwe_id)
))",
        R"(CREATE TABLE repository (
    repo_url TEXT PRIMARY KEY NOT NULL,
    repo_name TEXT NOT NULL,
    description TEXT,
    date_created TEXT,
    date_last_push TEXT,
    homepage TEXT,
    repo_language TEXT,
    forks_count INTEGER NOT NULL,
    stars_count INTEGER NOT NULL
))",
        R"(CREATE TABLE commits (
    hash TEXT PRIMARY KEY NOT NULL,
    repo_url TEXT NOT NULL REFERENCES repository (repo_url),
    author_name TEXT NOT NULL,
    author_date TEXT NOT NULL,
    committer_date TEXT NOT NULL,
    message TEXT NOT NULL,
    is_merge INTEGER NOT NULL,
    num_lines_added INTEGER NOT NULL,
    num_lines_deleted INTEGER NOT NULL,
    dmm_unit_size REAL,
    dmm_unit_complexity REAL,
    dmm_unit_interfacing REAL
))",
        R"(CREATE TABLE fixes (
    cve_id TEXT NOT NULL REFERENCES cve (cve_id),
    hash TEXT NOT NULL REFERENCES commits (hash),
    repo_url TEXT NOT NULL REFERENCES repository (repo_url),
    PRIMARY KEY (cve_id, hash)
))",
        R"(CREATE TABLE file_change (
    file_change_id TEXT PRIMARY KEY NOT NULL,
    hash TEXT NOT NULL REFERENCES commits (hash),
    filename TEXT NOT NULL,
    old_path TEXT,
    new_path TEXT,
    change_type TEXT NOT NULL,
    code_before TEXT,
    code_after TEXT,
    diff TEXT NOT NULL,
    diff_parsed TEXT NOT NULL,
    num_lines_added INTEGER NOT NULL,
    num_lines_deleted INTEGER NOT NULL,
    nloc INTEGER,
    complexity INTEGER,
    token_count INTEGER,
    programming_language TEXT
))",
        R"(CREATE TABLE method_change (
    method_change_id TEXT PRIMARY KEY NOT NULL,
    file_change_id TEXT NOT NULL REFERENCES file_change (file_change_id),
    name TEXT NOT NULL,
    signature TEXT NOT NULL,
    parameters TEXT NOT NULL,
    start_line INTEGER NOT NULL,
    end_line INTEGER NOT NULL,
    code TEXT NOT NULL,
    nloc INTEGER NOT NULL,
    complexity INTEGER NOT NULL,
    token_count INTEGER NOT NULL,
    before_change INTEGER NOT NULL
))",
        "CREATE INDEX idx_cwe_classification_cwe ON cwe_classification (cwe_id)",
        "CREATE INDEX idx_commits_repo ON commits (repo_url)",
        "CREATE INDEX idx_fixes_hash ON fixes (hash)",
        "CREATE INDEX idx_file_change_hash ON file_change (hash)",
        "CREATE INDEX idx_method_change_file ON method_change (file_change_id)",
    };
    return statements;
}

Database::Database(Database&& other) noexcept : db_(other.db_) {
    other.db_ = nullptr;
}

Database& Database::operator=(Database&& other) noexcept {
    if (this != &other) {
        sqlite3_close_v2(db_);
        db_ = other.db_;
        other.db_ = nullptr;
    }
    return *this;
}

Database::~Database() {
    sqlite3_close_v2(db_);
}

void Database::exec(std::string_view sql) const {
    char* err = nullptr;
    const std::string text(sql);
    if (sqlite3_exec(db_, text.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err != nullptr ? err : sqlite3_errmsg(db_);
        sqlite3_free(err);
        throw StorageError(msg);
    }
}

namespace {

sqlite3* open_handle(const std::string& name, int flags) {
    sqlite3* db = nullptr;
    if (sqlite3_open_v2(name.c_str(), &db, flags, nullptr) != SQLITE_OK) {
        std::string msg = db != nullptr ? sqlite3_errmsg(db) : "out of memory";
        sqlite3_close_v2(db);
        throw StorageError(fmt::format("cannot open database {}: {}", name, msg));
    }
    sqlite3_busy_timeout(db, 10000);
    sqlite3_extended_result_codes(db, 0);
    return db;
}

}  // namespace

Database Database::open(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    Database db(open_handle(path.string(), SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE));
    db.exec("PRAGMA foreign_keys = ON");
    db.create_schema();
    return db;
}

Database Database::open_existing(const std::filesystem::path& path, bool read_only) {
    if (!std::filesystem::exists(path)) {
        throw StorageError(fmt::format("database {} does not exist", path.string()));
    }
    Database db(open_handle(path.string(), read_only ? SQLITE_OPEN_READONLY : SQLITE_OPEN_READWRITE));
    db.exec("PRAGMA foreign_keys = ON");
    return db;
}

Database Database::open_memory() {
    Database db(open_handle(":memory:", SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE));
    db.exec("PRAGMA foreign_keys = ON");
    db.create_schema();
    return db;
}

void Database::create_schema() {
    Statement st(db_, "SELECT count(*) FROM sqlite_master WHERE type = 'table' AND name = 'cve'");
    st.step();
    if (st.int_at(0) > 0) {
        return;
    }
    exec("BEGIN");
    try {
        for (const auto& s : schema_statements()) {
            exec(s);
        }
        exec("COMMIT");
    } catch (...) {
        sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
        throw;
    }
}

RowCounts Database::persist_catalog(const CweCatalog& catalog) {
    RowCounts added;
    Transaction tx(db_);
    Upserter cwe(db_, "cwe", {"cwe_id", "cwe_name", "description", "extended_description", "url", "is_category"});
    for (const auto& e : catalog.entries()) {
        cwe.put({e.cwe_id}, added, e.cwe_id, e.name, e.description, e.extended_description, e.url, e.is_category);
    }
    tx.commit();
    return added;
}

RowCounts Database::persist(const RepositoryBatch& batch) {
    RowCounts added;
    Transaction tx(db_);
    const auto& r = batch.repository;
    Upserter repo(db_, "repository", {"repo_url", "repo_name", "description", "date_created", "date_last_push",
                                      "homepage", "repo_language", "forks_count", "stars_count"});
    repo.put({r.repo_url}, added, r.repo_url, r.repo_name, r.description, r.date_created, r.date_last_push,
             r.homepage, r.repo_language, r.forks_count, r.stars_count);

    Upserter cve(db_, "cve",
                 {"cve_id", "published_date", "last_modified_date", "description", "reference_json",
                  "problemtype_json", "cvss2_vector_string", "cvss2_access_vector", "cvss2_access_complexity",
                  "cvss2_authentication", "cvss2_confidentiality_impact", "cvss2_integrity_impact",
                  "cvss2_availability_impact", "cvss2_base_score", "cvss3_vector_string", "cvss3_attack_vector",
                  "cvss3_attack_complexity", "cvss3_privileges_required", "cvss3_user_interaction", "cvss3_scope",
                  "cvss3_confidentiality_impact", "cvss3_integrity_impact", "cvss3_availability_impact",
                  "cvss3_base_score", "cvss3_base_severity", "exploitability_score", "impact_score", "severity"});
    for (const auto& c : batch.cves) {
        std::optional<std::string> v2[7];
        std::optional<double> v2_score;
        if (c.cvss2) {
            const auto& m = *c.cvss2;
            v2[0] = m.vector_string();
            v2[1] = std::string(label(m.access_vector));
            v2[2] = std::string(label(m.access_complexity));
            v2[3] = std::string(label(m.authentication));
            v2[4] = std::string(label(m.confidentiality_impact));
            v2[5] = std::string(label(m.integrity_impact));
            v2[6] = std::string(label(m.availability_impact));
            v2_score = m.base_score;
        }
        std::optional<std::string> v3[10];
        std::optional<double> v3_score;
        if (c.cvss3) {
            const auto& m = *c.cvss3;
            v3[0] = m.vector_string();
            v3[1] = std::string(label(m.attack_vector));
            v3[2] = std::string(label(m.attack_complexity));
            v3[3] = std::string(label(m.privileges_required));
            v3[4] = std::string(label(m.user_interaction));
            v3[5] = std::string(label(m.scope));
            v3[6] = std::string(label(m.confidentiality_impact));
            v3[7] = std::string(label(m.integrity_impact));
            v3[8] = std::string(label(m.availability_impact));
            if (!m.base_severity.empty()) {
                v3[9] = m.base_severity;
            }
            v3_score = m.base_score;
        }
        cve.put({c.cve_id}, added, c.cve_id, c.published_date, c.last_modified_date, c.description,
                references_json(c), problemtype_json(c), v2[0], v2[1], v2[2], v2[3], v2[4], v2[5], v2[6], v2_score,
                v3[0], v3[1], v3[2], v3[3], v3[4], v3[5], v3[6], v3[7], v3[8], v3_score, v3[9],
                c.exploitability_score, c.impact_score, c.severity);
    }

    Upserter cls(db_, "cwe_classification", {"cve_id", "cwe_id"});
    for (const auto& a : batch.classifications) {
        cls.put({a.cve_id, a.cwe_id}, added, a.cve_id, a.cwe_id);
    }

    Upserter commits(db_, "commits",
                     {"hash", "repo_url", "author_name", "author_date", "committer_date", "message", "is_merge",
                      "num_lines_added", "num_lines_deleted", "dmm_unit_size", "dmm_unit_complexity",
                      "dmm_unit_interfacing"});
    Upserter files(db_, "file_change",
                   {"file_change_id", "hash", "filename", "old_path", "new_path", "change_type", "code_before",
                    "code_after", "diff", "diff_parsed", "num_lines_added", "num_lines_deleted", "nloc",
                    "complexity", "token_count", "programming_language"});
    Upserter methods(db_, "method_change",
                     {"method_change_id", "file_change_id", "name", "signature", "parameters", "start_line",
                      "end_line", "code", "nloc", "complexity", "token_count", "before_change"});
    for (const auto& ex : batch.commits) {
        const auto& c = ex.commit;
        commits.put({c.hash}, added, c.hash, c.repo_url, c.author_name, c.author_date, c.committer_date, c.message,
                    c.is_merge, c.num_lines_added, c.num_lines_deleted, c.dmm_unit_size, c.dmm_unit_complexity,
                    c.dmm_unit_interfacing);
        for (const auto& f : ex.files) {
            files.put({f.file_change_id}, added, f.file_change_id, f.hash, f.filename, f.old_path, f.new_path,
                      change_type_name(f.change_type), f.code_before, f.code_after, f.diff,
                      to_json_text(f.diff_parsed), f.num_lines_added, f.num_lines_deleted, f.nloc, f.complexity,
                      f.token_count, f.programming_language);
        }
        for (const auto& m : ex.methods) {
            methods.put({m.method_change_id}, added, m.method_change_id, m.file_change_id, m.name, m.signature,
                        parameters_json(m.parameters), m.start_line, m.end_line, m.code, m.nloc, m.complexity,
                        m.token_count, m.before_change);
        }
    }

    Upserter fixes(db_, "fixes", {"cve_id", "hash", "repo_url"});
    for (const auto& f : batch.fixes) {
        fixes.put({f.cve_id, f.commit_hash}, added, f.cve_id, f.commit_hash, f.repo_url);
    }
    tx.commit();
    return added;
}

RowCounts Database::counts() const {
    RowCounts out;
    for (const auto table : kTables) {
        Statement st(db_, fmt::format("SELECT count(*) FROM {}", table));
        st.step();
        out[std::string(table)] = st.int_at(0);
    }
    return out;
}

QueryResult Database::query(std::string_view sql) const {
    QueryResult result;
    const char* cursor = sql.data();
    const char* end = sql.data() + sql.size();
    while (cursor < end) {
        sqlite3_stmt* raw = nullptr;
        const char* tail = nullptr;
        if (sqlite3_prepare_v2(db_, cursor, static_cast<int>(end - cursor), &raw, &tail) != SQLITE_OK) {
            throw StorageError(sqlite3_errmsg(db_));
        }
        cursor = tail;
        if (raw == nullptr) {
            continue;  // whitespace or comment
        }
        std::unique_ptr<sqlite3_stmt, int (*)(sqlite3_stmt*)> stmt(raw, sqlite3_finalize);
        QueryResult current;
        const int ncol = sqlite3_column_count(raw);
        for (int i = 0; i < ncol; ++i) {
            current.columns.emplace_back(sqlite3_column_name(raw, i));
        }
        for (;;) {
            const int rc = sqlite3_step(raw);
            if (rc == SQLITE_DONE) {
                break;
            }
            if (rc != SQLITE_ROW) {
                throw StorageError(sqlite3_errmsg(db_));
            }
            std::vector<SqlValue> row;
            row.reserve(static_cast<std::size_t>(ncol));
            for (int i = 0; i < ncol; ++i) {
                switch (sqlite3_column_type(raw, i)) {
                    case SQLITE_INTEGER:
                        row.emplace_back(static_cast<std::int64_t>(sqlite3_column_int64(raw, i)));
                        break;
                    case SQLITE_FLOAT:
                        row.emplace_back(sqlite3_column_double(raw, i));
                        break;
                    case SQLITE_NULL:
                        row.emplace_back(std::monostate{});
                        break;
                    default: {
                        const auto* p = static_cast<const char*>(sqlite3_column_blob(raw, i));
                        const auto n = static_cast<std::size_t>(sqlite3_column_bytes(raw, i));
                        row.emplace_back(p == nullptr ? std::string() : std::string(p, n));
                    }
                }
            }
            current.rows.push_back(std::move(row));
        }
        result = std::move(current);
    }
    return result;
}

std::string Database::export_dump() const {
    std::string out = "PRAGMA foreign_keys=OFF;\nBEGIN TRANSACTION;\n";
    std::vector<std::pair<std::string, std::string>> indexes;
    {
        Statement st(db_, "SELECT name, sql FROM sqlite_master WHERE type = 'index' AND sql IS NOT NULL ORDER BY name");
        while (st.step()) {
            indexes.emplace_back(std::get<std::string>(st.value_at(0)), std::get<std::string>(st.value_at(1)));
        }
    }
    for (const auto table : kTables) {
        Statement ddl(db_, "SELECT sql FROM sqlite_master WHERE type = 'table' AND name = ?1");
        ddl.bind(1, table);
        if (!ddl.step()) {
            throw StorageError(fmt::format("table {} missing", table));
        }
        out += std::get<std::string>(ddl.value_at(0)) + ";\n";
        std::string order;
        for (const auto col : kPrimaryKeys.at(table)) {
            order += fmt::format("{}{}", order.empty() ? "" : ", ", col);
        }
        Statement rows(db_, fmt::format("SELECT * FROM {} ORDER BY {}", table, order));
        const int ncol = sqlite3_column_count(rows.get());
        while (rows.step()) {
            out += fmt::format("INSERT INTO {} VALUES(", table);
            for (int i = 0; i < ncol; ++i) {
                if (i > 0) {
                    out += ',';
                }
                out += sql_literal(rows.value_at(i));
            }
            out += ");\n";
        }
    }
    for (const auto& [name, sql] : indexes) {
        out += sql + ";\n";
    }
    out += "COMMIT;\n";
    return out;
}

IntegrityReport Database::check_integrity() const {
    IntegrityReport report;
    {
        Statement st(db_, "PRAGMA foreign_key_check");
        while (st.step()) {
            report.violations.push_back(fmt::format("foreign key violation in {} (rowid {}) referencing {}",
                                                    to_text(st.value_at(0)), to_text(st.value_at(1)),
                                                    to_text(st.value_at(2))));
        }
    }
    const std::vector<std::pair<std::string_view, std::string_view>> orphan_checks{
        {"cve without fix", "SELECT cve_id FROM cve WHERE cve_id NOT IN (SELECT cve_id FROM fixes)"},
        {"cve without classification",
         "SELECT cve_id FROM cve WHERE cve_id NOT IN (SELECT cve_id FROM cwe_classification)"},
        {"commit without fix", "SELECT hash FROM commits WHERE hash NOT IN (SELECT hash FROM fixes)"},
        {"repository without commit",
         "SELECT repo_url FROM repository WHERE repo_url NOT IN (SELECT repo_url FROM commits)"},
        {"fix whose repository differs from its commit",
         "SELECT fx.cve_id || ' ' || fx.hash FROM fixes fx JOIN commits c ON c.hash = fx.hash "
         "WHERE c.repo_url <> fx.repo_url"},
        {"classification of unknown cve",
         "SELECT cve_id FROM cwe_classification WHERE cve_id NOT IN (SELECT cve_id FROM cve)"},
        {"classification of unknown cwe",
         "SELECT cwe_id FROM cwe_classification WHERE cwe_id NOT IN (SELECT cwe_id FROM cwe)"},
        {"fix of unknown cve", "SELECT cve_id FROM fixes WHERE cve_id NOT IN (SELECT cve_id FROM cve)"},
        {"fix of unknown commit", "SELECT hash FROM fixes WHERE hash NOT IN (SELECT hash FROM commits)"},
        {"commit of unknown repository",
         "SELECT hash FROM commits WHERE repo_url NOT IN (SELECT repo_url FROM repository)"},
        {"file change of unknown commit",
         "SELECT file_change_id FROM file_change WHERE hash NOT IN (SELECT hash FROM commits)"},
        {"method change of unknown file change",
         "SELECT method_change_id FROM method_change WHERE file_change_id NOT IN "
         "(SELECT file_change_id FROM file_change)"},
    };
    for (const auto& [what, sql] : orphan_checks) {
        Statement st(db_, sql);
        while (st.step()) {
            report.violations.push_back(fmt::format("{}: {}", what, to_text(st.value_at(0))));
        }
    }
    return report;
}

void load_dump(const std::filesystem::path& path, std::string_view sql) {
    std::unique_ptr<sqlite3, int (*)(sqlite3*)> db(open_handle(path.string(), SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE),
                                                   sqlite3_close_v2);
    {
        Statement st(db.get(), "SELECT count(*) FROM sqlite_master WHERE type = 'table'");
        st.step();
        if (st.int_at(0) > 0) {
            throw StorageError(fmt::format("{} already contains tables", path.string()));
        }
    }
    char* err = nullptr;
    const std::string text(sql);
    if (sqlite3_exec(db.get(), text.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err != nullptr ? err : "unknown error";
        sqlite3_free(err);
        sqlite3_exec(db.get(), "ROLLBACK", nullptr, nullptr, nullptr);
        throw StorageError("dump replay failed: " + msg);
    }
}

}  // namespace cvefix
