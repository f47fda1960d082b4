// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "cvefix/clock.hpp"
#include "cvefix/config.hpp"
#include "cvefix/http.hpp"
#include "cvefix/language.hpp"
#include "cvefix/reference_resolver.hpp"
#include "cvefix/storage.hpp"

namespace cvefix {

struct SkippedRepository {
    std::string repo_url;
    std::string reason;
};

struct DroppedReference {
    std::string cve_id;
    std::string repo_url;
    std::string commit_hash;
    std::string reason;
};

struct RunReport {
    std::size_t feed_documents = 0;
    std::vector<FeedFailure> feed_failures;
    std::size_t cves_parsed = 0;
    std::size_t cves_rejected = 0;
    std::size_t feed_item_errors = 0;
    std::size_t cves_with_fixes = 0;
    ReferenceStats reference_stats;
    std::size_t fix_references = 0;  ///< after dedupe
    std::size_t repositories = 0;
    std::size_t commits_persisted = 0;  ///< commits in persisted batches, new or not
    RowCounts new_rows;
    RowCounts table_counts;
    std::vector<SkippedRepository> skipped;
    std::vector<DroppedReference> dropped;
    std::vector<std::string> warnings;
    bool sample_limit_reached = false;
    bool interrupted = false;
    double elapsed_seconds = 0;

    /// 0 for a complete run, 2 when repositories were skipped, feeds failed or the run was interrupted.
    [[nodiscard]] int exit_code() const;
    [[nodiscard]] std::int64_t total_new_rows() const;
    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string to_json() const;
};

/// Collaborators a run may use instead of the defaults built from the config.
struct PipelineContext {
    HttpTransport* http = nullptr;
    Clock* clock = nullptr;
    const LanguageDetector* detector = nullptr;
    /// Set from a signal handler to finish in-flight repositories and stop.
    const std::atomic<bool>* cancel = nullptr;
};

/// Replay transport when fixtures_dir is set, otherwise the live HTTPS client.
[[nodiscard]] std::unique_ptr<HttpTransport> make_transport(const Config& config);

/// feeds, CWE catalog, references, repository metadata, extraction, storage. Throws on fatal errors.
[[nodiscard]] RunReport run_collect(const Config& config, const PipelineContext& context = {});

/// Writes `<name>.csv` for each selected report ("all" selects every one) into out_dir.
/// Throws StorageError naming database_path when the database is missing.
std::vector<std::filesystem::path> run_report(const Config& config, const std::vector<std::string>& selection,
                                              const std::filesystem::path& out_dir);

}  // namespace cvefix
