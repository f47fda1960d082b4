// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "cvefix/analytics.hpp"
#include "cvefix/change_extractor.hpp"
#include "cvefix/cwe_catalog.hpp"
#include "cvefix/errors.hpp"
#include "cvefix/repo_meta.hpp"

namespace cvefix {

namespace {

struct RepoWork {
    std::string repo_url;
    std::vector<FixReference> refs;  // sorted by (cve_id, commit_hash)
};

struct RepoOutcome {
    std::optional<RepositoryBatch> batch;
    std::optional<SkippedRepository> skipped;
    std::vector<DroppedReference> dropped;
    std::vector<std::string> warnings;
};

RepoOutcome process_repository(const RepoWork& work, const Config& config,
                               const std::map<std::string, const CveRecord*, std::less<>>& cves,
                               const std::map<std::string, std::vector<CweAssignment>, std::less<>>& assignments,
                               RepoMetaClient& meta_client, const LanguageDetector& detector) {
    RepoOutcome out;
    const auto skip = [&](const std::string& reason) {
        out.skipped = SkippedRepository{work.repo_url, reason};
        return std::move(out);
    };
    RepositoryBatch batch;
    try {
        batch.repository = meta_client.fetch_meta(work.refs.front());
    } catch (const Error& e) {
        return skip(e.what());
    }
    batch.repository.repo_url = work.repo_url;

    std::optional<RepoHandle> handle;
    try {
        handle.emplace(clone_repo(work.repo_url, config.workdir,
                                  CloneOptions{config.mirror_dir, config.keep_clones}));
    } catch (const Error& e) {
        return skip(e.what());
    }

    std::map<std::string, std::size_t> extracted;  // full hash -> index in batch.commits
    std::set<std::pair<std::string, std::string>> fix_keys;
    std::set<std::string> kept_cves;
    for (const auto& ref : work.refs) {
        const auto drop = [&](const std::string& reason) {
            out.dropped.push_back({ref.cve_id, ref.repo_url, ref.commit_hash, reason});
        };
        std::string full;
        try {
            full = handle->resolve(ref.commit_hash);
        } catch (const CommitNotFound& e) {
            drop(e.what());
            continue;
        } catch (const Error& e) {
            drop(e.what());
            continue;
        }
        if (!extracted.contains(full)) {
            try {
                auto ex = extract(*handle, full, detector);
                for (const auto& w : ex.warnings) {
                    out.warnings.push_back(fmt::format("{} {}: {}", work.repo_url, full.substr(0, 12), w));
                }
                extracted.emplace(full, batch.commits.size());
                batch.commits.push_back(std::move(ex));
            } catch (const Error& e) {
                drop(e.what());
                continue;
            }
        }
        if (!fix_keys.emplace(ref.cve_id, full).second) {
            continue;
        }
        batch.fixes.push_back(FixReference{ref.cve_id, work.repo_url, full, ref.forge});
        kept_cves.insert(ref.cve_id);
    }
    for (const auto& id : kept_cves) {
        batch.cves.push_back(*cves.at(id));
        if (const auto it = assignments.find(id); it != assignments.end()) {
            batch.classifications.insert(batch.classifications.end(), it->second.begin(), it->second.end());
        }
    }
    if (batch.commits.empty()) {
        return skip("no fix commit could be extracted");
    }
    out.batch = std::move(batch);
    return out;
}

// Drops fixes, CVEs and classifications not backed by a commit left in the batch.
void prune_to_commits(RepositoryBatch& batch) {
    std::set<std::string> hashes;
    for (const auto& c : batch.commits) {
        hashes.insert(c.commit.hash);
    }
    std::erase_if(batch.fixes, [&](const FixReference& f) { return !hashes.contains(f.commit_hash); });
    std::set<std::string> cves;
    for (const auto& f : batch.fixes) {
        cves.insert(f.cve_id);
    }
    std::erase_if(batch.cves, [&](const CveRecord& c) { return !cves.contains(c.cve_id); });
    std::erase_if(batch.classifications, [&](const CweAssignment& a) { return !cves.contains(a.cve_id); });
}

void truncate_batch(RepositoryBatch& batch, std::size_t limit) {
    if (batch.commits.size() <= limit) {
        return;
    }
    batch.commits.resize(limit);
    prune_to_commits(batch);
}

// Removes commits already stored under another repository (a fork sharing history).
void drop_foreign_commits(RepositoryBatch& batch, const std::map<std::string, std::string>& owners,
                          std::vector<DroppedReference>& dropped) {
    std::set<std::string> foreign;
    for (const auto& c : batch.commits) {
        const auto it = owners.find(c.commit.hash);
        if (it != owners.end() && it->second != batch.repository.repo_url) {
            foreign.insert(c.commit.hash);
        }
    }
    if (foreign.empty()) {
        return;
    }
    for (const auto& f : batch.fixes) {
        if (foreign.contains(f.commit_hash)) {
            dropped.push_back({f.cve_id, f.repo_url, f.commit_hash,
                               fmt::format("commit already recorded under {}", owners.at(f.commit_hash))});
        }
    }
    std::erase_if(batch.commits, [&](const CommitExtraction& c) { return foreign.contains(c.commit.hash); });
    prune_to_commits(batch);
}

bool cancelled(const PipelineContext& context) {
    return context.cancel != nullptr && context.cancel->load();
}

}  // namespace

int RunReport::exit_code() const {
    if (!skipped.empty() || !feed_failures.empty() || interrupted) {
        return 2;
    }
    return 0;
}

std::int64_t RunReport::total_new_rows() const {
    std::int64_t total = 0;
    for (const auto& [table, n] : new_rows) {
        total += n;
    }
    return total;
}

std::string RunReport::to_text() const {
    std::string out;
    out += fmt::format("feed documents:      {}\n", feed_documents);
    out += fmt::format("cves parsed:         {} ({} rejected, {} malformed)\n", cves_parsed, cves_rejected,
                       feed_item_errors);
    out += fmt::format("cves with fixes:     {}\n", cves_with_fixes);
    out += fmt::format("references:          {} commit, {} pull request, {} compare, {} other forge page, {} "
                       "unsupported\n",
                       reference_stats.commit, reference_stats.pull_request, reference_stats.compare,
                       reference_stats.other_forge_page, reference_stats.unsupported);
    out += fmt::format("fix references:      {}\n", fix_references);
    out += fmt::format("repositories:        {}\n", repositories);
    out += fmt::format("commits persisted:   {}{}\n", commits_persisted,
                       sample_limit_reached ? " (sample limit reached)" : "");
    out += "rows (total / new):\n";
    for (const auto table : kTables) {
        const auto total = table_counts.find(table);
        const auto added = new_rows.find(table);
        out += fmt::format("  {:<20} {:>8} / {}\n", table, total == table_counts.end() ? 0 : total->second,
                           added == new_rows.end() ? 0 : added->second);
    }
    for (const auto& f : feed_failures) {
        out += fmt::format("feed failure {}: {}\n", f.year, f.message);
    }
    for (const auto& s : skipped) {
        out += fmt::format("skipped {}: {}\n", s.repo_url, s.reason);
    }
    for (const auto& d : dropped) {
        out += fmt::format("dropped {} {}@{}: {}\n", d.cve_id, d.repo_url, d.commit_hash, d.reason);
    }
    if (interrupted) {
        out += "run interrupted\n";
    }
    out += fmt::format("elapsed:             {:.2f}s\n", elapsed_seconds);
    return out;
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["feed_documents"] = feed_documents;
    j["cves_parsed"] = cves_parsed;
    j["cves_rejected"] = cves_rejected;
    j["feed_item_errors"] = feed_item_errors;
    j["cves_with_fixes"] = cves_with_fixes;
    j["fix_references"] = fix_references;
    j["repositories"] = repositories;
    j["commits_persisted"] = commits_persisted;
    j["sample_limit_reached"] = sample_limit_reached;
    j["interrupted"] = interrupted;
    j["new_rows"] = nlohmann::ordered_json::object();
    j["table_counts"] = nlohmann::ordered_json::object();
    for (const auto table : kTables) {
        const std::string name(table);
        j["new_rows"][name] = new_rows.contains(name) ? new_rows.at(name) : 0;
        j["table_counts"][name] = table_counts.contains(name) ? table_counts.at(name) : 0;
    }
    j["feed_failures"] = nlohmann::ordered_json::array();
    for (const auto& f : feed_failures) {
        j["feed_failures"].push_back({{"year", f.year}, {"message", f.message}});
    }
    j["skipped"] = nlohmann::ordered_json::array();
    for (const auto& s : skipped) {
        j["skipped"].push_back({{"repo_url", s.repo_url}, {"reason", s.reason}});
    }
    j["dropped"] = nlohmann::ordered_json::array();
    for (const auto& d : dropped) {
        j["dropped"].push_back(
            {{"cve_id", d.cve_id}, {"repo_url", d.repo_url}, {"commit_hash", d.commit_hash}, {"reason", d.reason}});
    }
    j["warnings"] = warnings;
    j["exit_code"] = exit_code();
    j["elapsed_seconds"] = elapsed_seconds;
    return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::unique_ptr<HttpTransport> make_transport(const Config& config) {
    if (config.fixtures_dir) {
        return std::make_unique<ReplayTransport>(*config.fixtures_dir);
    }
    return std::make_unique<LiveTransport>();
}

RunReport run_collect(const Config& config, const PipelineContext& context) {
    validate(config);
    const auto started = std::chrono::steady_clock::now();
    RunReport report;

    std::unique_ptr<HttpTransport> own_http;
    HttpTransport* http = context.http;
    if (http == nullptr) {
        own_http = make_transport(config);
        http = own_http.get();
    }
    SystemClock system_clock;
    Clock& clock = context.clock != nullptr ? *context.clock : system_clock;
    const HeuristicLanguageDetector default_detector;
    const LanguageDetector& detector = context.detector != nullptr ? *context.detector : default_detector;

    auto db = Database::open(config.database_path);

    // Feeds.
    FeedFetchOptions feed_options;
    feed_options.cache_dir = config.cache_dir;
    feed_options.base_url = config.nvd_base_url;
    feed_options.force_refresh = config.force_refresh;
    auto fetched = fetch_feeds(config.years, feed_options, *http, clock);
    report.feed_documents = fetched.documents.size();
    report.feed_failures = fetched.failures;
    std::vector<ParsedFeed> parsed;
    for (const auto& doc : fetched.documents) {
        auto feed = parse_feed(doc.json);
        report.cves_parsed += feed.records.size();
        report.cves_rejected += feed.rejected;
        report.feed_item_errors += feed.errors.size();
        for (const auto& e : feed.errors) {
            report.warnings.push_back(fmt::format("feed {} item {} ({}): {}", doc.year, e.item_index, e.cve_id,
                                                  e.message));
        }
        for (const auto& w : feed.warnings) {
            report.warnings.push_back(fmt::format("feed {} item {} ({}): {}", doc.year, w.item_index, w.cve_id,
                                                  w.message));
        }
        parsed.push_back(std::move(feed));
    }
    fetched.documents.clear();
    std::size_t duplicates = 0;
    const auto merged = merge_records(std::move(parsed), &duplicates);
    if (duplicates > 0) {
        report.warnings.push_back(fmt::format("{} CVE ids appeared in more than one feed", duplicates));
    }
    const auto records = filter_fix_referencing(merged);
    report.cves_with_fixes = records.size();
    spdlog::info("{} CVE records, {} with fix references", merged.size(), records.size());

    // CWE catalog and classifications.
    auto catalog = load_catalog(config.cwe_path, report.warnings);
    std::vector<CweAssignment> all_assignments;
    std::map<std::string, std::vector<CweAssignment>, std::less<>> assignments;
    for (const auto& r : records) {
        auto a = assign(r);
        all_assignments.insert(all_assignments.end(), a.begin(), a.end());
        assignments[r.cve_id] = std::move(a);
    }
    cover_assignments(catalog, all_assignments, report.warnings);
    for (const auto& [table, n] : db.persist_catalog(catalog)) {
        report.new_rows[table] += n;
    }

    // References grouped by repository.
    std::map<std::string, const CveRecord*, std::less<>> by_id;
    std::vector<FixReference> refs;
    for (const auto& r : records) {
        by_id[r.cve_id] = &r;
        for (const auto& entry : r.references) {
            report.reference_stats.count(classify_reference(entry.url));
            if (auto ref = resolve(entry.url, r.cve_id)) {
                refs.push_back(std::move(*ref));
            }
        }
    }
    refs = dedupe(refs);
    report.fix_references = refs.size();
    std::map<std::string, RepoWork> grouped;
    for (auto& ref : refs) {
        auto& w = grouped[ref.repo_url];
        w.repo_url = ref.repo_url;
        w.refs.push_back(std::move(ref));
    }
    std::vector<RepoWork> work;
    for (auto& [url, w] : grouped) {
        std::sort(w.refs.begin(), w.refs.end(), [](const FixReference& a, const FixReference& b) {
            return std::tie(a.cve_id, a.commit_hash) < std::tie(b.cve_id, b.commit_hash);
        });
        work.push_back(std::move(w));
    }
    report.repositories = work.size();

    // Commits already stored, so reruns keep each hash under its first repository.
    std::map<std::string, std::string> owners;
    for (const auto& row : db.query("SELECT hash, repo_url FROM commits").rows) {
        owners.emplace(to_text(row[0]), to_text(row[1]));
    }

    std::filesystem::create_directories(config.workdir);
    RepoMetaClient meta_client(*http, clock, config.credentials());

    std::mutex mutex;
    std::condition_variable ready;
    std::vector<std::optional<RepoOutcome>> outcomes(work.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    const auto worker = [&] {
        for (;;) {
            if (stop.load() || cancelled(context)) {
                return;
            }
            const auto i = next.fetch_add(1);
            if (i >= work.size()) {
                return;
            }
            spdlog::info("[{}/{}] {}", i + 1, work.size(), work[i].repo_url);
            RepoOutcome outcome;
            try {
                outcome = process_repository(work[i], config, by_id, assignments, meta_client, detector);
            } catch (const std::exception& e) {
                outcome.skipped = SkippedRepository{work[i].repo_url, e.what()};
            }
            std::lock_guard lock(mutex);
            outcomes[i] = std::move(outcome);
            ready.notify_all();
        }
    };
    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(config.worker_count),
                                                 std::max<std::size_t>(work.size(), 1));
    std::vector<std::thread> threads;
    struct Joiner {
        std::atomic<bool>& stop;
        std::vector<std::thread>& threads;
        ~Joiner() {
            stop = true;
            for (auto& t : threads) {
                if (t.joinable()) {
                    t.join();
                }
            }
        }
    } joiner{stop, threads};
    for (std::size_t t = 0; t < n_workers; ++t) {
        threads.emplace_back(worker);
    }

    // Single writer, in repository order.
    const auto limit = static_cast<std::size_t>(config.sample_limit);
    for (std::size_t i = 0; i < work.size(); ++i) {
        std::optional<RepoOutcome> outcome;
        {
            std::unique_lock lock(mutex);
            // A repository never claimed by a worker after cancellation will not arrive.
            while (!outcomes[i] && !(cancelled(context) && next.load() <= i)) {
                ready.wait_for(lock, std::chrono::milliseconds(200));
            }
            if (outcomes[i]) {
                outcome = std::move(outcomes[i]);
            }
        }
        if (!outcome) {
            report.interrupted = true;
            break;
        }
        report.warnings.insert(report.warnings.end(), outcome->warnings.begin(), outcome->warnings.end());
        report.dropped.insert(report.dropped.end(), outcome->dropped.begin(), outcome->dropped.end());
        if (outcome->skipped) {
            spdlog::warn("skipping {}: {}", outcome->skipped->repo_url, outcome->skipped->reason);
            report.skipped.push_back(std::move(*outcome->skipped));
            continue;
        }
        auto& batch = *outcome->batch;
        drop_foreign_commits(batch, owners, report.dropped);
        if (batch.commits.empty()) {
            report.skipped.push_back({batch.repository.repo_url, "every fix commit is recorded under another repository"});
            continue;
        }
        if (limit > 0) {
            truncate_batch(batch, limit - report.commits_persisted);
        }
        try {
            for (const auto& [table, n] : db.persist(batch)) {
                report.new_rows[table] += n;
            }
        } catch (const StorageError& e) {
            spdlog::error("could not store {}: {}", batch.repository.repo_url, e.what());
            report.skipped.push_back({batch.repository.repo_url, fmt::format("storage: {}", e.what())});
            continue;
        }
        for (const auto& c : batch.commits) {
            owners.emplace(c.commit.hash, batch.repository.repo_url);
        }
        report.commits_persisted += batch.commits.size();
        if (limit > 0 && report.commits_persisted >= limit) {
            report.sample_limit_reached = true;
            stop = true;
            break;
        }
    }
    stop = true;
    for (auto& t : threads) {
        t.join();
    }
    threads.clear();
    report.table_counts = db.counts();
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

std::vector<std::filesystem::path> run_report(const Config& config, const std::vector<std::string>& selection,
                                              const std::filesystem::path& out_dir) {
    if (!std::filesystem::exists(config.database_path)) {
        throw StorageError(fmt::format("database_path {} does not exist; run `cvefix collect` first or set "
                                       "database_path",
                                       config.database_path.string()));
    }
    const auto db = Database::open_existing(config.database_path);
    std::vector<std::string> names;
    for (const auto& s : selection) {
        if (s == "all") {
            for (const auto name : analytics::kReports) {
                names.emplace_back(name);
            }
        } else {
            if (std::find(analytics::kReports.begin(), analytics::kReports.end(), s) == analytics::kReports.end()) {
                throw std::invalid_argument(fmt::format("unknown report '{}'", s));
            }
            names.push_back(s);
        }
    }
    std::vector<std::string> unique;
    for (const auto& n : names) {
        if (std::find(unique.begin(), unique.end(), n) == unique.end()) {
            unique.push_back(n);
        }
    }
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& name : unique) {
        const auto path = out_dir / (name + ".csv");
        write_file(path, analytics::report(db, name).to_csv());
        written.push_back(path);
    }
    return written;
}

}  // namespace cvefix
