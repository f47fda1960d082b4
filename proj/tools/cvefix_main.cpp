// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <algorithm>
#include <atomic>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cvefix/codec.hpp"
#include "cvefix/config.hpp"
#include "cvefix/csv.hpp"
#include "cvefix/http.hpp"
#include "cvefix/pipeline.hpp"
#include "cvefix/storage.hpp"

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void on_signal(int) {
    g_cancel = true;
}

std::string option_name(std::string_view key) {
    std::string out = "--";
    for (const char c : key) {
        out.push_back(c == '_' ? '-' : c);
    }
    return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collect CVE fix commits into a relational dataset and report on it"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cvefix 0.1.0");

    std::string config_path;
    std::string log_level = "info";
    app.add_option("-c,--config", config_path, "INI configuration file (default: ./.CVEfixes.ini when present)");
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")->capture_default_str();

    std::map<std::string, std::string> overrides;
    for (const auto key : cvefix::config_keys()) {
        app.add_option_function<std::string>(
               option_name(key), [&overrides, key](const std::string& v) { overrides[std::string(key)] = v; },
               fmt::format("overrides config key {}", key))
            ->configurable(false);
    }

    auto* collect = app.add_subcommand("collect", "Run the collection pipeline");
    std::string report_json;
    collect->add_option("--report-json", report_json, "Also write the run report as JSON");

    auto* report = app.add_subcommand("report", "Write analytics CSV files");
    std::vector<std::string> selection{"all"};
    std::string out_dir = "reports";
    report->add_option("reports", selection,
                       "summary, top_projects, cwe_distribution, days_to_fix, per_project_aggregates or all")
        ->capture_default_str();
    report->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();

    auto* dump = app.add_subcommand("export-dump", "Write an SQL text dump (gzip when the name ends in .gz)");
    std::string dump_path;
    dump->add_option("output", dump_path, "Output file, or - for stdout")->required();

    auto* query = app.add_subcommand("query", "Run SQL against the database and print CSV");
    std::string sql;
    std::string sql_file;
    auto* sql_opt = query->add_option("sql", sql, "SQL text");
    query->add_option("-f,--file", sql_file, "Read SQL from a file")->excludes(sql_opt);

    for (auto* sub : {collect, report, dump, query}) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    auto logger = spdlog::stderr_color_mt("cvefix");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::from_str(log_level));

    try {
        auto config = cvefix::default_config();
        if (!config_path.empty()) {
            cvefix::apply_ini(config, config_path);
        } else if (std::filesystem::exists(".CVEfixes.ini")) {
            cvefix::apply_ini(config, ".CVEfixes.ini");
        }
        cvefix::apply_env(config);
        for (const auto& [key, value] : overrides) {
            cvefix::set_config_value(config, key, value);
        }
        cvefix::validate(config);

        if (*collect) {
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            cvefix::PipelineContext context;
            context.cancel = &g_cancel;
            const auto run = cvefix::run_collect(config, context);
            std::cout << run.to_text();
            if (!report_json.empty()) {
                cvefix::write_file(report_json, run.to_json());
            }
            return run.exit_code();
        }
        if (*report) {
            for (const auto& path : cvefix::run_report(config, selection, out_dir)) {
                std::cout << path.string() << '\n';
            }
            return 0;
        }
        if (*dump) {
            if (!std::filesystem::exists(config.database_path)) {
                throw cvefix::StorageError(
                    fmt::format("database_path {} does not exist", config.database_path.string()));
            }
            const auto db = cvefix::Database::open_existing(config.database_path);
            const auto text = db.export_dump();
            if (dump_path == "-") {
                std::cout << text;
            } else if (ends_with(dump_path, ".gz")) {
                cvefix::write_file(dump_path, cvefix::gzip(text));
            } else {
                cvefix::write_file(dump_path, text);
            }
            return 0;
        }
        if (*query) {
            if (!std::filesystem::exists(config.database_path)) {
                throw cvefix::StorageError(
                    fmt::format("database_path {} does not exist", config.database_path.string()));
            }
            if (!sql_file.empty()) {
                sql = cvefix::read_file(sql_file);
            }
            if (sql.empty()) {
                throw cvefix::ConfigError("no SQL given");
            }
            const auto db = cvefix::Database::open_existing(config.database_path);
            const auto result = db.query(sql);
            std::cout << cvefix::csv::format_row(result.columns);
            for (const auto& row : result.rows) {
                cvefix::csv::Row fields;
                std::transform(row.begin(), row.end(), std::back_inserter(fields),
                               [](const cvefix::SqlValue& v) { return cvefix::to_text(v); });
                std::cout << cvefix::csv::format_row(fields);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        spdlog::critical("{}", e.what());
        return 1;
    }
    return 1;
}
