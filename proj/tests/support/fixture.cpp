// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "fixture.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "cvefix/codec.hpp"
#include "cvefix/git.hpp"
#include "cvefix/http.hpp"

namespace cvefix::testing {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

TempDir::TempDir(const std::string& prefix) {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    for (;;) {
        auto candidate = fs::temp_directory_path() /
                         fmt::format("{}-{:08x}-{}", prefix, rd(), counter.fetch_add(1));
        if (fs::create_directories(candidate)) {
            path_ = candidate;
            return;
        }
    }
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string git(const fs::path& repo, const std::vector<std::string>& args, const std::string& date) {
    std::vector<std::string> argv{"git", "-C", repo.string(), "-c", "commit.gpgsign=false",
                                  "-c", "init.defaultBranch=main", "-c", "core.autocrlf=false"};
    argv.insert(argv.end(), args.begin(), args.end());
    const std::vector<std::string> env{
        "GIT_AUTHOR_NAME=Fixture Author",  "GIT_AUTHOR_EMAIL=author@example.org",
        "GIT_COMMITTER_NAME=Fixture Bot",  "GIT_COMMITTER_EMAIL=bot@example.org",
        "GIT_AUTHOR_DATE=" + date,         "GIT_COMMITTER_DATE=" + date,
        "GIT_CONFIG_NOSYSTEM=1",           "GIT_CONFIG_GLOBAL=/dev/null",
    };
    auto r = run_process(argv, env);
    if (r.exit_code != 0) {
        throw std::runtime_error(fmt::format("git {} failed: {}", fmt::join(args, " "), r.err));
    }
    while (!r.out.empty() && (r.out.back() == '\n' || r.out.back() == '\r')) {
        r.out.pop_back();
    }
    return r.out;
}

void put(const fs::path& repo, const std::string& relative, const std::string& content) {
    write_file(repo / relative, content);
}

namespace {

std::string commit_all(const fs::path& repo, const std::string& message, const std::string& date) {
    git(repo, {"add", "-A"}, date);
    git(repo, {"commit", "-q", "-m", message}, date);
    return git(repo, {"rev-parse", "HEAD"}, date);
}

const char* const kParseV0 = R"(#include <string.h>
#include "util.h"

int parse_header(const char *buf, int len) {
    int n = 0;
    if (len > 0) {
        n = buf[0];
    }
    return n;
}

int parse_body(const char *buf, int len, char *out) {
    memcpy(out, buf, len);
    return len;
}

static int checksum(const char *buf, int len) {
    int sum = 0;
    for (int i = 0; i < len; i++) {
        sum += buf[i];
    }
    return sum;
}
)";

const char* const kParseV1 = R"(#include <string.h>
#include "util.h"

int parse_header(const char *buf, int len) {
    int n = 0;
    if (buf != NULL && len > 0) {
        n = buf[0];
    }
    return n;
}

int parse_body(const char *buf, int len, char *out) {
    memcpy(out, buf, len);
    return len;
}

static int checksum(const char *buf, int len) {
    int sum = 0;
    for (int i = 0; i < len; i++) {
        sum += buf[i];
    }
    return sum;
}
)";

const char* const kParseV2 = R"(#include <string.h>
#include "util.h"

int parse_header(const char *buf, int len) {
    int n = 0;
    if (buf != NULL && len > 0) {
        n = buf[0];
    }
    return n;
}

int parse_body(const char *buf, int len, char *out) {
    if (len > MAX_LEN) {
        return -1;
    }
    memcpy(out, buf, len);
    return len;
}

static int checksum(const char *buf, int len) {
    int sum = 0;
    for (int i = 0; i < len; i++) {
        sum += buf[i];
    }
    return sum;
}
)";

const char* const kParseV4 = R"(#include <string.h>
#include "util.h"

int parse_header(const char *buf, int len) {
    int n = 0;
    if (buf != NULL && len > 0) {
        n = buf[0];
    }
    return n;
}

int parse_body(const char *buf, int len, char *out) {
    if (len > MAX_LEN) {
        return -1;
    }
    memcpy(out, buf, len);
    return len;
}

static int checksum(const char *buf, int len) {
    int sum = 0;
    if (buf == NULL) {
        return 0;
    }
    for (int i = 0; i < len; i++) {
        sum += (unsigned char)buf[i];
    }
    return sum;
}
)";

const char* const kUtilV0 = R"(#ifndef UTIL_H
#define UTIL_H
#define MAX_LEN 64
int clamp(int v, int lo, int hi);
#endif
)";

const char* const kUtilV3 = R"(#ifndef UTIL_H
#define UTIL_H
#define MAX_LEN 32
int clamp(int v, int lo, int hi);
int safe_len(int len);
#endif
)";

const char* const kViewsV0 = R"(import html


def render(name):
    return "<p>" + name + "</p>"


def lookup(db, key):
    if key in db:
        return db[key]
    return None
)";

const char* const kViewsV1 = R"(import html


def render(name):
    safe = html.escape(name)
    return "<p>" + safe + "</p>"


def lookup(db, key):
    if key in db:
        return db[key]
    return None
)";

const char* const kViewsV3 = R"(import html


def render(name):
    safe = html.escape(name)
    return "<p>" + safe + "</p>"


def lookup(db, key):
    """Return the value stored under key."""
    if key in db:
        return db[key]
    return None
)";

const char* const kAppV0 = R"(function show(msg) {
    document.body.innerHTML = msg;
}
)";

const char* const kAppV2 = R"(function show(msg) {
    const text = String(msg);
    document.body.textContent = text;
}
)";

const char* const kGemV0 = R"(module Gemkit
  def self.fetch(path)
    File.read(path)
  end

  def self.version
    "1.0"
  end
end
)";

const char* const kGemV1 = R"(module Gemkit
  def self.fetch(path)
    raise ArgumentError, "bad path" if path.include?("..")
    raise ArgumentError, "absolute path" if path.start_with?("/")
    File.read(path)
  end

  def self.version
    "1.0"
  end
end
)";

const char* const kSanitize = R"(module Gemkit
  module Sanitize
    def self.clean(path)
      path.delete("\0")
    end
  end
end
)";

std::string png_bytes(unsigned char seed) {
    std::string out("\x89PNG\r\n\x1a\n\0\0\0\rIHDR", 16);
    for (int i = 0; i < 48; ++i) {
        out.push_back(static_cast<char>((i * 37 + seed) & 0xFF));
    }
    return out;
}

fs::path init_repo(const fs::path& mirror, const std::string& host_path) {
    const auto dir = mirror / host_path;
    fs::create_directories(dir);
    git(dir, {"init", "-q"});
    return dir;
}

void build_libparse(const fs::path& dir, std::map<std::string, std::string>& commits) {
    put(dir, "src/parse.c", kParseV0);
    put(dir, "src/util.h", kUtilV0);
    put(dir, "docs/logo.png", png_bytes(1));
    put(dir, "README.md", "# libparse\n");
    commits["a0"] = commit_all(dir, "Initial import", "2020-01-01T10:00:00Z");

    put(dir, "src/parse.c", kParseV1);
    commits["a1"] = commit_all(dir, "Reject NULL buffers in parse_header", "2020-02-10T12:00:00Z");

    put(dir, "src/parse.c", kParseV2);
    put(dir, "docs/logo.png", png_bytes(7));
    commits["a2"] = commit_all(dir, "Bound parse_body copies\n\nFixes two overflow reports.", "2020-03-01T09:00:00Z");

    git(dir, {"mv", "src/util.h", "src/util_compat.h"}, "2020-04-01T00:00:00Z");
    put(dir, "src/util_compat.h", kUtilV3);
    commits["a3"] = commit_all(dir, "Shrink MAX_LEN and rename util header", "2020-04-01T00:00:00Z");

    put(dir, "src/parse.c", kParseV4);
    commits["a4"] = commit_all(dir, "Guard checksum against NULL", "2020-04-03T00:00:00Z");
}

void build_webtool(const fs::path& dir, std::map<std::string, std::string>& commits) {
    put(dir, "app/views.py", kViewsV0);
    put(dir, "static/app.js", kAppV0);
    commits["b0"] = commit_all(dir, "Initial version", "2021-01-05T08:00:00Z");

    put(dir, "app/views.py", kViewsV1);
    commits["b1"] = commit_all(dir, "Escape rendered names", "2021-02-01T10:00:00Z");

    git(dir, {"checkout", "-q", "-b", "feature"}, "2021-02-10T10:00:00Z");
    put(dir, "static/app.js", kAppV2);
    commits["b2"] = commit_all(dir, "Use textContent", "2021-02-10T10:00:00Z");

    git(dir, {"checkout", "-q", "main"}, "2021-02-11T10:00:00Z");
    put(dir, "app/views.py", kViewsV3);
    commits["b3"] = commit_all(dir, "Document lookup", "2021-02-11T10:00:00Z");

    git(dir, {"merge", "-q", "--no-ff", "-m", "Merge branch 'feature'", "feature"}, "2021-02-12T10:00:00Z");
    commits["b4"] = git(dir, {"rev-parse", "HEAD"});
}

void build_gemkit(const fs::path& dir, std::map<std::string, std::string>& commits) {
    put(dir, "lib/gemkit.rb", kGemV0);
    commits["c0"] = commit_all(dir, "Initial gem", "2021-03-01T00:00:00Z");

    put(dir, "lib/gemkit.rb", kGemV1);
    put(dir, "lib/gemkit/sanitize.rb", kSanitize);
    commits["c1"] = commit_all(dir, "Reject traversal in fetch", "2021-03-15T00:00:00Z");
}

ordered_json reference(const std::string& url, std::vector<std::string> tags = {"Patch", "Third Party Advisory"}) {
    return {{"url", url}, {"name", url}, {"refsource", "MISC"}, {"tags", tags}};
}

ordered_json cvss2(const std::string& vector, double base, double expl, double impact, const std::string& severity) {
    auto field = [&](const std::string& key) {
        const auto padded = "/" + vector;
        const auto pos = padded.find("/" + key + ":");
        return padded.substr(pos + key.size() + 2, 1);
    };
    static const std::map<std::string, std::string> av{{"N", "NETWORK"}, {"A", "ADJACENT_NETWORK"}, {"L", "LOCAL"}};
    static const std::map<std::string, std::string> ac{{"L", "LOW"}, {"M", "MEDIUM"}, {"H", "HIGH"}};
    static const std::map<std::string, std::string> au{{"N", "NONE"}, {"S", "SINGLE"}, {"M", "MULTIPLE"}};
    static const std::map<std::string, std::string> cia{{"N", "NONE"}, {"P", "PARTIAL"}, {"C", "COMPLETE"}};
    return {{"cvssV2",
             {{"version", "2.0"},
              {"vectorString", vector},
              {"accessVector", av.at(field("AV"))},
              {"accessComplexity", ac.at(field("AC"))},
              {"authentication", au.at(field("Au"))},
              {"confidentialityImpact", cia.at(field("C"))},
              {"integrityImpact", cia.at(field("I"))},
              {"availabilityImpact", cia.at(field("A"))},
              {"baseScore", base}}},
            {"severity", severity},
            {"exploitabilityScore", expl},
            {"impactScore", impact},
            {"acInsufInfo", false},
            {"obtainAllPrivilege", false},
            {"obtainUserPrivilege", false},
            {"obtainOtherPrivilege", false},
            {"userInteractionRequired", false}};
}

ordered_json cvss3(const std::string& vector, double base, const std::string& severity, double expl, double impact) {
    auto field = [&](const std::string& key) {
        const auto pos = vector.find("/" + key + ":");
        return vector.substr(pos + key.size() + 2, 1);
    };
    static const std::map<std::string, std::string> av{
        {"N", "NETWORK"}, {"A", "ADJACENT_NETWORK"}, {"L", "LOCAL"}, {"P", "PHYSICAL"}};
    static const std::map<std::string, std::string> lh{{"L", "LOW"}, {"H", "HIGH"}, {"N", "NONE"}};
    static const std::map<std::string, std::string> ui{{"N", "NONE"}, {"R", "REQUIRED"}};
    static const std::map<std::string, std::string> scope{{"U", "UNCHANGED"}, {"C", "CHANGED"}};
    return {{"cvssV3",
             {{"version", "3.1"},
              {"vectorString", vector},
              {"attackVector", av.at(field("AV"))},
              {"attackComplexity", lh.at(field("AC"))},
              {"privilegesRequired", lh.at(field("PR"))},
              {"userInteraction", ui.at(field("UI"))},
              {"scope", scope.at(field("S"))},
              {"confidentialityImpact", lh.at(field("C"))},
              {"integrityImpact", lh.at(field("I"))},
              {"availabilityImpact", lh.at(field("A"))},
              {"baseScore", base},
              {"baseSeverity", severity}}},
            {"exploitabilityScore", expl},
            {"impactScore", impact}};
}

ordered_json item(const std::string& id, const std::string& description, const std::vector<std::string>& cwes,
                  const std::vector<ordered_json>& refs, const std::string& published, ordered_json impact) {
    ordered_json cwe_desc = ordered_json::array();
    for (const auto& c : cwes) {
        cwe_desc.push_back({{"lang", "en"}, {"value", c}});
    }
    return {{"cve",
             {{"data_type", "CVE"},
              {"data_format", "MITRE"},
              {"data_version", "4.0"},
              {"CVE_data_meta", {{"ID", id}, {"ASSIGNER", "cve@mitre.org"}}},
              {"problemtype", {{"problemtype_data", ordered_json::array({{{"description", cwe_desc}}})}}},
              {"references", {{"reference_data", refs}}},
              {"description", {{"description_data", ordered_json::array({{{"lang", "en"}, {"value", description}}})}}}}},
            {"configurations", {{"CVE_data_version", "4.0"}, {"nodes", ordered_json::array()}}},
            {"impact", std::move(impact)},
            {"publishedDate", published},
            {"lastModifiedDate", "2022-06-01T12:00Z"}};
}

ordered_json feed(std::vector<ordered_json> items) {
    return {{"CVE_data_type", "CVE"},
            {"CVE_data_format", "MITRE"},
            {"CVE_data_version", "4.0"},
            {"CVE_data_numberOfCVEs", std::to_string(items.size())},
            {"CVE_data_timestamp", "2022-06-02T07:00Z"},
            {"CVE_Items", std::move(items)}};
}

ordered_json both(ordered_json v3, ordered_json v2) {
    return {{"baseMetricV3", std::move(v3)}, {"baseMetricV2", std::move(v2)}};
}

void write_feed(const fs::path& dir, int year, const ordered_json& document, ordered_json& responses) {
    const auto text = document.dump();
    const auto gz = gzip(text);
    const auto gz_name = fmt::format("nvdcve-1.1-{}.json.gz", year);
    const auto meta_name = fmt::format("nvdcve-1.1-{}.meta", year);
    write_file(dir / gz_name, gz);
    std::string upper = sha256_hex(text);
    for (auto& c : upper) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    write_file(dir / meta_name, fmt::format("lastModifiedDate:2022-06-02T03:00:01-04:00\r\nsize:{}\r\nzipSize:0\r\n"
                                            "gzSize:{}\r\nsha256:{}\r\n",
                                            text.size(), gz.size(), upper));
    const std::string base = "https://nvd.nist.gov/feeds/json/cve/1.1/";
    responses.push_back({{"url", base + meta_name}, {"status", 200}, {"body_file", meta_name}});
    responses.push_back({{"url", base + gz_name}, {"status", 200}, {"body_file", gz_name}});
}

}  // namespace

Config FixtureWorld::config(const fs::path& run_dir, int worker_count) const {
    Config c;
    c.database_path = run_dir / "CVEfixes.db";
    c.cache_dir = run_dir / "cache";
    c.workdir = run_dir / "work";
    c.worker_count = worker_count;
    c.years = {2020, 2021};
    c.fixtures_dir = fixtures_dir;
    c.mirror_dir = mirror_dir;
    c.cwe_path = cwe_csv;
    return c;
}

FixtureWorld build_fixture_world(const fs::path& root) {
    FixtureWorld w;
    w.root = root;
    w.mirror_dir = root / "mirror";
    w.fixtures_dir = root / "http";
    w.cwe_csv = root / "cwe.csv";
    fs::create_directories(w.fixtures_dir);

    build_libparse(init_repo(w.mirror_dir, "github.com/acme/libparse"), w.commits);
    build_webtool(init_repo(w.mirror_dir, "gitlab.com/pyteam/webtool"), w.commits);
    build_gemkit(init_repo(w.mirror_dir, "bitbucket.org/rubyco/gemkit"), w.commits);
    const auto& h = w.commits;

    write_file(w.cwe_csv,
               "CWE-ID,Name,Weakness Abstraction,Status,Description,Extended Description\n"
               "20,Improper Input Validation,Class,Stable,The product does not validate input.,\n"
               "22,Improper Limitation of a Pathname to a Restricted Directory ('Path Traversal'),Base,Stable,"
               "\"Pathname is not neutralized, so it can escape the directory.\",\n"
               "79,Improper Neutralization of Input During Web Page Generation ('Cross-site Scripting'),Base,"
               "Stable,Input is placed in a web page without neutralization.,\n"
               "89,Improper Neutralization of Special Elements used in an SQL Command ('SQL Injection'),Base,"
               "Stable,SQL command built from unneutralized input.,\n"
               "120,Buffer Copy without Checking Size of Input ('Classic Buffer Overflow'),Base,Incomplete,"
               "Copies a buffer without checking sizes.,\"Often \"\"strcpy\"\".\"\n"
               "476,NULL Pointer Dereference,Base,Stable,A pointer that is NULL is dereferenced.,\n"
               "787,Out-of-bounds Write,Base,Draft,Data is written past the end of a buffer.,\n");

    const std::string gh = "https://github.com/acme/libparse/commit/";
    const std::string gl = "https://gitlab.com/pyteam/webtool/-/commit/";
    const std::string bb = "https://bitbucket.org/rubyco/gemkit/commits/";

    auto feed2020 = feed({
        item("CVE-2020-1001", "parse_header in libparse dereferences a NULL buffer.", {"CWE-476"},
             {reference("https://libparse.example.org/advisories/1", {"Vendor Advisory"}), reference(gh + h.at("a1"))},
             "2020-02-12T00:00Z",
             both(cvss3("CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:N/I:N/A:H", 7.5, "HIGH", 3.9, 3.6),
                  cvss2("AV:N/AC:L/Au:N/C:N/I:N/A:P", 5.0, 10.0, 2.9, "MEDIUM"))),
        item("CVE-2020-1002", "parse_body in libparse allows an out-of-bounds write.", {"CWE-787"},
             {reference(gh + h.at("a2"))}, "2020-03-01T00:00Z",
             both(cvss3("CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H", 9.8, "CRITICAL", 3.9, 5.9),
                  cvss2("AV:N/AC:L/Au:N/C:P/I:P/A:P", 7.5, 10.0, 6.4, "HIGH"))),
        item("CVE-2020-1003", "A classic buffer overflow in libparse parse_body.", {"CWE-787", "CWE-120"},
             {reference(gh + h.at("a2").substr(0, 10))}, "2020-02-20T00:00Z",
             {{"baseMetricV2", cvss2("AV:N/AC:M/Au:N/C:P/I:P/A:P", 6.8, 8.6, 6.4, "MEDIUM")}}),
        item("CVE-2020-1004", "libparse mishandles lengths in util and checksum.", {"CWE-20"},
             {reference(gh + h.at("a3")), reference(gh + h.at("a4"))}, "2020-04-02T00:00Z",
             {{"baseMetricV3", cvss3("CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:L/I:N/A:N", 5.3, "MEDIUM", 3.9, 1.4)}}),
        item("CVE-2020-1005", "** REJECT ** DO NOT USE THIS CANDIDATE NUMBER.", {}, {}, "2020-05-01T00:00Z",
             ordered_json::object()),
        item("CVE-2020-1006", "A vendor product flaw with no public fix.", {"CWE-89"},
             {reference("https://vendor.example.com/security/2020-1006", {"Vendor Advisory"})}, "2020-06-01T00:00Z",
             {{"baseMetricV2", cvss2("AV:N/AC:L/Au:N/C:P/I:P/A:P", 7.5, 10.0, 6.4, "HIGH")}}),
    });
    auto feed2021 = feed({
        item("CVE-2021-2001", "webtool render() allows cross-site scripting.", {"CWE-79"},
             {reference(gl + h.at("b1")), reference("https://gitlab.com/pyteam/webtool/-/merge_requests/3")},
             "2021-02-01T00:00Z",
             both(cvss3("CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:C/C:L/I:L/A:N", 6.1, "MEDIUM", 2.8, 2.7),
                  cvss2("AV:N/AC:M/Au:N/C:N/I:P/A:N", 4.3, 8.6, 2.9, "MEDIUM"))),
        item("CVE-2021-2002", "webtool show() writes untrusted HTML.", {"CWE-79"}, {reference(gl + h.at("b4"))},
             "2021-03-01T00:00Z",
             {{"baseMetricV3", cvss3("CVSS:3.1/AV:N/AC:L/PR:L/UI:R/S:C/C:L/I:L/A:N", 5.4, "MEDIUM", 2.3, 2.7)}}),
        item("CVE-2021-2003", "A second cross-site scripting vector in webtool render().", {"CWE-79"},
             {reference(gl + h.at("b1"))}, "2021-01-20T00:00Z",
             {{"baseMetricV3", cvss3("CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:C/C:L/I:L/A:N", 6.1, "MEDIUM", 2.8, 2.7)}}),
        item("CVE-2021-3001", "gemkit fetch allows path traversal.", {"CWE-22"}, {reference(bb + h.at("c1"))},
             "2021-03-10T00:00Z",
             {{"baseMetricV2", cvss2("AV:N/AC:L/Au:N/C:P/I:N/A:N", 5.0, 10.0, 2.9, "MEDIUM")}}),
        item("CVE-2021-3002", "gemkit issue whose fix commit no longer exists.", {"unknown"},
             {reference(bb + "deadbeefcafe1234")}, "2021-04-01T00:00Z",
             {{"baseMetricV2", cvss2("AV:N/AC:L/Au:N/C:P/I:N/A:N", 5.0, 10.0, 2.9, "MEDIUM")}}),
        item("CVE-2021-4001", "A flaw in a repository that has since been deleted.", {"NVD-CWE-Other"},
             {reference("https://github.com/ghost/vanished/commit/0123456789abcdef0123456789abcdef01234567")},
             "2021-05-01T00:00Z",
             {{"baseMetricV2", cvss2("AV:N/AC:L/Au:N/C:P/I:N/A:N", 5.0, 10.0, 2.9, "MEDIUM")}}),
    });

    ordered_json responses = ordered_json::array();
    write_feed(w.fixtures_dir, 2020, feed2020, responses);
    write_feed(w.fixtures_dir, 2021, feed2021, responses);

    const auto api = [&](const std::string& url, int status, const ordered_json& body) {
        responses.push_back({{"url", url},
                             {"status", status},
                             {"headers", {{"Content-Type", "application/json"}}},
                             {"body", body.dump()}});
    };
    api("https://api.github.com/repos/acme/libparse", 200,
        {{"id", 1001},
         {"full_name", "acme/libparse"},
         {"description", "Tiny packet parser"},
         {"created_at", "2019-06-01T12:00:00Z"},
         {"pushed_at", "2020-04-03T00:00:00Z"},
         {"homepage", "https://libparse.example.org"},
         {"language", "C"},
         {"forks_count", 12},
         {"stargazers_count", 340}});
    api("https://gitlab.com/api/v4/projects/pyteam%2Fwebtool", 200,
        {{"id", 2002},
         {"path_with_namespace", "pyteam/webtool"},
         {"description", "Small web tool"},
         {"created_at", "2020-05-05T05:05:05.000Z"},
         {"last_activity_at", "2021-02-12T10:00:00.000Z"},
         {"forks_count", 3},
         {"star_count", 41}});
    api("https://api.bitbucket.org/2.0/repositories/rubyco/gemkit", 200,
        {{"full_name", "rubyco/gemkit"},
         {"description", "Gem helpers"},
         {"created_on", "2020-11-11T11:11:11.123456+00:00"},
         {"updated_on", "2021-03-15T00:00:00.000000+00:00"},
         {"website", ""},
         {"language", "ruby"}});
    api("https://api.github.com/repos/ghost/vanished", 404, {{"message", "Not Found"}});
    write_file(w.fixtures_dir / "responses.json", responses.dump(2));
    return w;
}

}  // namespace cvefix::testing
