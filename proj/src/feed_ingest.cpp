// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/feed_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cvefix/codec.hpp"
#include "cvefix/reference_resolver.hpp"

namespace cvefix {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kRejectMarker = "** REJECT **";

class ItemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const ojson* child(const ojson& node, std::string_view key) {
    if (!node.is_object()) {
        return nullptr;
    }
    const auto it = node.find(key);
    return it == node.end() ? nullptr : &*it;
}

const ojson* path(const ojson& node, std::initializer_list<std::string_view> keys) {
    const ojson* cur = &node;
    for (const auto key : keys) {
        cur = child(*cur, key);
        if (cur == nullptr) {
            return nullptr;
        }
    }
    return cur;
}

std::string string_at(const ojson& node, std::string_view key) {
    const auto* v = child(node, key);
    return v && v->is_string() ? v->get<std::string>() : std::string{};
}

// First occurrence (document order) of every scalar key below `node`; arrays are not descended.
struct FlatField {
    ojson value;
    std::string where;
};

void flatten(const ojson& node, const std::string& prefix, std::map<std::string, FlatField>& out,
             std::vector<std::string>& conflicts) {
    for (const auto& [key, value] : node.items()) {
        const auto here = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            flatten(value, here, out, conflicts);
            continue;
        }
        if (value.is_array()) {
            continue;
        }
        const auto [it, inserted] = out.try_emplace(key, FlatField{value, here});
        if (!inserted && it->second.value != value) {
            conflicts.push_back(fmt::format("{}={} disagrees with first occurrence {}={}", here,
                                            value.dump(), it->second.where,
                                            it->second.value.dump()));
        }
    }
}

std::optional<double> score(const std::map<std::string, FlatField>& flat, const std::string& key) {
    const auto it = flat.find(key);
    if (it == flat.end() || it->second.value.is_null()) {
        return std::nullopt;
    }
    if (!it->second.value.is_number()) {
        throw ItemError(key + " is not a number");
    }
    const double v = it->second.value.get<double>();
    if (!valid_score(v)) {
        throw ItemError(fmt::format("{} out of range: {}", key, v));
    }
    return v;
}

Timestamp timestamp(const ojson& item, std::string_view key) {
    const auto* v = child(item, key);
    if (!v || !v->is_string()) {
        throw ItemError(std::string(key) + " missing");
    }
    const auto ts = parse_timestamp(v->get<std::string>());
    if (!ts) {
        throw ItemError(std::string(key) + " unparseable: " + v->get<std::string>());
    }
    return *ts;
}

double base_score(const ojson& cvss, std::string_view which) {
    const auto* s = child(cvss, "baseScore");
    if (!s || !s->is_number()) {
        throw ItemError(std::string(which) + ".baseScore missing");
    }
    const double v = s->get<double>();
    if (!valid_score(v)) {
        throw ItemError(fmt::format("{}.baseScore out of range: {}", which, v));
    }
    return v;
}

// Cross-checks the feed's spelled-out labels against the vector string.
void check_label(const ojson& cvss, std::string_view key, std::string_view expected,
                 std::vector<std::string>& warnings) {
    const auto got = string_at(cvss, key);
    if (!got.empty() && got != expected) {
        warnings.push_back(fmt::format("{}={} contradicts vector ({})", key, got, expected));
    }
}

std::optional<Cvss2Metrics> parse_cvss2(const ojson& impact, std::vector<std::string>& warnings) {
    const auto* cvss = path(impact, {"baseMetricV2", "cvssV2"});
    if (!cvss) {
        return std::nullopt;
    }
    const auto vector = string_at(*cvss, "vectorString");
    auto m = Cvss2Metrics::from_vector(vector, base_score(*cvss, "cvssV2"));
    if (!m) {
        throw ItemError("cvssV2.vectorString invalid: " + vector);
    }
    check_label(*cvss, "accessVector", label(m->access_vector), warnings);
    check_label(*cvss, "accessComplexity", label(m->access_complexity), warnings);
    check_label(*cvss, "authentication", label(m->authentication), warnings);
    check_label(*cvss, "confidentialityImpact", label(m->confidentiality_impact), warnings);
    check_label(*cvss, "integrityImpact", label(m->integrity_impact), warnings);
    check_label(*cvss, "availabilityImpact", label(m->availability_impact), warnings);
    return m;
}

std::optional<Cvss3Metrics> parse_cvss3(const ojson& impact, std::vector<std::string>& warnings) {
    const auto* cvss = path(impact, {"baseMetricV3", "cvssV3"});
    if (!cvss) {
        return std::nullopt;
    }
    const auto vector = string_at(*cvss, "vectorString");
    auto m = Cvss3Metrics::from_vector(vector, base_score(*cvss, "cvssV3"));
    if (!m) {
        throw ItemError("cvssV3.vectorString invalid: " + vector);
    }
    m->base_severity = string_at(*cvss, "baseSeverity");
    check_label(*cvss, "attackVector", label(m->attack_vector), warnings);
    check_label(*cvss, "attackComplexity", label(m->attack_complexity), warnings);
    check_label(*cvss, "privilegesRequired", label(m->privileges_required), warnings);
    check_label(*cvss, "userInteraction", label(m->user_interaction), warnings);
    check_label(*cvss, "scope", label(m->scope), warnings);
    check_label(*cvss, "confidentialityImpact", label(m->confidentiality_impact), warnings);
    check_label(*cvss, "integrityImpact", label(m->integrity_impact), warnings);
    check_label(*cvss, "availabilityImpact", label(m->availability_impact), warnings);
    return m;
}

bool looks_like_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0 || scheme_end + 3 >= url.size()) {
        return false;
    }
    return std::all_of(url.begin(), url.begin() + static_cast<std::ptrdiff_t>(scheme_end),
                       [](unsigned char c) { return std::isalnum(c) || c == '+' || c == '-' || c == '.'; }) &&
           std::none_of(url.begin(), url.end(), [](unsigned char c) { return std::isspace(c); });
}

CveRecord parse_item(const ojson& item, std::vector<std::string>& warnings) {
    CveRecord rec;
    const auto* cve = child(item, "cve");
    if (!cve || !cve->is_object()) {
        throw ItemError("cve block missing");
    }
    const auto* id = path(*cve, {"CVE_data_meta", "ID"});
    if (!id || !id->is_string() || !is_cve_id(id->get<std::string>())) {
        throw ItemError("CVE_data_meta.ID missing or malformed");
    }
    rec.cve_id = id->get<std::string>();

    if (const auto* descs = path(*cve, {"description", "description_data"}); descs && descs->is_array()) {
        for (const auto& d : *descs) {
            if (rec.description.empty() || string_at(d, "lang") == "en") {
                rec.description = string_at(d, "value");
                if (string_at(d, "lang") == "en") {
                    break;
                }
            }
        }
    }

    if (const auto* pts = path(*cve, {"problemtype", "problemtype_data"}); pts && pts->is_array()) {
        for (const auto& pt : *pts) {
            if (const auto* descs = child(pt, "description"); descs && descs->is_array()) {
                for (const auto& d : *descs) {
                    rec.problem_types.push_back(string_at(d, "value"));
                }
            }
        }
    }

    if (const auto* refs = path(*cve, {"references", "reference_data"}); refs && refs->is_array()) {
        for (const auto& r : *refs) {
            ReferenceEntry entry;
            entry.url = string_at(r, "url");
            entry.name = string_at(r, "name");
            entry.refsource = string_at(r, "refsource");
            if (const auto* tags = child(r, "tags"); tags && tags->is_array()) {
                for (const auto& t : *tags) {
                    if (t.is_string()) {
                        entry.tags.push_back(t.get<std::string>());
                    }
                }
            }
            if (!looks_like_url(entry.url)) {
                warnings.push_back("dropped malformed reference URL '" + entry.url + "'");
                continue;
            }
            rec.references.push_back(std::move(entry));
        }
    }

    rec.published_date = timestamp(item, "publishedDate");
    rec.last_modified_date = timestamp(item, "lastModifiedDate");
    if (rec.published_date > rec.last_modified_date) {
        throw ItemError("publishedDate is after lastModifiedDate");
    }

    if (const auto* impact = child(item, "impact"); impact && impact->is_object()) {
        rec.cvss3 = parse_cvss3(*impact, warnings);
        rec.cvss2 = parse_cvss2(*impact, warnings);
        std::map<std::string, FlatField> flat;
        flatten(*impact, "", flat, warnings);
        rec.exploitability_score = score(flat, "exploitabilityScore");
        rec.impact_score = score(flat, "impactScore");
        if (const auto it = flat.find("severity"); it != flat.end() && it->second.value.is_string()) {
            static const std::set<std::string, std::less<>> kSeverities{"NONE", "LOW", "MEDIUM",
                                                                        "HIGH", "CRITICAL"};
            const auto sev = it->second.value.get<std::string>();
            if (kSeverities.contains(sev)) {
                rec.severity = sev;
            } else {
                warnings.push_back("unknown severity label " + sev);
            }
        }
    }
    return rec;
}

}  // namespace

bool is_cve_id(std::string_view id) {
    if (id.size() < 13 || !id.starts_with("CVE-") || id[8] != '-') {
        return false;
    }
    auto digits = [](std::string_view s) {
        return !s.empty() &&
               std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    return digits(id.substr(4, 4)) && digits(id.substr(9)) && id.size() - 9 >= 4;
}

ParsedFeed parse_feed(const ojson& document) {
    const auto* items = child(document, "CVE_Items");
    if (!items || !items->is_array()) {
        throw FeedFormatError("document has no CVE_Items array");
    }
    ParsedFeed out;
    std::set<std::string> seen;
    for (std::size_t index = 0; index < items->size(); ++index) {
        const auto& item = (*items)[index];
        std::vector<std::string> warnings;
        try {
            auto rec = parse_item(item, warnings);
            if (std::string_view(rec.description).starts_with(kRejectMarker)) {
                ++out.rejected;
                continue;
            }
            for (auto& w : warnings) {
                out.warnings.push_back({index, rec.cve_id, std::move(w)});
            }
            if (!seen.insert(rec.cve_id).second) {
                out.warnings.push_back({index, rec.cve_id, "duplicate cve_id within feed dropped"});
                continue;
            }
            out.records.push_back(std::move(rec));
        } catch (const ItemError& e) {
            const auto* id = path(item, {"cve", "CVE_data_meta", "ID"});
            out.errors.push_back(
                {index, id && id->is_string() ? id->get<std::string>() : std::string{}, e.what()});
        } catch (const nlohmann::json::exception& e) {
            out.errors.push_back({index, {}, e.what()});
        }
    }
    return out;
}

std::vector<CveRecord> filter_fix_referencing(const std::vector<CveRecord>& records) {
    std::vector<CveRecord> out;
    for (const auto& rec : records) {
        const bool has_fix = std::any_of(rec.references.begin(), rec.references.end(),
                                         [&](const ReferenceEntry& r) {
                                             return is_commit_url(r.url);
                                         });
        if (has_fix) {
            out.push_back(rec);
        }
    }
    return out;
}

std::vector<CveRecord> merge_records(std::vector<ParsedFeed> feeds, std::size_t* duplicates) {
    std::vector<CveRecord> out;
    std::set<std::string> seen;
    std::size_t dropped = 0;
    for (auto& feed : feeds) {
        for (auto& rec : feed.records) {
            if (seen.insert(rec.cve_id).second) {
                out.push_back(std::move(rec));
            } else {
                ++dropped;
            }
        }
    }
    if (duplicates) {
        *duplicates = dropped;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Feed download and cache

std::string feed_file_name(int year) { return fmt::format("nvdcve-1.1-{}.json.gz", year); }

namespace {

struct Manifest {
    std::filesystem::path file;
    nlohmann::json data = nlohmann::json::object();

    explicit Manifest(std::filesystem::path f) : file(std::move(f)) {
        if (std::filesystem::exists(file)) {
            try {
                data = nlohmann::json::parse(read_file(file));
            } catch (const std::exception& e) {
                spdlog::warn("ignoring unreadable feed manifest {}: {}", file.string(), e.what());
                data = nlohmann::json::object();
            }
        }
    }

    const nlohmann::json* entry(int year) const {
        const auto it = data.find(std::to_string(year));
        return it == data.end() ? nullptr : &*it;
    }

    void put(int year, const std::string& sha, Timestamp fetched_at) {
        data[std::to_string(year)] = {{"sha256", sha}, {"fetched_at", format_timestamp(fetched_at)}};
        write_file(file, data.dump(2));
    }
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<std::string> meta_sha256(const std::string& meta) {
    std::size_t pos = 0;
    while (pos < meta.size()) {
        auto end = meta.find('\n', pos);
        if (end == std::string::npos) {
            end = meta.size();
        }
        std::string line = meta.substr(pos, end - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (line.starts_with("sha256:")) {
            return lower(line.substr(7));
        }
        pos = end + 1;
    }
    return std::nullopt;
}

class Unreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

HttpResponse get_ok(HttpTransport& http, const std::string& url) {
    HttpResponse r;
    try {
        r = http.get(url, {});
    } catch (const NetworkError& e) {
        throw Unreachable(e.what());
    }
    if (r.status != 200) {
        throw Unreachable(fmt::format("{}: HTTP {}", url, r.status));
    }
    return r;
}

FeedDocument decode(int year, std::string_view gz, bool from_cache) {
    FeedDocument doc;
    doc.year = year;
    doc.from_cache = from_cache;
    const auto text = gunzip(gz);
    doc.sha256 = sha256_hex(text);
    doc.json = ojson::parse(text);
    return doc;
}

}  // namespace

FetchResult fetch_feeds(YearRange years, const FeedFetchOptions& options, HttpTransport& http,
                        Clock& clock) {
    if (years.first < 2002 || years.last < years.first) {
        throw std::invalid_argument(
            fmt::format("invalid feed year range {}..{}", years.first, years.last));
    }
    const auto dir = options.cache_dir / "nvd-1.1";
    std::filesystem::create_directories(dir);
    Manifest manifest(dir / "manifest.json");
    FetchResult result;

    for (int year = years.first; year <= years.last; ++year) {
        const auto cached_path = dir / feed_file_name(year);
        const auto* entry = manifest.entry(year);
        const bool cached = entry != nullptr && std::filesystem::exists(cached_path);
        const std::string cached_sha = cached ? entry->value("sha256", "") : "";

        auto from_cache = [&]() {
            auto doc = decode(year, read_file(cached_path), true);
            if (!cached_sha.empty() && doc.sha256 != cached_sha) {
                throw std::runtime_error("cached feed does not match manifest checksum");
            }
            return doc;
        };

        try {
            if (cached && !options.force_refresh) {
                const auto fetched = parse_timestamp(entry->value("fetched_at", ""));
                if (fetched && clock.now() - *fetched < options.max_age) {
                    result.documents.push_back(from_cache());
                    continue;
                }
            }
            try {
                const auto base = options.base_url.ends_with('/') ? options.base_url
                                                                  : options.base_url + "/";
                const auto meta_url = base + fmt::format("nvdcve-1.1-{}.meta", year);
                const auto remote_sha = meta_sha256(get_ok(http, meta_url).body);
                if (cached && !options.force_refresh && remote_sha && *remote_sha == cached_sha) {
                    auto doc = from_cache();
                    manifest.put(year, doc.sha256, clock.now());
                    result.documents.push_back(std::move(doc));
                    continue;
                }
                const auto gz = get_ok(http, base + feed_file_name(year)).body;
                auto doc = decode(year, gz, false);
                if (remote_sha && *remote_sha != doc.sha256) {
                    throw std::runtime_error("downloaded feed does not match published SHA-256");
                }
                write_file(cached_path, gz);
                manifest.put(year, doc.sha256, clock.now());
                result.documents.push_back(std::move(doc));
            } catch (const Unreachable& e) {
                if (cached && !options.force_refresh) {
                    spdlog::warn("feed {}: server unreachable ({}), using cached copy", year,
                                 e.what());
                    result.documents.push_back(from_cache());
                } else {
                    throw IngestError(year, std::string("server unreachable and no usable cached copy: ") +
                                                e.what());
                }
            }
        } catch (const IngestError&) {
            throw;
        } catch (const std::exception& e) {
            spdlog::error("feed {}: {}", year, e.what());
            result.failures.push_back({year, e.what()});
        }
    }
    return result;
}

}  // namespace cvefix
