// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/cwe_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <spdlog/spdlog.h>

#include "cvefix/csv.hpp"
#include "cvefix/http.hpp"

namespace cvefix {

namespace detail {
extern const std::string_view kBuiltinCweSnapshot;
}

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// "79", "CWE-79", "cwe-79" -> "CWE-79"; pseudo ids canonicalized; anything else unchanged.
std::string canonical_id(std::string_view raw) {
    const auto id = trim(raw);
    if (all_digits(id)) {
        return "CWE-" + id;
    }
    if (id.size() > 4 && iequals(std::string_view(id).substr(0, 4), "CWE-") &&
        all_digits(std::string_view(id).substr(4))) {
        return "CWE-" + id.substr(4);
    }
    if (iequals(id, kCweNoInfo)) {
        return std::string(kCweNoInfo);
    }
    if (iequals(id, kCweOther)) {
        return std::string(kCweOther);
    }
    return id;
}

CweEntry pseudo_noinfo() {
    return {std::string(kCweNoInfo), "Insufficient Information",
            "There is insufficient information about the issue to classify it.", std::nullopt,
            std::nullopt, true};
}

CweEntry pseudo_other() {
    return {std::string(kCweOther), "Other",
            "The weakness is not covered by the subset of CWE used by the NVD.", std::nullopt,
            std::nullopt, true};
}

}  // namespace

CweCatalog::CweCatalog() {
    put(pseudo_noinfo());
    put(pseudo_other());
}

void CweCatalog::put(CweEntry entry) {
    const auto id = entry.cwe_id;
    entries_.insert_or_assign(id, std::move(entry));
}

CweCatalog CweCatalog::from_csv(std::string_view text) {
    CweCatalog catalog;
    const auto rows = csv::parse(text);
    if (rows.empty()) {
        return catalog;
    }
    const auto& header = rows.front();
    auto column = [&](std::initializer_list<std::string_view> names) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            for (const auto name : names) {
                if (iequals(trim(header[i]), name)) {
                    return i;
                }
            }
        }
        return std::nullopt;
    };
    const auto id_col = column({"CWE-ID", "CWE ID", "ID"});
    const auto name_col = column({"Name"});
    if (!id_col || !name_col) {
        throw std::invalid_argument("CWE list has no CWE-ID/Name header");
    }
    const auto desc_col = column({"Description", "Summary"});
    const auto ext_col = column({"Extended Description"});
    const auto kind_col = column({"Kind", "Type"});

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto cell = [&](std::optional<std::size_t> col) -> std::string {
            return col && *col < row.size() ? trim(row[*col]) : std::string{};
        };
        CweEntry entry;
        entry.cwe_id = canonical_id(cell(id_col));
        const bool numbered = entry.cwe_id.starts_with("CWE-");
        if (!numbered && entry.cwe_id != kCweNoInfo && entry.cwe_id != kCweOther) {
            throw std::invalid_argument("row " + std::to_string(r + 1) + ": bad CWE id '" +
                                        cell(id_col) + "'");
        }
        entry.name = cell(name_col);
        entry.description = cell(desc_col);
        if (auto ext = cell(ext_col); !ext.empty()) {
            entry.extended_description = std::move(ext);
        }
        if (numbered) {
            entry.url = "https://cwe.mitre.org/data/definitions/" + entry.cwe_id.substr(4) + ".html";
        }
        const auto kind = cell(kind_col);
        entry.is_category = kind_col ? iequals(kind, "Category")
                                     : (entry.cwe_id == kCweNoInfo || entry.cwe_id == kCweOther);
        catalog.put(std::move(entry));
    }
    return catalog;
}

const CweCatalog& CweCatalog::builtin() {
    static const CweCatalog snapshot = from_csv(detail::kBuiltinCweSnapshot);
    return snapshot;
}

const CweEntry* CweCatalog::find(std::string_view cwe_id) const {
    const auto it = entries_.find(cwe_id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<CweEntry> CweCatalog::entries() const {
    std::vector<CweEntry> out;
    out.reserve(entries_.size());
    for (const auto& [id, entry] : entries_) {
        out.push_back(entry);
    }
    return out;
}

bool CweCatalog::add_stub(const std::string& cwe_id) {
    if (contains(cwe_id)) {
        return false;
    }
    CweEntry entry;
    entry.cwe_id = cwe_id;
    entry.name = cwe_id;
    if (cwe_id.starts_with("CWE-")) {
        entry.url = "https://cwe.mitre.org/data/definitions/" + cwe_id.substr(4) + ".html";
    }
    put(std::move(entry));
    return true;
}

CweCatalog load_catalog(std::string_view source, std::vector<std::string>& warnings) {
    if (trim(source).empty()) {
        return CweCatalog{};
    }
    try {
        return CweCatalog::from_csv(source);
    } catch (const std::exception& e) {
        warnings.push_back(std::string("malformed CWE list, using built-in snapshot: ") + e.what());
        return CweCatalog::builtin();
    }
}

CweCatalog load_catalog(const std::optional<std::filesystem::path>& path,
                        std::vector<std::string>& warnings) {
    if (!path || path->empty()) {
        return CweCatalog::builtin();
    }
    std::string text;
    try {
        text = read_file(*path);
    } catch (const std::exception& e) {
        warnings.push_back(std::string("cannot read CWE list, using built-in snapshot: ") + e.what());
        return CweCatalog::builtin();
    }
    return load_catalog(std::string_view(text), warnings);
}

void cover_assignments(CweCatalog& catalog, const std::vector<CweAssignment>& assignments,
                       std::vector<std::string>& warnings) {
    for (const auto& a : assignments) {
        if (catalog.add_stub(a.cwe_id)) {
            warnings.push_back(a.cwe_id + " (used by " + a.cve_id +
                               ") is not in the CWE list; added a stub entry");
        }
    }
}

std::string normalize_label(std::string_view raw) {
    const auto id = canonical_id(raw);
    if (id == kCweNoInfo || id == kCweOther || id.starts_with("CWE-")) {
        return id;
    }
    // "unknown", empty, and anything unrecognizable carry no classification.
    return std::string(kCweNoInfo);
}

std::vector<CweAssignment> assign(const CveRecord& cve) {
    std::vector<CweAssignment> out;
    std::set<std::string> seen;
    for (const auto& raw : cve.problem_types) {
        auto id = normalize_label(raw);
        if (seen.insert(id).second) {
            out.push_back({cve.cve_id, std::move(id)});
        }
    }
    if (out.empty()) {
        out.push_back({cve.cve_id, std::string(kCweNoInfo)});
    }
    return out;
}

}  // namespace cvefix
