// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/reference_resolver.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

namespace cvefix {

namespace {

struct ParsedUrl {
    std::string host;
    std::vector<std::string> segments;
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<ParsedUrl> parse_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        return std::nullopt;
    }
    const auto scheme = lower(url.substr(0, scheme_end));
    if (scheme != "https" && scheme != "http") {
        return std::nullopt;
    }
    url.remove_prefix(scheme_end + 3);
    if (const auto cut = url.find_first_of("?#"); cut != std::string_view::npos) {
        url = url.substr(0, cut);
    }
    const auto path_start = url.find('/');
    ParsedUrl out;
    out.host = lower(url.substr(0, path_start));
    if (const auto at = out.host.rfind('@'); at != std::string::npos) {
        out.host.erase(0, at + 1);
    }
    if (const auto colon = out.host.find(':'); colon != std::string::npos) {
        out.host.erase(colon);
    }
    if (out.host.starts_with("www.")) {
        out.host.erase(0, 4);
    }
    if (out.host.empty()) {
        return std::nullopt;
    }
    if (path_start == std::string_view::npos) {
        return out;
    }
    auto path = url.substr(path_start);
    while (!path.empty()) {
        const auto slash = path.find('/');
        const auto seg = path.substr(0, slash);
        if (!seg.empty()) {
            out.segments.emplace_back(seg);
        }
        if (slash == std::string_view::npos) {
            break;
        }
        path.remove_prefix(slash + 1);
    }
    return out;
}

std::optional<Forge> forge_for_host(const std::string& host) {
    if (host == "github.com") {
        return Forge::github;
    }
    if (host == "bitbucket.org") {
        return Forge::bitbucket;
    }
    if (host == "gitlab.com" || host.starts_with("gitlab.")) {
        return Forge::gitlab;
    }
    return std::nullopt;
}

bool is_commit_hash(std::string_view s, std::size_t min_length = 6) {
    return s.size() >= min_length && s.size() <= 40 &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isxdigit(c); });
}

std::string repo_url(const std::string& host, const std::vector<std::string>& segments,
                     std::size_t count) {
    std::string out = "https://" + host;
    for (std::size_t i = 0; i < count; ++i) {
        std::string seg = segments[i];
        if (i + 1 == count && seg.size() > 4 && lower(seg).ends_with(".git")) {
            seg.resize(seg.size() - 4);
        }
        out += '/';
        out += seg;
    }
    return out;
}

// Index of the commit-marker segment ("commit"/"commits") for a forge, or npos.
std::size_t commit_marker(Forge forge, const std::vector<std::string>& seg) {
    switch (forge) {
    case Forge::github:
        if (seg.size() == 4 && seg[2] == "commit") {
            return 2;
        }
        break;
    case Forge::bitbucket:
        if (seg.size() == 4 && seg[2] == "commits") {
            return 2;
        }
        break;
    case Forge::gitlab:
        // group[/subgroup...]/project/-/commit/<hash> or legacy group/project/commit/<hash>
        if (seg.size() >= 5 && seg[seg.size() - 2] == "commit" && seg[seg.size() - 3] == "-") {
            return seg.size() - 2;
        }
        if (seg.size() >= 4 && seg[seg.size() - 2] == "commit" && seg[seg.size() - 3] != "-") {
            return seg.size() - 2;
        }
        break;
    }
    return std::string::npos;
}

}  // namespace

std::string_view forge_name(Forge forge) {
    switch (forge) {
    case Forge::github:
        return "GitHub";
    case Forge::gitlab:
        return "GitLab";
    case Forge::bitbucket:
        return "Bitbucket";
    }
    return "unknown";
}

namespace {

std::optional<FixReference> match_commit(std::string_view url, std::string_view cve_id, std::size_t min_hash) {
    const auto parsed = parse_url(url);
    if (!parsed) {
        return std::nullopt;
    }
    const auto forge = forge_for_host(parsed->host);
    if (!forge) {
        return std::nullopt;
    }
    const auto& seg = parsed->segments;
    const auto marker = commit_marker(*forge, seg);
    if (marker == std::string::npos || !is_commit_hash(seg[marker + 1], min_hash)) {
        return std::nullopt;
    }
    // GitLab's "/-/" separator is not part of the repository path.
    std::size_t repo_segments = marker;
    if (*forge == Forge::gitlab && seg[marker - 1] == "-") {
        repo_segments = marker - 1;
    }
    if (repo_segments < 2) {
        return std::nullopt;
    }
    return FixReference{std::string(cve_id), repo_url(parsed->host, seg, repo_segments),
                        lower(seg[marker + 1]), *forge};
}

}  // namespace

std::optional<FixReference> resolve(std::string_view url, std::string_view cve_id) {
    return match_commit(url, cve_id, 6);
}

bool is_commit_url(std::string_view url) {
    return match_commit(url, "", 4).has_value();
}

ReferenceKind classify_reference(std::string_view url) {
    if (resolve(url, "")) {
        return ReferenceKind::commit;
    }
    const auto parsed = parse_url(url);
    if (!parsed || !forge_for_host(parsed->host)) {
        return ReferenceKind::unsupported;
    }
    for (const auto& seg : parsed->segments) {
        if (seg == "pull" || seg == "merge_requests" || seg == "pull-requests") {
            return ReferenceKind::pull_request;
        }
        if (seg == "compare" || seg == "branches") {
            return ReferenceKind::compare;
        }
    }
    return ReferenceKind::other_forge_page;
}

std::vector<FixReference> dedupe(const std::vector<FixReference>& refs) {
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    std::vector<FixReference> out;
    for (const auto& ref : refs) {
        if (seen.emplace(ref.cve_id, ref.repo_url, ref.commit_hash).second) {
            out.push_back(ref);
        }
    }
    return out;
}

void ReferenceStats::count(ReferenceKind kind) {
    switch (kind) {
    case ReferenceKind::commit:
        ++commit;
        break;
    case ReferenceKind::pull_request:
        ++pull_request;
        break;
    case ReferenceKind::compare:
        ++compare;
        break;
    case ReferenceKind::other_forge_page:
        ++other_forge_page;
        break;
    case ReferenceKind::unsupported:
        ++unsupported;
        break;
    }
}

}  // namespace cvefix
