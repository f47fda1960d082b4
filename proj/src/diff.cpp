// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/diff.hpp"

#include <charconv>
#include <map>
#include <set>
#include <stdexcept>

#include "cvefix/errors.hpp"

namespace cvefix {

namespace {

struct HunkHeader {
    int old_start = 0;
    int old_count = 1;
    int new_start = 0;
    int new_count = 1;
};

bool read_int(std::string_view& s, int& out) {
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr == begin) {
        return false;
    }
    s.remove_prefix(static_cast<std::size_t>(ptr - begin));
    return true;
}

// "@@ -l[,s] +l[,s] @@[ section]"
HunkHeader parse_header(std::string_view line) {
    HunkHeader h;
    auto s = line;
    auto fail = [&]() { return DiffParseError(std::string(line)); };
    if (!s.starts_with("@@ -")) {
        throw fail();
    }
    s.remove_prefix(4);
    if (!read_int(s, h.old_start)) {
        throw fail();
    }
    if (s.starts_with(",")) {
        s.remove_prefix(1);
        if (!read_int(s, h.old_count)) {
            throw fail();
        }
    }
    if (!s.starts_with(" +")) {
        throw fail();
    }
    s.remove_prefix(2);
    if (!read_int(s, h.new_start)) {
        throw fail();
    }
    if (s.starts_with(",")) {
        s.remove_prefix(1);
        if (!read_int(s, h.new_count)) {
            throw fail();
        }
    }
    if (!s.starts_with(" @@")) {
        throw fail();
    }
    if (h.old_start < 0 || h.new_start < 0 || h.old_count < 0 || h.new_count < 0) {
        throw fail();
    }
    return h;
}

}  // namespace

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

ParsedDiff parse_diff(std::string_view diff) {
    ParsedDiff out;
    int old_line = 0;
    int new_line = 0;
    int old_left = 0;
    int new_left = 0;
    char previous = 0;
    for (const auto line : split_lines(diff)) {
        if (line.starts_with("\\")) {
            // Marker for the line just before it.
            if (previous == '-' || previous == ' ') {
                out.old_missing_newline = true;
            }
            if (previous == '+' || previous == ' ') {
                out.new_missing_newline = true;
            }
            continue;
        }
        if (old_left > 0 || new_left > 0) {
            const char tag = line.empty() ? ' ' : line[0];
            const auto text = line.empty() ? line : line.substr(1);
            switch (tag) {
            case ' ':
                ++old_line;
                ++new_line;
                --old_left;
                --new_left;
                break;
            case '-':
                out.deleted.push_back({old_line, std::string(text)});
                ++old_line;
                --old_left;
                break;
            case '+':
                out.added.push_back({new_line, std::string(text)});
                ++new_line;
                --new_left;
                break;
            default:
                throw DiffParseError("hunk body ended early before: " + std::string(line));
            }
            previous = tag;
            if (old_left < 0 || new_left < 0) {
                throw DiffParseError("hunk body longer than its header declares");
            }
            continue;
        }
        if (line.starts_with("@@")) {
            const auto h = parse_header(line);
            // A zero-length side is anchored at the line before the hunk.
            old_line = h.old_count == 0 ? h.old_start + 1 : h.old_start;
            new_line = h.new_count == 0 ? h.new_start + 1 : h.new_start;
            old_left = h.old_count;
            new_left = h.new_count;
            previous = 0;
        }
    }
    if (old_left > 0 || new_left > 0) {
        throw DiffParseError("truncated hunk");
    }
    return out;
}

std::string apply_diff(std::string_view before, const ParsedDiff& diff) {
    const auto lines = split_lines(before);
    std::map<int, std::string_view> added;
    for (const auto& a : diff.added) {
        added.emplace(a.line, a.text);
    }
    std::set<int> deleted;
    for (const auto& d : diff.deleted) {
        if (d.line < 1 || static_cast<std::size_t>(d.line) > lines.size() ||
            lines[static_cast<std::size_t>(d.line - 1)] != d.text) {
            throw std::invalid_argument("deleted line " + std::to_string(d.line) +
                                        " does not match the pre-image");
        }
        deleted.insert(d.line);
    }

    std::vector<std::string_view> result;
    std::size_t old_index = 1;
    while (true) {
        const int next_new = static_cast<int>(result.size()) + 1;
        if (const auto it = added.find(next_new); it != added.end()) {
            result.push_back(it->second);
            added.erase(it);
            continue;
        }
        if (old_index > lines.size()) {
            break;
        }
        if (!deleted.contains(static_cast<int>(old_index))) {
            result.push_back(lines[old_index - 1]);
        }
        ++old_index;
    }
    if (!added.empty()) {
        throw std::invalid_argument("added line " + std::to_string(added.begin()->first) +
                                    " lies beyond the post-image");
    }

    const bool before_newline = before.empty() || before.back() == '\n';
    bool after_newline = true;
    if (diff.new_missing_newline) {
        after_newline = false;
    } else if (!before_newline && !diff.old_missing_newline) {
        // The unterminated last line was outside every hunk.
        after_newline = false;
    }

    std::string out;
    for (std::size_t i = 0; i < result.size(); ++i) {
        out.append(result[i]);
        if (i + 1 < result.size() || after_newline) {
            out += '\n';
        }
    }
    return out;
}

std::string to_json_text(const ParsedDiff& diff) {
    auto lines = [](const std::vector<DiffLine>& v) {
        auto arr = nlohmann::json::array();
        for (const auto& l : v) {
            arr.push_back(nlohmann::json::array({l.line, l.text}));
        }
        return arr;
    };
    nlohmann::ordered_json j;
    j["added"] = lines(diff.added);
    j["deleted"] = lines(diff.deleted);
    // Lossy-decoded text is valid UTF-8, but replace rather than throw on anything else.
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

ParsedDiff parsed_diff_from_json(std::string_view text) {
    const auto j = nlohmann::json::parse(text);
    ParsedDiff out;
    for (const auto& a : j.at("added")) {
        out.added.push_back({a.at(0).get<int>(), a.at(1).get<std::string>()});
    }
    for (const auto& d : j.at("deleted")) {
        out.deleted.push_back({d.at(0).get<int>(), d.at(1).get<std::string>()});
    }
    return out;
}

}  // namespace cvefix
