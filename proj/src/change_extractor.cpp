// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/change_extractor.hpp"

#include <algorithm>
#include <set>
#include <system_error>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cvefix/codec.hpp"
#include "cvefix/errors.hpp"

namespace cvefix {

namespace {

constexpr std::size_t kMaxTextBytes = 2 * 1024 * 1024;
constexpr std::size_t kBinaryProbe = 8000;
constexpr std::string_view kSubmoduleMode = "160000";

std::string id_hash(std::initializer_list<std::string_view> parts) {
    std::string joined;
    bool first = true;
    for (const auto p : parts) {
        if (!first) {
            joined.push_back('\0');
        }
        joined.append(p);
        first = false;
    }
    return sha256_hex(joined).substr(0, 32);
}

std::string basename_of(std::string_view path) {
    const auto slash = path.rfind('/');
    return std::string(slash == std::string_view::npos ? path : path.substr(slash + 1));
}

bool looks_binary(std::string_view content) {
    return content.substr(0, std::min(content.size(), kBinaryProbe)).find('\0') != std::string_view::npos;
}

ChangeType to_change_type(TreeChangeKind kind) {
    switch (kind) {
        case TreeChangeKind::added:
            return ChangeType::added;
        case TreeChangeKind::deleted:
            return ChangeType::deleted;
        case TreeChangeKind::renamed:
            return ChangeType::renamed;
        case TreeChangeKind::modified:
            break;
    }
    return ChangeType::modified;
}

// Reads a blob as text; nullopt when it must be treated as binary.
std::optional<std::string> read_text(const GitRepository& git, const std::string& blob, const std::string& mode) {
    if (mode == kSubmoduleMode) {
        return std::nullopt;
    }
    if (git.blob_size(blob) > kMaxTextBytes) {
        return std::nullopt;
    }
    auto content = git.blob(blob);
    if (looks_binary(content)) {
        return std::nullopt;
    }
    if (!is_valid_utf8(content)) {
        return utf8_lossy(content);
    }
    return content;
}

std::string sanitize(std::string_view url) {
    std::string out;
    for (const char c : url.substr(url.find("://") == std::string_view::npos ? 0 : url.find("://") + 3)) {
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '.' ? c : '_');
    }
    if (out.size() > 80) {
        out.resize(80);
    }
    return out;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) {
        s.pop_back();
    }
    return s;
}

bool in_span(int line, int start, int end) {
    return line >= start && line <= end;
}

int count_in_span(const std::vector<DiffLine>& lines, int start, int end) {
    return static_cast<int>(std::count_if(lines.begin(), lines.end(),
                                          [&](const DiffLine& l) { return in_span(l.line, start, end); }));
}

}  // namespace

std::string_view change_type_name(ChangeType type) {
    switch (type) {
        case ChangeType::added:
            return "added";
        case ChangeType::deleted:
            return "deleted";
        case ChangeType::modified:
            return "modified";
        case ChangeType::renamed:
            return "renamed";
    }
    return "modified";
}

std::optional<ChangeType> parse_change_type(std::string_view name) {
    for (const auto t : {ChangeType::added, ChangeType::deleted, ChangeType::modified, ChangeType::renamed}) {
        if (change_type_name(t) == name) {
            return t;
        }
    }
    return std::nullopt;
}

std::string make_file_change_id(std::string_view repo_url, std::string_view hash, std::string_view old_path,
                                std::string_view new_path) {
    return id_hash({repo_url, hash, old_path, new_path});
}

std::string make_method_change_id(std::string_view file_change_id, std::string_view signature,
                                  bool before_change) {
    return id_hash({file_change_id, signature, before_change ? "1" : "0"});
}

RepoHandle::RepoHandle(std::string repo_url, std::filesystem::path dir, bool owned)
    : repo_url_(std::move(repo_url)), git_(std::move(dir)), owned_(owned) {}

RepoHandle::RepoHandle(RepoHandle&& other) noexcept
    : repo_url_(std::move(other.repo_url_)), git_(other.git_), owned_(other.owned_) {
    other.owned_ = false;
}

RepoHandle::~RepoHandle() {
    if (owned_) {
        std::error_code ec;
        std::filesystem::remove_all(git_.dir(), ec);
        if (ec) {
            spdlog::warn("could not remove clone {}: {}", git_.dir().string(), ec.message());
        }
    }
}

RepoHandle clone_repo(const std::string& repo_url, const std::filesystem::path& workdir,
                      const CloneOptions& options) {
    std::string source = repo_url;
    std::error_code ec;
    if (std::filesystem::exists(repo_url, ec)) {
        source = std::filesystem::absolute(repo_url).string();
    } else if (options.mirror_dir) {
        const auto scheme = repo_url.find("://");
        const auto rest = scheme == std::string::npos ? repo_url : repo_url.substr(scheme + 3);
        auto mirror = *options.mirror_dir / rest;
        if (!std::filesystem::exists(mirror, ec)) {
            mirror += ".git";
        }
        if (!std::filesystem::exists(mirror, ec)) {
            throw RepoUnavailable(repo_url, "not found in mirror " + options.mirror_dir->string());
        }
        source = std::filesystem::absolute(mirror).string();
    }
    std::filesystem::create_directories(workdir, ec);
    if (ec) {
        throw Error(fmt::format("cannot create workdir {}: {}", workdir.string(), ec.message()));
    }
    const auto dest = workdir / (sanitize(repo_url) + "-" + sha256_hex(repo_url).substr(0, 8) + ".git");
    std::filesystem::remove_all(dest, ec);
    const auto r = run_process({"git", "clone", "--bare", "--quiet", "--", source, dest.string()},
                               noninteractive_git_env());
    if (r.exit_code != 0) {
        std::filesystem::remove_all(dest, ec);
        throw RepoUnavailable(repo_url, trimmed(r.err));
    }
    return RepoHandle(repo_url, dest, !options.keep_clone);
}

std::string slice_lines(std::string_view text, int start_line, int end_line) {
    std::size_t pos = 0;
    int line = 1;
    while (line < start_line && pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            return {};
        }
        pos = nl + 1;
        ++line;
    }
    std::size_t end = pos;
    while (line <= end_line && end < text.size()) {
        const auto nl = text.find('\n', end);
        if (nl == std::string_view::npos) {
            end = text.size();
            break;
        }
        if (line == end_line) {
            end = nl;
            break;
        }
        end = nl + 1;
        ++line;
    }
    return std::string(text.substr(pos, end - pos));
}

std::vector<MethodChange> extract_method_changes(const FileChange& fc, std::vector<std::string>* warnings) {
    std::vector<MethodChange> out;
    if (!fc.programming_language || !has_method_parser(*fc.programming_language)) {
        return out;
    }
    const auto& language = *fc.programming_language;
    std::set<std::string> seen;
    const auto collect = [&](const std::string& code, const std::vector<DiffLine>& changed, bool before) -> bool {
        if (changed.empty()) {
            return true;
        }
        const auto metrics = measure_source(code, language);
        if (metrics.warning) {
            if (warnings != nullptr) {
                warnings->push_back(fmt::format("{} ({} image): {}", fc.new_path.value_or(fc.old_path.value_or("")),
                                                before ? "before" : "after", *metrics.warning));
            }
            return false;
        }
        for (const auto& m : metrics.methods) {
            if (count_in_span(changed, m.start_line, m.end_line) == 0) {
                continue;
            }
            MethodChange mc;
            mc.file_change_id = fc.file_change_id;
            mc.name = m.name;
            mc.signature = m.signature;
            mc.parameters = m.parameters;
            mc.start_line = m.start_line;
            mc.end_line = m.end_line;
            mc.code = slice_lines(code, m.start_line, m.end_line);
            mc.nloc = m.nloc;
            mc.complexity = m.complexity;
            mc.token_count = m.token_count;
            mc.before_change = before;
            mc.method_change_id = make_method_change_id(fc.file_change_id, mc.signature, before);
            if (seen.insert(mc.method_change_id).second) {
                out.push_back(std::move(mc));
            }
        }
        return true;
    };
    bool ok = true;
    if (fc.code_before) {
        ok = collect(*fc.code_before, fc.diff_parsed.deleted, true) && ok;
    }
    if (fc.code_after) {
        ok = collect(*fc.code_after, fc.diff_parsed.added, false) && ok;
    }
    if (!ok) {
        out.clear();
    }
    return out;
}

std::vector<DmmUnit> dmm_units(const std::vector<FileChange>& files, const std::vector<MethodChange>& methods) {
    std::vector<DmmUnit> units;
    for (const auto& m : methods) {
        const auto it = std::find_if(files.begin(), files.end(),
                                     [&](const FileChange& f) { return f.file_change_id == m.file_change_id; });
        if (it == files.end()) {
            continue;
        }
        const auto& lines = m.before_change ? it->diff_parsed.deleted : it->diff_parsed.added;
        DmmUnit u;
        u.profile = {m.nloc, m.complexity, static_cast<int>(m.parameters.size())};
        u.before_change = m.before_change;
        u.changed_lines = count_in_span(lines, m.start_line, m.end_line);
        units.push_back(u);
    }
    return units;
}

CommitExtraction extract(const RepoHandle& handle, std::string_view hash, const LanguageDetector& detector) {
    const auto& git = handle.git();
    const auto info = git.commit(hash);
    CommitExtraction ex;
    auto& c = ex.commit;
    c.hash = info.hash;
    c.repo_url = handle.repo_url();
    c.author_name = info.author_name;
    c.author_date = info.author_date;
    c.committer_date = info.committer_date;
    c.message = info.message;
    c.is_merge = info.parents.size() > 1;

    for (const auto& change : git.changes(info)) {
        FileChange fc;
        fc.hash = info.hash;
        fc.old_path = change.old_path;
        fc.new_path = change.new_path;
        fc.change_type = to_change_type(change.kind);
        fc.filename = basename_of(change.new_path ? *change.new_path : change.old_path.value_or(""));
        fc.file_change_id =
            make_file_change_id(c.repo_url, info.hash, fc.old_path.value_or(""), fc.new_path.value_or(""));
        fc.diff = utf8_lossy(git.diff(info, change));

        std::optional<std::string> before;
        std::optional<std::string> after;
        bool binary = false;
        if (change.old_path) {
            before = read_text(git, change.old_blob, change.old_mode);
            binary = binary || !before;
        }
        if (change.new_path) {
            after = read_text(git, change.new_blob, change.new_mode);
            binary = binary || !after;
        }
        fc.binary = binary;
        if (!binary) {
            fc.code_before = std::move(before);
            fc.code_after = std::move(after);
            try {
                fc.diff_parsed = parse_diff(fc.diff);
            } catch (const DiffParseError& e) {
                ex.warnings.push_back(fmt::format("{}: {}", fc.filename, e.what()));
                fc.diff_parsed = {};
            }
            fc.num_lines_added = static_cast<int>(fc.diff_parsed.added.size());
            fc.num_lines_deleted = static_cast<int>(fc.diff_parsed.deleted.size());
            const auto& path = fc.new_path ? *fc.new_path : *fc.old_path;
            const auto& content = fc.code_after ? *fc.code_after : *fc.code_before;
            fc.programming_language = detector.detect(path, content);
            if (fc.code_after) {
                const auto metrics = measure_source(*fc.code_after, fc.programming_language.value_or(""));
                fc.nloc = metrics.nloc;
                fc.token_count = metrics.token_count;
                fc.complexity = metrics.complexity;
            }
        }
        c.num_lines_added += fc.num_lines_added;
        c.num_lines_deleted += fc.num_lines_deleted;
        auto methods = extract_method_changes(fc, &ex.warnings);
        ex.methods.insert(ex.methods.end(), std::make_move_iterator(methods.begin()),
                          std::make_move_iterator(methods.end()));
        ex.files.push_back(std::move(fc));
    }
    const auto units = dmm_units(ex.files, ex.methods);
    const auto scores = dmm_scores(units);
    c.dmm_unit_size = scores.unit_size;
    c.dmm_unit_complexity = scores.unit_complexity;
    c.dmm_unit_interfacing = scores.unit_interfacing;
    return ex;
}

CommitChange extract_commit(const RepoHandle& handle, std::string_view hash) {
    return extract(handle, hash).commit;
}

std::vector<FileChange> extract_file_changes(const RepoHandle& handle, std::string_view hash) {
    return extract(handle, hash).files;
}

}  // namespace cvefix
