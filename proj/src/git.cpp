// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include "cvefix/git.hpp"

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <map>

#include <fmt/format.h>

#include "cvefix/errors.hpp"

extern char** environ;

namespace cvefix {

namespace {

class Pipe {
public:
    Pipe() {
        if (::pipe2(fds_.data(), O_CLOEXEC) != 0) {
            throw Error(fmt::format("pipe: {}", std::strerror(errno)));
        }
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    int read_end() const { return fds_[0]; }
    int write_end() const { return fds_[1]; }
    void close_read() { close_fd(fds_[0]); }
    void close_write() { close_fd(fds_[1]); }

private:
    static void close_fd(int& fd) {
        if (fd >= 0) {
            ::close(fd);
            fd = -1;
        }
    }
    std::array<int, 2> fds_{-1, -1};
};

bool is_hex(std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789abcdefABCDEF") == std::string_view::npos;
}

std::vector<std::string> split_nul(std::string_view s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start < s.size()) {
        const auto end = s.find('\0', start);
        if (end == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const std::vector<std::string>& extra_env,
                          std::string_view stdin_data) {
    if (argv.empty()) {
        throw Error("run_process: empty command");
    }
    Pipe in;
    Pipe out;
    Pipe err;
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in.read_end(), 0);
    posix_spawn_file_actions_adddup2(&actions, out.write_end(), 1);
    posix_spawn_file_actions_adddup2(&actions, err.write_end(), 2);

    std::vector<char*> args;
    for (const auto& a : argv) {
        args.push_back(const_cast<char*>(a.c_str()));
    }
    args.push_back(nullptr);

    std::map<std::string, std::string> env_map;
    std::vector<std::string> env_strings;
    for (char** e = environ; *e != nullptr; ++e) {
        const std::string entry(*e);
        env_map[entry.substr(0, entry.find('='))] = entry;
    }
    for (const auto& entry : extra_env) {
        env_map[entry.substr(0, entry.find('='))] = entry;
    }
    for (const auto& [_, entry] : env_map) {
        env_strings.push_back(entry);
    }
    std::vector<char*> envp;
    for (auto& s : env_strings) {
        envp.push_back(s.data());
    }
    envp.push_back(nullptr);

    pid_t pid = 0;
    const int rc = posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), envp.data());
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw Error(fmt::format("cannot start {}: {}", argv[0], std::strerror(rc)));
    }
    in.close_read();
    out.close_write();
    err.close_write();

    ProcessResult result;
    std::size_t written = 0;
    if (stdin_data.empty()) {
        in.close_write();
    }
    std::array<char, 65536> buf{};
    bool out_open = true;
    bool err_open = true;
    while (out_open || err_open) {
        std::vector<pollfd> fds;
        if (out_open) {
            fds.push_back({out.read_end(), POLLIN, 0});
        }
        if (err_open) {
            fds.push_back({err.read_end(), POLLIN, 0});
        }
        const bool writing = in.write_end() >= 0;
        if (writing) {
            fds.push_back({in.write_end(), POLLOUT, 0});
        }
        if (::poll(fds.data(), fds.size(), -1) < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        for (const auto& p : fds) {
            if (p.revents == 0) {
                continue;
            }
            if (writing && p.fd == in.write_end()) {
                const auto n = ::write(p.fd, stdin_data.data() + written, stdin_data.size() - written);
                if (n > 0) {
                    written += static_cast<std::size_t>(n);
                }
                if (n < 0 || written >= stdin_data.size()) {
                    in.close_write();
                }
                continue;
            }
            const auto n = ::read(p.fd, buf.data(), buf.size());
            if (n > 0) {
                (p.fd == out.read_end() ? result.out : result.err).append(buf.data(), static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                if (p.fd == out.read_end()) {
                    out_open = false;
                } else {
                    err_open = false;
                }
            }
        }
    }
    in.close_write();
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return result;
}

std::vector<std::string> noninteractive_git_env() {
    return {"GIT_TERMINAL_PROMPT=0", "GIT_ASKPASS=true", "SSH_ASKPASS=true", "LC_ALL=C",
            "GIT_CONFIG_NOSYSTEM=1"};
}

GitRepository::GitRepository(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string GitRepository::git(const std::vector<std::string>& args) const {
    std::vector<std::string> argv{"git", "-C", dir_.string(), "-c", "core.quotepath=off"};
    argv.insert(argv.end(), args.begin(), args.end());
    auto r = run_process(argv, noninteractive_git_env());
    if (r.exit_code != 0) {
        throw Error(fmt::format("git {} failed ({}): {}", args.empty() ? "" : args[0], r.exit_code, r.err));
    }
    return std::move(r.out);
}

std::string GitRepository::resolve(std::string_view rev) const {
    if (!(rev == "HEAD" || (is_hex(rev) && rev.size() >= 4 && rev.size() <= 64))) {
        throw CommitNotFound(fmt::format("not a commit hash: '{}'", rev));
    }
    auto r = run_process({"git", "-C", dir_.string(), "rev-parse", "--verify", "--quiet",
                          std::string(rev) + "^{commit}"},
                         noninteractive_git_env());
    if (r.exit_code != 0) {
        throw CommitNotFound(fmt::format("commit {} not found in {}", rev, dir_.string()));
    }
    while (!r.out.empty() && (r.out.back() == '\n' || r.out.back() == '\r')) {
        r.out.pop_back();
    }
    return r.out;
}

CommitInfo GitRepository::commit(std::string_view hash) const {
    const auto full = resolve(hash);
    const auto out = git({"show", "-s", "--no-show-signature",
                          "--format=%H%x00%P%x00%an%x00%ae%x00%aI%x00%cI%x00%B", full});
    auto parts = split_nul(out);
    if (parts.size() < 6) {
        throw Error(fmt::format("unexpected git show output for {}", full));
    }
    CommitInfo info;
    info.hash = parts[0];
    std::string_view parents = parts[1];
    while (!parents.empty()) {
        const auto sp = parents.find(' ');
        info.parents.emplace_back(parents.substr(0, sp));
        if (sp == std::string_view::npos) {
            break;
        }
        parents.remove_prefix(sp + 1);
    }
    info.author_name = parts[2];
    info.author_email = parts[3];
    const auto ad = parse_timestamp(parts[4]);
    const auto cd = parse_timestamp(parts[5]);
    if (!ad || !cd) {
        throw Error(fmt::format("unparseable commit dates for {}", full));
    }
    info.author_date = *ad;
    info.committer_date = *cd;
    std::string message = parts.size() > 6 ? parts[6] : std::string();
    while (!message.empty() && (message.back() == '\n' || message.back() == ' ' || message.back() == '\r')) {
        message.pop_back();
    }
    info.message = std::move(message);
    return info;
}

const std::string& GitRepository::empty_tree() const {
    if (empty_tree_.empty()) {
        auto r = run_process({"git", "-C", dir_.string(), "hash-object", "-t", "tree", "--stdin"},
                             noninteractive_git_env());
        if (r.exit_code != 0) {
            throw Error("cannot compute empty tree id: " + r.err);
        }
        while (!r.out.empty() && r.out.back() == '\n') {
            r.out.pop_back();
        }
        empty_tree_ = r.out;
    }
    return empty_tree_;
}

std::vector<TreeChange> GitRepository::changes(const CommitInfo& commit) const {
    const std::string base = commit.parents.empty() ? empty_tree() : commit.parents.front();
    const auto out = git({"diff-tree", "-r", "-M", "-z", "--no-commit-id", base, commit.hash});
    const auto parts = split_nul(out);
    std::vector<TreeChange> changes;
    std::size_t k = 0;
    while (k < parts.size()) {
        const auto& meta = parts[k++];
        if (meta.empty() || meta[0] != ':') {
            continue;
        }
        // ":oldmode newmode oldsha newsha status"
        std::vector<std::string> fields;
        std::size_t start = 1;
        while (start <= meta.size()) {
            const auto sp = meta.find(' ', start);
            fields.push_back(meta.substr(start, sp == std::string::npos ? std::string::npos : sp - start));
            if (sp == std::string::npos) {
                break;
            }
            start = sp + 1;
        }
        if (fields.size() < 5 || k >= parts.size()) {
            throw Error("unexpected diff-tree output for " + commit.hash);
        }
        TreeChange c;
        c.old_mode = fields[0];
        c.new_mode = fields[1];
        c.old_blob = fields[2];
        c.new_blob = fields[3];
        const char status = fields[4].empty() ? 'M' : fields[4][0];
        if (status == 'R' || status == 'C') {
            if (k + 1 >= parts.size()) {
                throw Error("unexpected diff-tree output for " + commit.hash);
            }
            c.old_path = parts[k++];
            c.new_path = parts[k++];
            c.kind = status == 'R' ? TreeChangeKind::renamed : TreeChangeKind::added;
            if (status == 'C') {
                c.old_path.reset();
            }
        } else {
            const auto& path = parts[k++];
            switch (status) {
                case 'A':
                    c.kind = TreeChangeKind::added;
                    c.new_path = path;
                    break;
                case 'D':
                    c.kind = TreeChangeKind::deleted;
                    c.old_path = path;
                    break;
                default:
                    c.kind = TreeChangeKind::modified;
                    c.old_path = path;
                    c.new_path = path;
                    break;
            }
        }
        changes.push_back(std::move(c));
    }
    return changes;
}

std::string GitRepository::diff(const CommitInfo& commit, const TreeChange& change) const {
    const std::string base = commit.parents.empty() ? empty_tree() : commit.parents.front();
    std::vector<std::string> args{"diff", "--no-color", "--no-ext-diff", "--no-textconv", "-M",
                                  "--src-prefix=a/", "--dst-prefix=b/", base, commit.hash, "--"};
    if (change.old_path) {
        args.push_back(*change.old_path);
    }
    if (change.new_path && change.new_path != change.old_path) {
        args.push_back(*change.new_path);
    }
    const auto out = git(args);
    std::size_t pos = 0;
    while (pos < out.size()) {
        const std::string_view line(out.data() + pos, out.size() - pos);
        if (line.starts_with("@@") || line.starts_with("Binary files") || line.starts_with("GIT binary patch")) {
            return out.substr(pos);
        }
        const auto nl = out.find('\n', pos);
        if (nl == std::string::npos) {
            break;
        }
        pos = nl + 1;
    }
    return {};
}

std::string GitRepository::blob(std::string_view object_id) const {
    return git({"cat-file", "blob", std::string(object_id)});
}

std::size_t GitRepository::blob_size(std::string_view object_id) const {
    const auto out = git({"cat-file", "-s", std::string(object_id)});
    return static_cast<std::size_t>(std::stoull(out));
}

}  // namespace cvefix
