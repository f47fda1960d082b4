// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#include <catch_amalgamated.hpp>

#include <algorithm>

#include "cvefix/change_extractor.hpp"
#include "cvefix/errors.hpp"
#include "fixture.hpp"

using namespace cvefix;
using cvefix::testing::git;
using cvefix::testing::put;

namespace {

const FileChange& by_name(const std::vector<FileChange>& files, const std::string& name) {
    const auto it = std::find_if(files.begin(), files.end(), [&](const FileChange& f) { return f.filename == name; });
    REQUIRE(it != files.end());
    return *it;
}

struct World {
    cvefix::testing::TempDir tmp{"cvefix-extract"};
    cvefix::testing::FixtureWorld world = cvefix::testing::build_fixture_world(tmp.path() / "world");
    RepoHandle handle(const char* url) const {
        return clone_repo(url, tmp.path() / "work", {world.mirror_dir, false});
    }
};

}  // namespace

TEST_CASE("fixture history", "[extractor]") {
    const World w;
    const auto lib = w.handle(cvefix::testing::kLibparse);

    SECTION("abbreviated hashes resolve") {
        const auto& full = w.world.commits.at("a2");
        CHECK(lib.resolve(full.substr(0, 7)) == full);
        CHECK_THROWS_AS(lib.resolve("0000000"), CommitNotFound);
    }
    SECTION("root commit adds every file") {
        const auto files = extract_file_changes(lib, w.world.commits.at("a0"));
        CHECK(files.size() == 4);
        for (const auto& f : files) {
            CHECK(f.change_type == ChangeType::added);
            CHECK_FALSE(f.code_before);
        }
    }
    SECTION("one-line fix") {
        const auto ex = extract(lib, w.world.commits.at("a1"));
        CHECK(ex.commit.num_lines_added == 1);
        CHECK(ex.commit.num_lines_deleted == 1);
        CHECK_FALSE(ex.commit.is_merge);
        REQUIRE(ex.files.size() == 1);
        CHECK(ex.files[0].diff_parsed.added.size() == 1);
        CHECK(ex.files[0].diff_parsed.deleted.size() == 1);
        CHECK(ex.files[0].programming_language == "C");
        REQUIRE(ex.methods.size() == 2);
        CHECK(ex.methods[0].name == "parse_header");
        CHECK(ex.methods[0].before_change != ex.methods[1].before_change);
    }
    SECTION("binary file") {
        const auto files = extract_file_changes(lib, w.world.commits.at("a2"));
        const auto& logo = by_name(files, "logo.png");
        CHECK_FALSE(logo.code_before);
        CHECK_FALSE(logo.code_after);
        CHECK_FALSE(logo.programming_language);
        CHECK(logo.diff_parsed.added.empty());
        CHECK_FALSE(logo.diff.empty());
    }
    SECTION("rename") {
        const auto files = extract_file_changes(lib, w.world.commits.at("a3"));
        const auto& renamed = by_name(files, "util_compat.h");
        CHECK(renamed.change_type == ChangeType::renamed);
        CHECK(renamed.old_path == "src/util.h");
        CHECK(renamed.new_path == "src/util_compat.h");
    }

    const auto web = w.handle(cvefix::testing::kWebtool);
    SECTION("merge commit compares against its first parent") {
        const auto ex = extract(web, w.world.commits.at("b4"));
        CHECK(ex.commit.is_merge);
        REQUIRE(ex.files.size() == 1);
        CHECK(ex.files[0].filename == "app.js");
        CHECK(ex.files[0].programming_language == "JavaScript");
    }
}

TEST_CASE("scripted edits across two files", "[extractor]") {
    cvefix::testing::TempDir tmp("cvefix-edits");
    const auto repo = tmp.path() / "repo";
    std::filesystem::create_directories(repo);
    git(repo, {"init", "-q"});
    put(repo, "a.c", "/* file comment */\nint f(int x) {\n    return x;\n}\n\nint g(int y) {\n    return y;\n}\n");
    put(repo, "b.txt", "one\ntwo\n");
    git(repo, {"add", "-A"});
    git(repo, {"commit", "-q", "-m", "base"});

    put(repo, "a.c", "/* file comment */\nint f(int x) {\n    x++;\n    return x;\n}\n\nint g(int y) {\n    return y;\n}\n");
    put(repo, "b.txt", "one\nthree\nfour\n");
    git(repo, {"add", "-A"});
    git(repo, {"commit", "-q", "-m", "edit"}, "2020-01-02T00:00:00Z");
    const auto edit = git(repo, {"rev-parse", "HEAD"});

    put(repo, "a.c", "/* file comment, reworded */\nint f(int x) {\n    x++;\n    return x;\n}\n\nint g(int y) {\n    return y;\n}\n");
    git(repo, {"add", "-A"});
    git(repo, {"commit", "-q", "-m", "comment"}, "2020-01-03T00:00:00Z");
    const auto comment = git(repo, {"rev-parse", "HEAD"});

    put(repo, "a.c", "/* file comment, reworded */\nint f(int x) {\n    x++;\n    return x;\n}\n\nint g(int y) {\n    return -y;\n}\n");
    git(repo, {"add", "-A"});
    git(repo, {"commit", "-q", "-m", "g"}, "2020-01-04T00:00:00Z");
    const auto in_g = git(repo, {"rev-parse", "HEAD"});

    const auto handle = clone_repo(repo.string(), tmp.path() / "work");
    const auto ex = extract(handle, edit);
    CHECK(ex.commit.num_lines_added == 3);
    CHECK(ex.commit.num_lines_deleted == 1);
    REQUIRE(ex.methods.size() == 1);
    CHECK(ex.methods[0].name == "f");
    CHECK_FALSE(ex.methods[0].before_change);

    CHECK(extract(handle, comment).methods.empty());

    const auto g = extract(handle, in_g);
    REQUIRE(g.methods.size() == 2);
    CHECK(g.methods[0].name == "g");
    CHECK(g.methods[1].name == "g");
    CHECK(g.methods[0].before_change != g.methods[1].before_change);

    CHECK_THROWS_AS(extract(handle, "1234567890abcdef1234567890abcdef12345678"), CommitNotFound);
}

TEST_CASE("unreachable repositories", "[extractor]") {
    cvefix::testing::TempDir tmp("cvefix-gone");
    CHECK_THROWS_AS(clone_repo("/nonexistent/path/to/repo", tmp.path()), RepoUnavailable);
    CHECK_THROWS_AS(clone_repo("https://github.com/ghost/vanished", tmp.path(), {tmp.path() / "mirror", false}),
                    RepoUnavailable);
}
