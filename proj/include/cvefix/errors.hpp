// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <chrono>
#include <stdexcept>
#include <string>

namespace cvefix {

/// Base class for all errors raised by the collection pipeline.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unrecoverable failure while fetching the vulnerability feeds. Aborts a collection run.
class IngestError : public Error {
public:
    IngestError(int year, const std::string& what)
        : Error("feed " + std::to_string(year) + ": " + what), year_(year) {}

    int year() const noexcept { return year_; }

private:
    int year_;
};

/// The repository is gone (deleted, renamed, private) or cannot be cloned.
class RepoUnavailable : public Error {
public:
    RepoUnavailable(std::string repo_url, const std::string& reason)
        : Error(repo_url + ": repository unavailable: " + reason), repo_url_(std::move(repo_url)) {}

    const std::string& repo_url() const noexcept { return repo_url_; }

private:
    std::string repo_url_;
};

/// A forge answered 403/429 with rate-limit headers.
class RateLimited : public Error {
public:
    RateLimited(const std::string& what, std::chrono::sys_seconds reset_at)
        : Error(what), reset_at_(reset_at) {}

    std::chrono::sys_seconds reset_at() const noexcept { return reset_at_; }

private:
    std::chrono::sys_seconds reset_at_;
};

/// The fix hash does not resolve in the cloned history.
class CommitNotFound : public Error {
public:
    using Error::Error;
};

class DiffParseError : public Error {
public:
    explicit DiffParseError(std::string header)
        : Error("malformed hunk header: " + header), header_(std::move(header)) {}

    const std::string& header() const noexcept { return header_; }

private:
    std::string header_;
};

class StorageError : public Error {
public:
    using Error::Error;
};

/// Transport-level failure (DNS, TLS, connection refused). Distinct from an HTTP error status.
class NetworkError : public Error {
public:
    using Error::Error;
};

}  // namespace cvefix
