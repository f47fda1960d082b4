// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <string>
#include <string_view>

namespace cvefix {

/// Lower-case hex SHA-256 digest.
[[nodiscard]] std::string sha256_hex(std::string_view data);

/// Inflates gzip (or zlib) data. Throws std::runtime_error on corrupt input.
[[nodiscard]] std::string gunzip(std::string_view compressed);

/// Deflates to a gzip stream.
[[nodiscard]] std::string gzip(std::string_view data);

/// Replaces invalid UTF-8 sequences with U+FFFD. Valid input is returned unchanged.
[[nodiscard]] std::string utf8_lossy(std::string_view bytes);

[[nodiscard]] bool is_valid_utf8(std::string_view bytes);

[[nodiscard]] std::string base64_encode(std::string_view data);

/// Percent-encodes everything except RFC 3986 unreserved characters.
[[nodiscard]] std::string url_encode(std::string_view text);

}  // namespace cvefix
