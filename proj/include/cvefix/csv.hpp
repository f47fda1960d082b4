// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 cvefix contributors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvefix::csv {

using Row = std::vector<std::string>;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and newlines.
/// Accepts LF or CRLF record separators. Throws ParseError on an unterminated quote.
[[nodiscard]] std::vector<Row> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote, CR or LF.
[[nodiscard]] std::string escape(std::string_view field);

/// Joins escaped fields with commas and terminates the record with LF.
[[nodiscard]] std::string format_row(const Row& row);

}  // namespace cvefix::csv
