#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rpaclone::csv {

using Row = std::vector<std::string>;

/// Comma-delimited, double-quote escaped (RFC 4180 style). Accepts LF or
/// CRLF line endings and a leading UTF-8 BOM. Blank lines are dropped.
std::vector<Row> parse(std::string_view text, std::string_view source_name = "<csv>");

/// Quotes a field only when it contains a delimiter, quote or line break.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

}  // namespace rpaclone::csv
