#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmc::csv {

using Row = std::vector<std::string>;

/// Quotes a field when it contains a comma, quote, or line break (RFC 4180).
std::string escape(const std::string& field);

/// Writes one row terminated by '\n'.
void write_row(std::ostream& out, const Row& row);

/// Parses a whole CSV document. Quoted fields may span lines.
std::vector<Row> parse(const std::string& text);

std::vector<Row> read_file(const std::string& path);

}  // namespace pmc::csv
