#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spanlab::csv {

/// A parsed CSV document. `rows` excludes the header; `line_numbers[i]` is the
/// 1-based source line of `rows[i]`.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;
};

/// Parses comma-separated text with optional double-quoted fields. Blank lines
/// and lines starting with '#' are skipped. Accepts LF or CRLF.
Table parse(std::string_view text);

/// Requires the header to contain `expected` columns in this exact order.
/// Throws ParseError naming the first missing column.
void require_header(const Table& table, const std::vector<std::string>& expected);

/// Quotes a field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

/// Reads a whole file; throws IoError("file not found: ...") when absent.
std::string read_file(const std::string& path);

}  // namespace spanlab::csv
