#pragma once

// Small text helpers shared by the loaders and report writers.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scimetrics {

/// One parsed CSV record with the 1-based physical line it started on.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 parser: quoted fields may contain separators, doubled quotes and
/// line breaks. Accepts LF or CRLF. A trailing newline does not produce an
/// empty row; blank lines are skipped.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

/// Case-insensitive substring test; an empty needle never matches.
bool icontains(std::string_view haystack, std::string_view needle);
bool iequals(std::string_view a, std::string_view b);

/// printf-style fixed-point formatting ("%.<decimals>f").
std::string fixed(double value, int decimals);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace scimetrics
