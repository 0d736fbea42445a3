#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace botreg {

// Shortest round-trip decimal form of x ("1.5", "0.1", "nan" never appears:
// non-finite values throw ValueError since no file format here admits them).
std::string format_double(double x);

// x rendered with exactly two decimals, ties away from zero (4.845 -> "4.85"
// in the half-up sense: we add 0.5 ulp-free via integer arithmetic on the
// scaled value).
std::string format_fixed2(double x);

std::string format_int(std::int64_t x);

// Strict numeric parses: the whole token must be consumed, no leading or
// trailing junk, no empty tokens. Throw ParseError with the offending token.
double parse_double(std::string_view token, std::string_view context);
std::int64_t parse_int(std::string_view token, std::string_view context);

// True/false literals only ("true"/"false"), anything else throws.
bool parse_bool(std::string_view token, std::string_view context);

// Split one CSV line on commas. No quoting or escaping; a trailing '\r' is
// stripped first (CRLF tolerance). Empty fields are preserved.
std::vector<std::string_view> split_csv_line(std::string_view line);

// Read an entire file; IoError if it cannot be opened or read.
std::string read_file(const std::string& path);

// Write via temp file + rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, std::string_view content);

// Split text into lines on '\n', dropping a final empty piece after a
// trailing newline. '\r' before the newline is kept (callers that care use
// split_csv_line, which strips it).
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace botreg
