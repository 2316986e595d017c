#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collective::detail {

/// Splits one CSV record. Supports double-quoted fields with "" escapes;
/// fields are trimmed of surrounding blanks and a trailing CR.
std::vector<std::string> split_csv_line(std::string_view line);

/// Lines of `text`, without terminators.
std::vector<std::string_view> split_lines(std::string_view text);

std::optional<double> parse_double(std::string_view text);

/// Shortest-safe round-trip form: 17 significant digits.
std::string format_double(double value);

/// Quotes a field if it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace collective::detail
