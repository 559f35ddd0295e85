#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tug::csv {

/// Quotes a field when RFC-4180 requires it (embedded comma, quote or newline).
std::string escape(std::string_view field);

std::string join_row(std::span<const std::string> fields);

inline std::string join_row(std::initializer_list<std::string> fields) {
  return join_row(std::span<const std::string>(fields.begin(), fields.size()));
}

/// RFC-4180 parser (quoted fields, escaped quotes, CRLF or LF). Rows keep
/// their field count as found; callers validate shape.
std::vector<std::vector<std::string>> parse(std::string_view text);
std::vector<std::vector<std::string>> parse_file(const std::filesystem::path& path);

/// Fixed-notation, locale-free rendering with 6 significant digits and
/// trailing zeros trimmed. Non-finite values render as the empty field.
std::string format_number(double v);

/// Shortest representation that round-trips the exact double.
std::string format_full(double v);

/// Strict double parse of a whole (whitespace-trimmed) field.
std::optional<double> parse_double(std::string_view field);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace tug::csv
