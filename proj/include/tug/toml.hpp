#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tug::toml {

// Minimal TOML reader covering what the pipeline configs use: [table]
// headers, bare/quoted keys, basic strings, integers, floats, booleans and
// comments. Arrays, inline tables, dates and multi-line strings are
// rejected with a line-numbered error.

using Value = std::variant<std::string, std::int64_t, double, bool>;

struct Document {
  // table name ("" for root) -> key -> value
  std::map<std::string, std::map<std::string, Value>> tables;

  const Value* find(std::string_view table, std::string_view key) const;
};

Document parse(std::string_view text, std::string_view origin = "<string>");
Document parse_file(const std::filesystem::path& path);

/// Numeric lookup accepting either an integer or a float value.
std::optional<double> get_number(const Document& doc, std::string_view table,
                                 std::string_view key);
std::optional<std::string> get_string(const Document& doc, std::string_view table,
                                      std::string_view key);
std::optional<bool> get_bool(const Document& doc, std::string_view table,
                             std::string_view key);

}  // namespace tug::toml
