#include "tug/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tug/error.hpp"

namespace tug::toml {
namespace {

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

[[noreturn]] void parse_fail(std::string_view origin, std::size_t line,
                             const std::string& what) {
  fail(ErrorKind::InvalidValue,
       std::string(origin) + ":" + std::to_string(line) + ": " + what);
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Removes a trailing comment that is not inside a basic string.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

std::string parse_basic_string(std::string_view raw, std::string_view origin,
                               std::size_t line) {
  std::string out;
  for (std::size_t i = 1; i + 1 <= raw.size(); ++i) {
    char c = raw[i];
    if (c == '"') {
      if (i + 1 != raw.size())
        parse_fail(origin, line, "unexpected content after closing quote");
      return out;
    }
    if (c == '\\') {
      if (++i >= raw.size()) parse_fail(origin, line, "dangling escape");
      switch (raw[i]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: parse_fail(origin, line, "unsupported string escape");
      }
    } else {
      out += c;
    }
  }
  parse_fail(origin, line, "unterminated string");
}

Value parse_value(std::string_view raw, std::string_view origin, std::size_t line) {
  if (raw.empty()) parse_fail(origin, line, "missing value");
  if (raw.front() == '"') return parse_basic_string(raw, origin, line);
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '[' || raw.front() == '{' || raw.front() == '\'')
    parse_fail(origin, line, "unsupported TOML construct (arrays, inline tables and "
                             "literal strings are not accepted here)");

  // numbers; TOML allows underscore separators between digits
  std::string digits;
  digits.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '_') {
      const bool ok = i > 0 && i + 1 < raw.size() &&
                      std::isdigit(static_cast<unsigned char>(raw[i - 1])) &&
                      std::isdigit(static_cast<unsigned char>(raw[i + 1]));
      if (!ok) parse_fail(origin, line, "misplaced underscore in number");
      continue;
    }
    digits += raw[i];
  }

  const bool looks_float = digits.find_first_of(".eE") != std::string::npos;
  if (!looks_float) {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), iv);
    if (ec == std::errc() && p == digits.data() + digits.size()) return iv;
  }
  double dv = 0.0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dv);
  if (ec == std::errc() && p == digits.data() + digits.size()) return dv;
  parse_fail(origin, line, "cannot parse value '" + std::string(raw) + "'");
}

std::string parse_key(std::string_view raw, std::string_view origin, std::size_t line) {
  if (raw.empty()) parse_fail(origin, line, "empty key");
  if (raw.front() == '"') return parse_basic_string(raw, origin, line);
  for (char c : raw)
    if (!is_bare_key_char(c))
      parse_fail(origin, line, "invalid key '" + std::string(raw) + "'");
  return std::string(raw);
}

}  // namespace

const Value* Document::find(std::string_view table, std::string_view key) const {
  auto t = tables.find(std::string(table));
  if (t == tables.end()) return nullptr;
  auto k = t->second.find(std::string(key));
  return k == t->second.end() ? nullptr : &k->second;
}

Document parse(std::string_view text, std::string_view origin) {
  Document doc;
  std::string current;  // root table
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    line = strip(strip_comment(line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        parse_fail(origin, line_no, "malformed table header");
      if (line[1] == '[') parse_fail(origin, line_no, "arrays of tables are not supported");
      std::string_view name = strip(line.substr(1, line.size() - 2));
      if (name.empty()) parse_fail(origin, line_no, "empty table name");
      for (char c : name)
        if (!is_bare_key_char(c))
          parse_fail(origin, line_no, "invalid table name '" + std::string(name) + "'");
      current = std::string(name);
      if (!doc.tables.emplace(current, std::map<std::string, Value>{}).second)
        parse_fail(origin, line_no, "table '" + current + "' defined twice");
      continue;
    }

    const std::size_t eq = [&] {
      bool in_string = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
          if (c == '\\') ++i;
          else if (c == '"') in_string = false;
        } else if (c == '"') {
          in_string = true;
        } else if (c == '=') {
          return i;
        }
      }
      return std::string_view::npos;
    }();
    if (eq == std::string_view::npos)
      parse_fail(origin, line_no, "expected key = value");

    const std::string key = parse_key(strip(line.substr(0, eq)), origin, line_no);
    const Value value = parse_value(strip(line.substr(eq + 1)), origin, line_no);
    auto [it, inserted] = doc.tables[current].emplace(key, value);
    if (!inserted)
      parse_fail(origin, line_no, "duplicate key '" + key + "'");
  }
  return doc;
}

Document parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorKind::IoError, "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

std::optional<double> get_number(const Document& doc, std::string_view table,
                                 std::string_view key) {
  const Value* v = doc.find(table, key);
  if (v == nullptr) return std::nullopt;
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  fail(ErrorKind::InvalidValue,
       "key '" + std::string(table) + "." + std::string(key) + "' must be a number");
}

std::optional<std::string> get_string(const Document& doc, std::string_view table,
                                      std::string_view key) {
  const Value* v = doc.find(table, key);
  if (v == nullptr) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  fail(ErrorKind::InvalidValue,
       "key '" + std::string(table) + "." + std::string(key) + "' must be a string");
}

std::optional<bool> get_bool(const Document& doc, std::string_view table,
                             std::string_view key) {
  const Value* v = doc.find(table, key);
  if (v == nullptr) return std::nullopt;
  if (const auto* b = std::get_if<bool>(v)) return *b;
  fail(ErrorKind::InvalidValue,
       "key '" + std::string(table) + "." + std::string(key) + "' must be a boolean");
}

}  // namespace tug::toml
