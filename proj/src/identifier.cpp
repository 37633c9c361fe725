#include "slink/identifier.hpp"

#include <algorithm>
#include <cctype>

#include "slink/error.hpp"

namespace slink {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool quoted_pair(char open, char close) {
  return (open == '"' && close == '"') || (open == '\'' && close == '\'') ||
         (open == '`' && close == '`') || (open == '[' && close == ']');
}

}  // namespace

std::string normalize_identifier(std::string_view raw) {
  std::string_view s = trim(raw);
  while (s.size() >= 2 && quoted_pair(s.front(), s.back())) {
    s.remove_prefix(1);
    s.remove_suffix(1);
    s = trim(s);
  }
  if (s.empty()) throw ConfigError("invalid identifier: empty after trimming/unquoting");
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string qualify_column(std::string_view table, std::string_view column) {
  std::string out;
  out.reserve(table.size() + column.size() + 1);
  out.append(table);
  out.push_back('.');
  out.append(column);
  return out;
}

std::pair<std::string, std::string> split_qualified(std::string_view qualified) {
  auto dot = qualified.find('.');
  if (dot == std::string_view::npos) return {std::string(), std::string(qualified)};
  return {std::string(qualified.substr(0, dot)), std::string(qualified.substr(dot + 1))};
}

}  // namespace slink
