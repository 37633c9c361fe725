#include "slink/sql/lexer.hpp"

#include <array>
#include <cctype>

#include "slink/error.hpp"

namespace slink::sql {

namespace {

constexpr std::array kKeywords = {
    "select", "distinct", "from",  "join",   "inner",     "left",  "right", "full",
    "outer",  "cross",    "on",    "as",     "where",     "and",   "or",    "not",
    "between", "in",      "like",  "is",     "null",      "group", "by",    "having",
    "order",  "limit",    "union", "intersect", "except", "all",   "asc",   "desc",
    "exists", "case",     "cast",  "offset",
};

bool is_keyword(std::string_view lower) {
  for (const char* k : kKeywords)
    if (lower == k) return true;
  return false;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

bool token_is(const Token& tok, std::string_view lower_text) {
  if (tok.text.size() != lower_text.size()) return false;
  for (std::size_t i = 0; i < lower_text.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(tok.text[i])) != lower_text[i]) return false;
  return true;
}

std::vector<Token> tokenize_sql(std::string_view sql) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = sql.size();
  while (i < n) {
    char c = sql[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '\'' || c == '"') {
      // quoted literal value; '' inside a single-quoted string escapes a quote
      char quote = c;
      ++i;
      while (true) {
        if (i >= n) throw LexError("unterminated string literal", start);
        if (sql[i] == quote) {
          if (quote == '\'' && i + 1 < n && sql[i + 1] == quote) {
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        ++i;
      }
      out.push_back({TokenKind::String, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '`' || c == '[') {
      char close = (c == '`') ? '`' : ']';
      ++i;
      while (i < n && sql[i] != close) ++i;
      if (i >= n) throw LexError("unterminated quoted identifier", start);
      ++i;
      out.push_back({TokenKind::Identifier, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
      if (i < n && sql[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
      }
      out.push_back({TokenKind::Number, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (ident_start(c)) {
      while (i < n && ident_char(sql[i])) ++i;
      std::string text(sql.substr(start, i - start));
      TokenKind kind = is_keyword(to_lower(text)) ? TokenKind::Keyword : TokenKind::Identifier;
      out.push_back({kind, std::move(text), start});
      continue;
    }
    if (c == '*') {
      out.push_back({TokenKind::Star, "*", start});
      ++i;
      continue;
    }
    if (c == '<' || c == '>' || c == '!' || c == '=') {
      ++i;
      if (i < n && (sql[i] == '=' || (c == '<' && sql[i] == '>'))) ++i;
      out.push_back({TokenKind::Operator, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '+' || c == '-' || c == '/' || c == '%') {
      out.push_back({TokenKind::Operator, std::string(1, c), start});
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == ',' || c == ';' || c == '.') {
      out.push_back({TokenKind::Punct, std::string(1, c), start});
      ++i;
      continue;
    }
    throw LexError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({TokenKind::End, "", n});
  return out;
}

}  // namespace slink::sql
