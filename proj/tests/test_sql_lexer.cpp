#include <doctest.h>

#include "slink/error.hpp"
#include "slink/sql/lexer.hpp"

using namespace slink::sql;

TEST_CASE("basic statement lexes into classified tokens") {
  auto toks = tokenize_sql("SELECT name FROM singer");
  REQUIRE(toks.size() == 5);  // + End
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(toks[1].kind == TokenKind::Identifier);
  CHECK(toks[1].text == "name");
  CHECK(toks[2].kind == TokenKind::Keyword);
  CHECK(toks[3].kind == TokenKind::Identifier);
  CHECK(toks[4].kind == TokenKind::End);
}

TEST_CASE("count(*) lexes count as identifier and * as star") {
  auto toks = tokenize_sql("count(*)");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0].kind == TokenKind::Identifier);
  CHECK(toks[1].kind == TokenKind::Punct);
  CHECK(toks[2].kind == TokenKind::Star);
  CHECK(toks[3].kind == TokenKind::Punct);
}

TEST_CASE("operators and numbers") {
  auto toks = tokenize_sql("WHERE age > 20");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(toks[1].kind == TokenKind::Identifier);
  CHECK(toks[2].kind == TokenKind::Operator);
  CHECK(toks[2].text == ">");
  CHECK(toks[3].kind == TokenKind::Number);
  CHECK(toks[3].text == "20");

  auto two_char = tokenize_sql("a >= 1.5 AND b <> c AND d != e");
  CHECK(two_char[1].text == ">=");
  CHECK(two_char[2].text == "1.5");
  CHECK(two_char[5].text == "<>");
  CHECK(two_char[9].text == "!=");
}

TEST_CASE("keywords recognized case-insensitively") {
  auto toks = tokenize_sql("select Name FROM Singer");
  CHECK(toks[0].kind == TokenKind::Keyword);
  CHECK(token_is(toks[0], "select"));
  CHECK(toks[1].text == "Name");  // raw text preserved
}

TEST_CASE("quoted values and identifiers stay single tokens") {
  auto toks = tokenize_sql("WHERE name = 'O''Brien' OR city = \"New York\"");
  CHECK(toks[3].kind == TokenKind::String);
  CHECK(toks[3].text == "'O''Brien'");
  CHECK(toks[7].kind == TokenKind::String);
  CHECK(toks[7].text == "\"New York\"");

  auto quoted_ident = tokenize_sql("SELECT `weird name` FROM [table one]");
  CHECK(quoted_ident[1].kind == TokenKind::Identifier);
  CHECK(quoted_ident[1].text == "`weird name`");
  CHECK(quoted_ident[3].kind == TokenKind::Identifier);
}

TEST_CASE("token texts at their offsets reconstruct the input") {
  const std::string sql =
      "SELECT T1.name , count(*) FROM singer AS T1 WHERE T1.age >= 20 AND name LIKE 'A%'";
  auto toks = tokenize_sql(sql);
  std::string rebuilt(sql.size(), ' ');
  for (const auto& t : toks) {
    if (t.kind == TokenKind::End) continue;
    CHECK(sql.substr(t.offset, t.text.size()) == t.text);
    rebuilt.replace(t.offset, t.text.size(), t.text);
  }
  CHECK(rebuilt == sql);
}

TEST_CASE("lex errors carry byte offsets") {
  CHECK_THROWS_AS(tokenize_sql("SELECT 'unterminated"), slink::LexError);
  try {
    tokenize_sql("SELECT 'oops");
  } catch (const slink::LexError& e) {
    CHECK(e.offset() == 7);
  }
  CHECK_THROWS_AS(tokenize_sql("SELECT a ~ b"), slink::LexError);
}
