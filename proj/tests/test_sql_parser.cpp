#include <doctest.h>

#include "slink/error.hpp"
#include "slink/sql/parser.hpp"

using namespace slink::sql;

TEST_CASE("single aggregate over one base table") {
  auto ast = parse_sql("SELECT count(*) FROM concert");
  REQUIRE(ast->items.size() == 1);
  REQUIRE(ast->items[0].expr);
  CHECK(ast->items[0].expr->kind == Expr::Kind::Call);
  CHECK(ast->items[0].expr->op == "count");
  CHECK(ast->items[0].expr->star_arg);
  REQUIRE(ast->from.size() == 1);
  CHECK(ast->from[0].table == "concert");
  CHECK(ast->set_op == SelectStmt::SetOp::None);
}

TEST_CASE("set operation links two cores") {
  auto ast = parse_sql("SELECT name FROM singer UNION SELECT name FROM band");
  CHECK(ast->set_op == SelectStmt::SetOp::Union);
  REQUIRE(ast->set_rhs);
  CHECK(ast->set_rhs->from[0].table == "band");
}

TEST_CASE("join with aliases and condition") {
  auto ast = parse_sql(
      "SELECT T1.name FROM singer AS T1 JOIN concert AS T2 ON T1.id = T2.singer_id");
  REQUIRE(ast->from.size() == 2);
  CHECK(ast->from[0].table == "singer");
  CHECK(ast->from[0].alias == "t1");
  CHECK(ast->from[1].table == "concert");
  CHECK(ast->from[1].alias == "t2");
  CHECK(ast->from[1].joined);
  REQUIRE(ast->from[1].join_condition);
  CHECK(ast->from[1].join_condition->kind == Expr::Kind::Binary);
}

TEST_CASE("full clause set parses") {
  auto ast = parse_sql(
      "SELECT DISTINCT dept, avg(salary) FROM teacher WHERE age > 30 AND name LIKE 'A%' "
      "GROUP BY dept HAVING count(*) >= 2 ORDER BY avg(salary) DESC LIMIT 3");
  CHECK(ast->distinct);
  CHECK(ast->items.size() == 2);
  CHECK(ast->where);
  CHECK(ast->group_by.size() == 1);
  CHECK(ast->having);
  REQUIRE(ast->order_by.size() == 1);
  CHECK(ast->order_by[0].descending);
  CHECK(ast->limit == 3);
}

TEST_CASE("predicates parse") {
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE a BETWEEN 1 AND 5"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE a NOT BETWEEN 1 AND 5"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE a IN (1, 2, 3)"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE a NOT IN (SELECT b FROM u)"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE a IS NOT NULL"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE NOT a = 1 OR a = 2"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE a > (SELECT avg(a) FROM t)"));
  CHECK_NOTHROW(parse_sql("SELECT a * 2 + 1 FROM t WHERE -a < 5"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t WHERE b = \"string value\""));
}

TEST_CASE("derived tables and bare aliases") {
  auto ast = parse_sql("SELECT x.name FROM (SELECT name FROM singer) x");
  REQUIRE(ast->from.size() == 1);
  CHECK(ast->from[0].kind == TableSource::Kind::Subquery);
  CHECK(ast->from[0].alias == "x");
}

TEST_CASE("join type prefixes are accepted") {
  CHECK_NOTHROW(parse_sql("SELECT a FROM t INNER JOIN u ON t.id = u.id"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t LEFT OUTER JOIN u ON t.id = u.id"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t, u WHERE t.id = u.id"));
}

TEST_CASE("trailing semicolon allowed, trailing garbage not") {
  CHECK_NOTHROW(parse_sql("SELECT a FROM t;"));
  CHECK_NOTHROW(parse_sql("SELECT a FROM t u"));  // bare alias, valid
  CHECK_THROWS_AS(parse_sql("SELECT a FROM t WHERE a = 1 2"), slink::ParseError);
}

TEST_CASE("syntax errors name the offending token") {
  try {
    parse_sql("SELECT FROM t");
    FAIL("expected ParseError");
  } catch (const slink::ParseError& e) {
    CHECK(std::string(e.what()).find("FROM") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_sql("SELECT a FROM"), slink::ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT a FROM t WHERE"), slink::ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT a FROM t LIMIT x"), slink::ParseError);
}

TEST_CASE("out-of-dialect constructs fail loudly by name") {
  try {
    parse_sql("SELECT a FROM t WHERE EXISTS (SELECT 1 FROM u)");
    FAIL("expected ParseError");
  } catch (const slink::ParseError& e) {
    CHECK(std::string(e.what()).find("EXISTS") != std::string::npos);
  }
  try {
    parse_sql("SELECT lower(a) FROM t");
    FAIL("expected ParseError");
  } catch (const slink::ParseError& e) {
    CHECK(std::string(e.what()).find("lower") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_sql("SELECT CASE WHEN a THEN 1 END FROM t"), slink::ParseError);
  CHECK_THROWS_AS(parse_sql("SELECT a FROM t LIMIT 1 OFFSET 2"), slink::ParseError);
}
