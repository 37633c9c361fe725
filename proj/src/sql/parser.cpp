#include "slink/sql/parser.hpp"

#include <cstdlib>

#include "slink/error.hpp"
#include "slink/identifier.hpp"

namespace slink::sql {

namespace {

bool is_aggregate_name(const std::string& lower) {
  return lower == "count" || lower == "sum" || lower == "avg" || lower == "min" ||
         lower == "max";
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

  SelectPtr parse_statement() {
    SelectPtr stmt = parse_query();
    if (peek().kind == TokenKind::Punct && peek().text == ";") advance();
    expect_end();
    return stmt;
  }

 private:
  std::span<const Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == TokenKind::Keyword && token_is(peek(), kw);
  }
  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    advance();
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail(std::string("expected ") + std::string(kw));
  }
  bool accept_punct(std::string_view p) {
    if (peek().kind == TokenKind::Punct && peek().text == p) {
      advance();
      return true;
    }
    return false;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail(std::string("expected '") + std::string(p) + "'");
  }
  void expect_end() {
    if (peek().kind != TokenKind::End) fail("trailing input after statement");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::End ? "<end>" : "'" + t.text + "'";
    throw ParseError("syntax error: " + msg + ", got " + got, t.offset);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw ParseError("unsupported construct: " + what, peek().offset);
  }

  std::string expect_identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(std::string("expected ") + what);
    return normalize_identifier(advance().text);
  }

  // query := select_core (set_op query)?
  SelectPtr parse_query() {
    SelectPtr lhs = parse_select_core();
    if (at_keyword("union")) {
      advance();
      lhs->set_op = accept_keyword("all") ? SelectStmt::SetOp::UnionAll : SelectStmt::SetOp::Union;
      lhs->set_rhs = parse_query();
    } else if (accept_keyword("intersect")) {
      lhs->set_op = SelectStmt::SetOp::Intersect;
      lhs->set_rhs = parse_query();
    } else if (accept_keyword("except")) {
      lhs->set_op = SelectStmt::SetOp::Except;
      lhs->set_rhs = parse_query();
    }
    return lhs;
  }

  SelectPtr parse_select_core() {
    expect_keyword("select");
    auto stmt = std::make_unique<SelectStmt>();
    stmt->distinct = accept_keyword("distinct");

    stmt->items.push_back(parse_select_item());
    while (accept_punct(",")) stmt->items.push_back(parse_select_item());

    expect_keyword("from");
    parse_from_clause(*stmt);

    if (accept_keyword("where")) stmt->where = parse_expr();
    if (at_keyword("group")) {
      advance();
      expect_keyword("by");
      stmt->group_by.push_back(parse_expr());
      while (accept_punct(",")) stmt->group_by.push_back(parse_expr());
    }
    if (accept_keyword("having")) stmt->having = parse_expr();
    if (at_keyword("order")) {
      advance();
      expect_keyword("by");
      do {
        OrderItem item;
        item.expr = parse_expr();
        if (accept_keyword("desc"))
          item.descending = true;
        else
          accept_keyword("asc");
        stmt->order_by.push_back(std::move(item));
      } while (accept_punct(","));
    }
    if (accept_keyword("limit")) {
      if (peek().kind != TokenKind::Number) fail("expected row count after LIMIT");
      stmt->limit = std::strtoll(advance().text.c_str(), nullptr, 10);
      if (at_keyword("offset")) unsupported("OFFSET");
    }
    return stmt;
  }

  SelectItem parse_select_item() {
    SelectItem item;
    if (peek().kind == TokenKind::Star) {
      advance();
      item.star = true;
      return item;
    }
    item.expr = parse_expr();
    if (accept_keyword("as")) item.alias = expect_identifier("alias after AS");
    return item;
  }

  void parse_from_clause(SelectStmt& stmt) {
    stmt.from.push_back(parse_table_source(false));
    while (true) {
      if (accept_punct(",")) {
        stmt.from.push_back(parse_table_source(false));
        continue;
      }
      // optional join-type prefix, all treated alike for extraction purposes
      bool prefixed = false;
      if (at_keyword("inner") || at_keyword("cross")) {
        advance();
        prefixed = true;
      } else if (at_keyword("left") || at_keyword("right") || at_keyword("full")) {
        advance();
        accept_keyword("outer");
        prefixed = true;
      }
      if (at_keyword("join")) {
        advance();
        TableSource src = parse_table_source(true);
        if (accept_keyword("on")) src.join_condition = parse_expr();
        stmt.from.push_back(std::move(src));
        continue;
      }
      if (prefixed) fail("expected JOIN");
      break;
    }
  }

  TableSource parse_table_source(bool joined) {
    TableSource src;
    src.joined = joined;
    if (accept_punct("(")) {
      if (!at_keyword("select")) fail("expected SELECT in derived table");
      src.kind = TableSource::Kind::Subquery;
      src.subquery = parse_query();
      expect_punct(")");
    } else {
      src.kind = TableSource::Kind::Base;
      src.table = expect_identifier("table name");
    }
    if (accept_keyword("as")) {
      src.alias = expect_identifier("alias after AS");
    } else if (peek().kind == TokenKind::Identifier) {
      src.alias = normalize_identifier(advance().text);
    }
    return src;
  }

  // expr := or_expr
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (accept_keyword("or")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Binary;
      node->op = "or";
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_and());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_not();
    while (accept_keyword("and")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Binary;
      node->op = "and";
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_not());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_not() {
    if (accept_keyword("not")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Unary;
      node->op = "not";
      node->children.push_back(parse_not());
      return node;
    }
    return parse_predicate();
  }

  ExprPtr parse_predicate() {
    ExprPtr lhs = parse_additive();
    bool negated = accept_keyword("not");

    if (accept_keyword("between")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Between;
      node->negated = negated;
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_additive());
      expect_keyword("and");
      node->children.push_back(parse_additive());
      return node;
    }
    if (accept_keyword("in")) {
      expect_punct("(");
      auto node = std::make_unique<Expr>();
      node->negated = negated;
      node->children.push_back(std::move(lhs));
      if (at_keyword("select")) {
        node->kind = Expr::Kind::InSubquery;
        node->subquery = parse_query();
      } else {
        node->kind = Expr::Kind::InList;
        node->children.push_back(parse_additive());
        while (accept_punct(",")) node->children.push_back(parse_additive());
      }
      expect_punct(")");
      return node;
    }
    if (accept_keyword("like")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Like;
      node->negated = negated;
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_additive());
      return node;
    }
    if (negated) fail("expected BETWEEN, IN or LIKE after NOT");

    if (accept_keyword("is")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::IsNull;
      node->negated = accept_keyword("not");
      expect_keyword("null");
      node->children.push_back(std::move(lhs));
      return node;
    }
    if (peek().kind == TokenKind::Operator &&
        (peek().text == "=" || peek().text == "!=" || peek().text == "<>" ||
         peek().text == "<" || peek().text == ">" || peek().text == "<=" ||
         peek().text == ">=")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Binary;
      node->op = advance().text;
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_additive());
      return node;
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (peek().kind == TokenKind::Operator && (peek().text == "+" || peek().text == "-")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Binary;
      node->op = advance().text;
      node->children.push_back(std::move(lhs));
      node->children.push_back(parse_multiplicative());
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (true) {
      // '*' in operator position means multiplication
      if (peek().kind == TokenKind::Star) {
        advance();
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::Binary;
        node->op = "*";
        node->children.push_back(std::move(lhs));
        node->children.push_back(parse_unary());
        lhs = std::move(node);
        continue;
      }
      if (peek().kind == TokenKind::Operator && (peek().text == "/" || peek().text == "%")) {
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::Binary;
        node->op = advance().text;
        node->children.push_back(std::move(lhs));
        node->children.push_back(parse_unary());
        lhs = std::move(node);
        continue;
      }
      return lhs;
    }
  }

  ExprPtr parse_unary() {
    if (peek().kind == TokenKind::Operator && (peek().text == "-" || peek().text == "+")) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Unary;
      node->op = advance().text;
      node->children.push_back(parse_unary());
      return node;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Number) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Number;
      node->literal = advance().text;
      return node;
    }
    if (t.kind == TokenKind::String) {
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::String;
      node->literal = advance().text;
      return node;
    }
    if (t.kind == TokenKind::Keyword && token_is(t, "null")) {
      advance();
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Null;
      return node;
    }
    if (t.kind == TokenKind::Star) {
      advance();
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Star;
      return node;
    }
    if (t.kind == TokenKind::Punct && t.text == "(") {
      advance();
      if (at_keyword("select")) {
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::Subquery;
        node->subquery = parse_query();
        expect_punct(")");
        return node;
      }
      ExprPtr inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    if (t.kind == TokenKind::Keyword) {
      if (token_is(t, "exists")) unsupported("EXISTS");
      if (token_is(t, "case")) unsupported("CASE expression");
      if (token_is(t, "cast")) unsupported("CAST");
      fail("unexpected keyword in expression");
    }
    if (t.kind == TokenKind::Identifier) {
      std::string first = normalize_identifier(advance().text);
      if (accept_punct("(")) return parse_call(first);
      auto node = std::make_unique<Expr>();
      if (accept_punct(".")) {
        if (peek().kind == TokenKind::Star) {
          advance();
          node->kind = Expr::Kind::QualifiedStar;
          node->column.qualifier = first;
          return node;
        }
        node->kind = Expr::Kind::Column;
        node->column.qualifier = first;
        node->column.column = expect_identifier("column name after '.'");
        return node;
      }
      node->kind = Expr::Kind::Column;
      node->column.column = std::move(first);
      return node;
    }
    fail("expected expression");
  }

  // aggregate call; '(' already consumed
  ExprPtr parse_call(const std::string& name) {
    if (!is_aggregate_name(name)) unsupported("function '" + name + "'");
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Call;
    node->op = name;
    node->distinct_arg = accept_keyword("distinct");
    if (peek().kind == TokenKind::Star) {
      advance();
      node->star_arg = true;
    } else {
      node->children.push_back(parse_expr());
    }
    expect_punct(")");
    return node;
  }
};

}  // namespace

SelectPtr parse_select(std::span<const Token> tokens) {
  if (tokens.empty()) throw ParseError("empty token stream", 0);
  Parser p(tokens);
  return p.parse_statement();
}

SelectPtr parse_sql(std::string_view sql) {
  auto tokens = tokenize_sql(sql);
  return parse_select(tokens);
}

}  // namespace slink::sql
