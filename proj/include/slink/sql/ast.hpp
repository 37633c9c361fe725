#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace slink::sql {

struct Expr;
struct SelectStmt;
using ExprPtr = std::unique_ptr<Expr>;
using SelectPtr = std::unique_ptr<SelectStmt>;

/// A possibly qualified column reference; identifiers normalized at parse time.
struct ColumnRef {
  std::string qualifier;  // empty when unqualified
  std::string column;
};

/// Expression node. One struct with a kind tag; only the members relevant to
/// the kind are populated.
struct Expr {
  enum class Kind {
    Column,      // column
    Number,      // literal
    String,      // literal
    Null,        // NULL literal
    Star,        // bare * (aggregate argument or select item)
    QualifiedStar,  // alias.*  (qualifier in column.qualifier)
    Unary,       // op, children[0]
    Binary,      // op, children[0], children[1]  (comparison/arithmetic/and/or)
    Between,     // children[0] BETWEEN children[1] AND children[2], negated?
    InList,      // children[0] [NOT] IN (children[1..])
    InSubquery,  // children[0] [NOT] IN (subquery)
    Like,        // children[0] [NOT] LIKE children[1]
    IsNull,      // children[0] IS [NOT] NULL
    Subquery,    // scalar subquery
    Call,        // aggregate call: op = function name, star_arg or children
  };

  Kind kind;
  std::string op;
  std::string literal;
  ColumnRef column;
  bool negated = false;
  bool distinct_arg = false;  // count(DISTINCT x)
  bool star_arg = false;      // count(*)
  std::vector<ExprPtr> children;
  SelectPtr subquery;
};

/// FROM-clause entry: a base table or a derived table, optionally aliased.
/// Entries after the first carry how they attach (comma or JOIN [ON ...]).
struct TableSource {
  enum class Kind { Base, Subquery };
  Kind kind = Kind::Base;
  std::string table;   // Base: normalized table name
  SelectPtr subquery;  // Subquery
  std::string alias;   // empty when none
  bool joined = false;
  ExprPtr join_condition;  // may be null even for joins
};

struct SelectItem {
  ExprPtr expr;       // null when this item is bare '*'
  std::string alias;  // empty when none
  bool star = false;
};

struct OrderItem {
  ExprPtr expr;
  bool descending = false;
};

/// One SELECT, with an optional set-operation continuation.
struct SelectStmt {
  enum class SetOp { None, Union, UnionAll, Intersect, Except };

  bool distinct = false;
  std::vector<SelectItem> items;
  std::vector<TableSource> from;
  ExprPtr where;
  std::vector<ExprPtr> group_by;
  ExprPtr having;
  std::vector<OrderItem> order_by;
  std::optional<long long> limit;

  SetOp set_op = SetOp::None;
  SelectPtr set_rhs;
};

}  // namespace slink::sql
