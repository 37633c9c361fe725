#pragma once

#include <span>
#include <string_view>

#include "slink/sql/ast.hpp"
#include "slink/sql/lexer.hpp"

namespace slink::sql {

/// Recursive-descent parser for the Spider SQL subset:
/// SELECT [DISTINCT] items (aggregates, arithmetic), FROM with comma lists /
/// JOIN ... ON chains / derived tables, WHERE (and/or/not, comparisons,
/// BETWEEN, [NOT] IN with lists or subqueries, [NOT] LIKE, IS [NOT] NULL),
/// GROUP BY, HAVING, ORDER BY ... ASC|DESC, LIMIT, UNION/INTERSECT/EXCEPT,
/// and subqueries wherever an expression or table source is allowed.
/// Recognized-but-out-of-dialect constructs (EXISTS, CASE, CAST, OFFSET,
/// non-aggregate calls) raise ParseError naming the construct; nothing is
/// silently skipped.
SelectPtr parse_select(std::span<const Token> tokens);

/// tokenize + parse.
SelectPtr parse_sql(std::string_view sql);

}  // namespace slink::sql
