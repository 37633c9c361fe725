#pragma once

#include <string_view>

#include "slink/schema.hpp"
#include "slink/sql/ast.hpp"

namespace slink::sql {

struct ExtractOptions {
  /// Drop columns that appear only inside JOIN ... ON conditions.
  bool exclude_join_columns = false;
};

/// Collect every base table and every referenced column over the whole query
/// tree (subqueries and set-operation branches included). Columns come back
/// table-qualified via alias resolution; unqualified columns resolve
/// innermost scope first, then outward; '*' contributes no column.
/// Throws ResolveError on unknown tables/columns and on ambiguous
/// unqualified references (never guessed).
SchemaLinkSet extract_refs(const SelectStmt& ast, const DbSchema& schema,
                           const ExtractOptions& opts = {});

/// tokenize -> parse -> extract_refs. Deterministic.
SchemaLinkSet build_ground_truth(std::string_view sql, const DbSchema& schema,
                                 const ExtractOptions& opts = {});

}  // namespace slink::sql
