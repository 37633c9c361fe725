#include "slink/sql/extract.hpp"

#include <map>
#include <set>
#include <vector>

#include "slink/error.hpp"
#include "slink/identifier.hpp"
#include "slink/sql/parser.hpp"

namespace slink::sql {

namespace {

// What an alias (or bare table name) stands for inside one SELECT.
struct Binding {
  bool is_subquery = false;
  std::string table;                        // base table, normalized
  std::set<std::string> output_columns;     // derived-table output names
};

struct Scope {
  std::map<std::string, Binding> bindings;  // keyed by normalized alias/name
};

class Extractor {
 public:
  Extractor(const DbSchema& schema, const ExtractOptions& opts)
      : schema_(schema), opts_(opts) {}

  SchemaLinkSet run(const SelectStmt& stmt) {
    walk_query(stmt);
    SchemaLinkSet out;
    out.tables = std::move(tables_);
    out.columns = columns_;
    if (!opts_.exclude_join_columns)
      out.columns.insert(join_columns_.begin(), join_columns_.end());
    return out;
  }

 private:
  const DbSchema& schema_;
  const ExtractOptions& opts_;
  std::vector<Scope> scopes_;  // innermost last
  std::set<std::string> tables_;
  std::set<std::string> columns_;       // referenced outside ON conditions
  std::set<std::string> join_columns_;  // referenced inside ON conditions
  bool in_join_condition_ = false;

  void add_column(const std::string& qualified) {
    if (in_join_condition_)
      join_columns_.insert(qualified);
    else
      columns_.insert(qualified);
  }

  // Output column names a derived table exposes: item aliases, plus plain
  // column names for unaliased column items.
  static std::set<std::string> derived_outputs(const SelectStmt& sub) {
    std::set<std::string> out;
    for (const auto& item : sub.items) {
      if (!item.alias.empty())
        out.insert(item.alias);
      else if (item.expr && item.expr->kind == Expr::Kind::Column)
        out.insert(item.expr->column.column);
    }
    return out;
  }

  // walk one SELECT plus any set-operation continuation
  void walk_query(const SelectStmt& stmt) {
    walk_core(stmt);
    if (stmt.set_rhs) walk_query(*stmt.set_rhs);
  }

  void walk_core(const SelectStmt& stmt) {
    Scope scope;
    for (const auto& src : stmt.from) {
      if (src.kind == TableSource::Kind::Base) {
        if (!schema_.find_table(src.table))
          throw ResolveError("unknown table '" + src.table + "' in schema '" +
                             schema_.db_id() + "'");
        tables_.insert(src.table);
        Binding b;
        b.table = src.table;
        scope.bindings[src.alias.empty() ? src.table : src.alias] = std::move(b);
      } else {
        // derived tables are self-contained: no correlation with the outer query
        {
          std::vector<Scope> saved;
          saved.swap(scopes_);
          walk_query(*src.subquery);
          scopes_.swap(saved);
        }
        Binding b;
        b.is_subquery = true;
        b.output_columns = derived_outputs(*src.subquery);
        if (!src.alias.empty()) scope.bindings[src.alias] = std::move(b);
      }
    }
    scopes_.push_back(std::move(scope));

    for (const auto& src : stmt.from)
      if (src.join_condition) {
        in_join_condition_ = true;
        walk_expr(*src.join_condition);
        in_join_condition_ = false;
      }
    for (const auto& item : stmt.items)
      if (item.expr) walk_expr(*item.expr);
    if (stmt.where) walk_expr(*stmt.where);
    for (const auto& g : stmt.group_by) walk_expr(*g);
    if (stmt.having) walk_expr(*stmt.having);
    for (const auto& o : stmt.order_by) walk_expr(*o.expr);

    scopes_.pop_back();
  }

  void walk_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Column:
        resolve_column(e.column);
        return;
      case Expr::Kind::QualifiedStar:
        resolve_qualifier_only(e.column.qualifier);
        return;
      case Expr::Kind::Number:
      case Expr::Kind::String:
      case Expr::Kind::Null:
      case Expr::Kind::Star:
        return;
      case Expr::Kind::Subquery:
      case Expr::Kind::InSubquery: {
        for (const auto& c : e.children) walk_expr(*c);
        // expression subqueries may correlate with enclosing scopes; walk
        // them with the current chain intact, but never inside ON context
        bool saved = in_join_condition_;
        in_join_condition_ = false;
        walk_query(*e.subquery);
        in_join_condition_ = saved;
        return;
      }
      default:
        for (const auto& c : e.children) walk_expr(*c);
        return;
    }
  }

  void resolve_qualifier_only(const std::string& qualifier) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->bindings.find(qualifier);
      if (found != it->bindings.end()) return;  // '*' adds no column
    }
    throw ResolveError("unknown table or alias '" + qualifier + "'");
  }

  void resolve_column(const ColumnRef& ref) {
    if (!ref.qualifier.empty()) {
      for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
        auto found = it->bindings.find(ref.qualifier);
        if (found == it->bindings.end()) continue;
        const Binding& b = found->second;
        if (b.is_subquery) return;  // derived output, base columns counted inside
        if (!schema_.has_column(b.table, ref.column))
          throw ResolveError("unknown column '" + ref.qualifier + "." + ref.column +
                             "' (table '" + b.table + "')");
        add_column(qualify_column(b.table, ref.column));
        return;
      }
      throw ResolveError("unknown table or alias '" + ref.qualifier + "'");
    }

    // unqualified: innermost scope owning the column wins; ambiguity within
    // a single scope is an error, never a guess
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      std::set<std::string> base_owners;
      bool derived_owner = false;
      for (const auto& [alias, b] : it->bindings) {
        if (b.is_subquery) {
          if (b.output_columns.count(ref.column)) derived_owner = true;
        } else if (schema_.has_column(b.table, ref.column)) {
          base_owners.insert(b.table);
        }
      }
      std::size_t candidates = base_owners.size() + (derived_owner ? 1 : 0);
      if (candidates == 0) continue;
      if (candidates > 1)
        throw ResolveError("ambiguous column '" + ref.column + "'");
      if (derived_owner) return;
      add_column(qualify_column(*base_owners.begin(), ref.column));
      return;
    }
    throw ResolveError("column '" + ref.column + "' not found in any in-scope table");
  }
};

}  // namespace

SchemaLinkSet extract_refs(const SelectStmt& ast, const DbSchema& schema,
                           const ExtractOptions& opts) {
  Extractor ex(schema, opts);
  return ex.run(ast);
}

SchemaLinkSet build_ground_truth(std::string_view sql, const DbSchema& schema,
                                 const ExtractOptions& opts) {
  SelectPtr ast = parse_sql(sql);
  return extract_refs(*ast, schema, opts);
}

}  // namespace slink::sql
