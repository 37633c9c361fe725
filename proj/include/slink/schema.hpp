#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slink {

/// One table: normalized name plus its columns in declaration order.
struct TableDef {
  std::string name;
  std::vector<std::string> columns;
};

/// A database: ordered tables with unique normalized names.
/// Immutable after construction; construction validates the invariants
/// (>= 1 table, every table >= 1 column, no duplicate names).
class DbSchema {
 public:
  DbSchema(std::string db_id, std::vector<TableDef> tables);

  const std::string& db_id() const { return db_id_; }
  std::span<const TableDef> tables() const { return tables_; }

  const TableDef* find_table(std::string_view name) const;
  bool has_column(std::string_view table, std::string_view column) const;

  /// Tables owning a column of this name, in schema order.
  std::vector<std::string> owners_of(std::string_view column) const;

  std::size_t table_count() const { return tables_.size(); }
  std::size_t column_count() const;

 private:
  std::string db_id_;
  std::vector<TableDef> tables_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// A set of linked tables plus table-qualified columns ("table.column").
/// Set semantics throughout: order and duplicates are never observable.
struct SchemaLinkSet {
  std::set<std::string> tables;
  std::set<std::string> columns;

  bool operator==(const SchemaLinkSet&) const = default;
  bool empty() const { return tables.empty() && columns.empty(); }
};

/// Ground truth must be internally consistent and resolvable: every column's
/// table component listed in `tables`, and everything present in the schema.
/// Throws ResolveError otherwise. Prediction sets are exempt by design.
void validate_ground_truth(const SchemaLinkSet& link, const DbSchema& schema);

/// One dataset row: a question paired with its database, gold SQL, extracted
/// ground-truth link set, and optionally a reasoning text.
struct LinkedExample {
  std::string id;
  std::string db_id;
  std::string question;
  std::string sql;
  SchemaLinkSet truth;
  std::optional<std::string> cot;
};

}  // namespace slink
