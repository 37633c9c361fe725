#include "slink/schema.hpp"

#include <set>

#include "slink/error.hpp"
#include "slink/identifier.hpp"

namespace slink {

DbSchema::DbSchema(std::string db_id, std::vector<TableDef> tables)
    : db_id_(std::move(db_id)), tables_(std::move(tables)) {
  if (tables_.empty()) throw ConfigError("schema '" + db_id_ + "' has no tables");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    TableDef& t = tables_[i];
    t.name = normalize_identifier(t.name);
    if (t.columns.empty())
      throw ConfigError("table '" + t.name + "' in schema '" + db_id_ + "' has no columns");
    std::set<std::string> seen;
    for (auto& c : t.columns) {
      c = normalize_identifier(c);
      if (!seen.insert(c).second)
        throw ConfigError("duplicate column '" + c + "' in table '" + t.name + "'");
    }
    if (!index_.emplace(t.name, i).second)
      throw ConfigError("duplicate table '" + t.name + "' in schema '" + db_id_ + "'");
  }
}

const TableDef* DbSchema::find_table(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &tables_[it->second];
}

bool DbSchema::has_column(std::string_view table, std::string_view column) const {
  const TableDef* t = find_table(table);
  if (!t) return false;
  for (const auto& c : t->columns)
    if (c == column) return true;
  return false;
}

std::vector<std::string> DbSchema::owners_of(std::string_view column) const {
  std::vector<std::string> out;
  for (const auto& t : tables_)
    for (const auto& c : t.columns)
      if (c == column) {
        out.push_back(t.name);
        break;
      }
  return out;
}

std::size_t DbSchema::column_count() const {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.columns.size();
  return n;
}

void validate_ground_truth(const SchemaLinkSet& link, const DbSchema& schema) {
  for (const auto& t : link.tables)
    if (!schema.find_table(t))
      throw ResolveError("ground-truth table '" + t + "' not in schema '" + schema.db_id() + "'");
  for (const auto& qc : link.columns) {
    auto dot = qc.find('.');
    if (dot == std::string::npos)
      throw ResolveError("ground-truth column '" + qc + "' is not table-qualified");
    std::string table = qc.substr(0, dot);
    std::string column = qc.substr(dot + 1);
    if (!link.tables.count(table))
      throw ResolveError("ground-truth column '" + qc + "' references table absent from the table set");
    if (!schema.has_column(table, column))
      throw ResolveError("ground-truth column '" + qc + "' not in schema '" + schema.db_id() + "'");
  }
}

}  // namespace slink
