#include "slink/spider.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "slink/error.hpp"
#include "slink/identifier.hpp"

namespace slink {

namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

std::string default_id(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "ex%05zu", index);
  return buf;
}

}  // namespace

std::map<std::string, DbSchema, std::less<>> load_spider_schemas(const std::string& path) {
  json root = load_json_file(path);
  if (!root.is_array())
    throw ConfigError("schema file '" + path + "' must be a JSON array");

  std::map<std::string, DbSchema, std::less<>> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const json& rec = root[i];
    std::string where = "schema record " + std::to_string(i);
    if (!rec.is_object() || !rec.contains("db_id") || !rec.contains("table_names_original") ||
        !rec.contains("column_names_original"))
      throw ConfigError(where + ": missing db_id/table_names_original/column_names_original");

    std::string db_id = rec.at("db_id").get<std::string>();
    const json& table_names = rec.at("table_names_original");
    const json& column_names = rec.at("column_names_original");
    if (!table_names.is_array() || !column_names.is_array())
      throw ConfigError(where + ": table/column name fields must be arrays");

    std::vector<TableDef> tables;
    for (const auto& name : table_names) tables.push_back({name.get<std::string>(), {}});

    for (const auto& entry : column_names) {
      if (!entry.is_array() || entry.size() != 2)
        throw ConfigError(where + ": column entries must be [table_index, name] pairs");
      long long idx = entry[0].get<long long>();
      std::string col = entry[1].get<std::string>();
      if (idx == -1) continue;  // the star pseudo-column names no schema column
      if (idx < 0 || idx >= static_cast<long long>(tables.size()))
        throw ConfigError(where + ": column '" + col + "' has out-of-range table index " +
                          std::to_string(idx));
      tables[static_cast<std::size_t>(idx)].columns.push_back(col);
    }

    if (out.count(db_id)) throw ConfigError(where + ": duplicate db_id '" + db_id + "'");
    try {
      out.emplace(db_id, DbSchema(db_id, std::move(tables)));
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<RawExample> load_raw_examples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<RawExample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError("examples line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!rec.contains("db_id") || !rec.contains("question") || !rec.contains("query"))
      throw ConfigError("examples line " + std::to_string(lineno) +
                        ": db_id, question and query are required");
    RawExample ex;
    ex.id = rec.value("id", default_id(out.size()));
    ex.db_id = rec.at("db_id").get<std::string>();
    ex.question = rec.at("question").get<std::string>();
    ex.query = rec.at("query").get<std::string>();
    if (rec.contains("cot")) ex.cot = rec.at("cot").get<std::string>();
    if (rec.contains("truth")) {
      const json& t = rec.at("truth");
      SchemaLinkSet link;
      for (const auto& name : t.value("tables", json::array()))
        link.tables.insert(name.get<std::string>());
      for (const auto& name : t.value("columns", json::array()))
        link.columns.insert(name.get<std::string>());
      ex.truth = std::move(link);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

LoadResult load_examples(std::span<const RawExample> raw,
                         const std::map<std::string, DbSchema, std::less<>>& schemas,
                         const sql::ExtractOptions& opts, ExecMode mode) {
  struct Outcome {
    bool ok = false;
    SchemaLinkSet truth;
    std::string error;
  };
  std::vector<Outcome> outcomes(raw.size());
  for_each_index(raw.size(), mode, [&](std::size_t i) {
    const RawExample& ex = raw[i];
    auto it = schemas.find(ex.db_id);
    if (it == schemas.end()) {
      outcomes[i].error = "unknown db_id '" + ex.db_id + "'";
      return;
    }
    try {
      if (ex.truth) {
        validate_ground_truth(*ex.truth, it->second);
        outcomes[i].truth = *ex.truth;
      } else {
        outcomes[i].truth = sql::build_ground_truth(ex.query, it->second, opts);
      }
      if (outcomes[i].truth.tables.empty()) {
        outcomes[i].error = "query references no table";
        return;
      }
      outcomes[i].ok = true;
    } catch (const Error& e) {
      outcomes[i].error = e.what();
    }
  });

  LoadResult result;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (outcomes[i].ok) {
      LinkedExample ex;
      ex.id = raw[i].id;
      ex.db_id = raw[i].db_id;
      ex.question = raw[i].question;
      ex.sql = raw[i].query;
      ex.truth = std::move(outcomes[i].truth);
      ex.cot = raw[i].cot;
      result.examples.push_back(std::move(ex));
    } else {
      result.rejections.push_back({i, raw[i].id, outcomes[i].error});
    }
  }
  return result;
}

const char* const kPromptTemplateVersion = "cot-prompt/v1";

std::string build_cot_prompt(const LinkedExample& example, const DbSchema& schema) {
  std::ostringstream out;
  out << "[" << kPromptTemplateVersion << "]\n";
  out << "You are given a database schema, a question, and the correct schema links\n"
         "for answering it. Reconstruct the reasoning that leads from the question\n"
         "to exactly these tables and columns.\n\n";
  out << "Database: " << schema.db_id() << "\n";
  for (const auto& t : schema.tables()) {
    out << "table " << t.name << ": ";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) out << ", ";
      out << t.columns[i];
    }
    out << "\n";
  }
  out << "\nQuestion: " << example.question << "\n\n";
  out << "Correct answer:\n";
  out << "###table: ";
  bool first = true;
  for (const auto& t : example.truth.tables) {
    if (!first) out << ", ";
    out << t;
    first = false;
  }
  out << "\n###columns: ";
  first = true;
  for (const auto& c : example.truth.columns) {
    if (!first) out << ", ";
    out << c;
    first = false;
  }
  out << "\n\n";
  out << "Write your reasoning inside <think>...</think>, then restate the answer\n"
         "inside <answer>...</answer> by copying the two marker lines above verbatim,\n"
         "table line first, columns line second.\n";
  return out.str();
}

}  // namespace slink
