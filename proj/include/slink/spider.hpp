#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slink/dataset.hpp"
#include "slink/parallel.hpp"
#include "slink/schema.hpp"
#include "slink/sql/extract.hpp"

namespace slink {

/// One raw dataset record before ground-truth extraction. Records written
/// back by the extract step carry their truth; it is validated and reused
/// instead of re-extracted.
struct RawExample {
  std::string id;
  std::string db_id;
  std::string question;
  std::string query;
  std::optional<std::string> cot;
  std::optional<SchemaLinkSet> truth;
};

/// Why a record was dropped during ingestion.
struct Rejection {
  std::size_t index = 0;
  std::string id;
  std::string reason;
};

/// Load a Spider tables file: a JSON array of records with db_id,
/// table_names_original and column_names_original ([table_index, name] pairs,
/// index -1 marking the star pseudo-column, which is skipped). Identifiers
/// are normalized. Malformed records, duplicate db_ids and out-of-range table
/// indices raise ConfigError naming the record index.
std::map<std::string, DbSchema, std::less<>> load_spider_schemas(const std::string& path);

/// Read line-delimited JSON example records {id?, db_id, question, query}.
/// Missing ids default to the zero-padded input position.
std::vector<RawExample> load_raw_examples(const std::string& path);

struct LoadResult {
  std::vector<LinkedExample> examples;  // input order preserved
  std::vector<Rejection> rejections;
};

/// Build ground truth for every record; records whose SQL fails to lex,
/// parse, resolve, or whose db_id is unknown land in the rejection log
/// instead of aborting the load. |examples| + |rejections| = |input|.
LoadResult load_examples(std::span<const RawExample> raw,
                         const std::map<std::string, DbSchema, std::less<>>& schemas,
                         const sql::ExtractOptions& opts = {},
                         ExecMode mode = ExecMode::Serial);

/// Render the reasoning-generation prompt for one example: question, full
/// schema listing, ground-truth marker lines and the response-format
/// instructions. Bit-stable for a given example (template is versioned).
std::string build_cot_prompt(const LinkedExample& example, const DbSchema& schema);

/// Version tag embedded in the prompt template.
extern const char* const kPromptTemplateVersion;

}  // namespace slink
