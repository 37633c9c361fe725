#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "slink/schema.hpp"

namespace slink {

/// Scoring-side parsing knobs.
struct ParseOptions {
  /// Also accept the "###column:" marker spelling when counting and parsing.
  bool accept_column_marker_alias = false;
};

/// A policy/model response decomposed for scoring. Parsing is total:
/// malformed input yields format_ok=false / empty predictions, never a throw.
struct ParsedResponse {
  std::string raw;
  std::optional<std::string> think_text;
  std::optional<std::string> answer_text;
  std::optional<SchemaLinkSet> predicted;
  int token_len = 0;
  bool format_ok = false;
  int marker_table_count = 0;
  int marker_columns_count = 0;
};

struct FormatCheck {
  bool ok = false;
  std::optional<std::string> think_text;
  std::optional<std::string> answer_text;
};

/// Success: exactly one <think>...</think> block followed by exactly one
/// <answer>...</answer> block, properly closed, nothing but whitespace
/// outside them. Total; failure is a value.
FormatCheck validate_format(std::string_view raw);

/// Exact substring occurrence counts of the table/columns markers.
std::pair<int, int> count_markers(std::string_view answer_text,
                                  const ParseOptions& opts = {});

/// Parse the marker lists into a link set. Table entries and qualified column
/// entries are kept verbatim (normalized); unqualified columns resolve to the
/// unique predicted table owning them, else become the never-matching
/// sentinel "?.column". Requires marker counts (1,1); throws ParseError
/// otherwise.
SchemaLinkSet parse_answer(std::string_view answer_text, const DbSchema& schema,
                           const ParseOptions& opts = {});

/// Canonical rendering, the inverse of parsing: sets are emitted in sorted
/// order, comma-separated, after the exact ASCII markers.
std::string render_response(std::string_view think_text, const SchemaLinkSet& link);

/// Token counter used for the length reward; swappable for other tokenizers.
using TokenCounter = std::function<int(std::string_view)>;

/// Default tokenization: maximal runs of non-whitespace.
int token_count(std::string_view raw);

/// Full decomposition: format check, marker counts (over the answer block
/// when present, over the raw response otherwise), prediction parse, token
/// count. Never throws.
ParsedResponse parse_response(std::string_view raw, const DbSchema& schema,
                              const ParseOptions& opts = {},
                              const TokenCounter& counter = {});

}  // namespace slink
