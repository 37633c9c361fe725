#include "slink/response.hpp"

#include <cctype>
#include <vector>

#include "slink/error.hpp"
#include "slink/identifier.hpp"

namespace slink {

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";
constexpr std::string_view kTableMarker = "###table:";
constexpr std::string_view kColumnsMarker = "###columns:";
constexpr std::string_view kColumnAlias = "###column:";

int count_occurrences(std::string_view text, std::string_view needle) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string_view::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

bool whitespace_only(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<std::string> split_entries(std::string_view list_text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list_text.size()) {
    std::size_t comma = list_text.find(',', start);
    std::string_view piece = comma == std::string_view::npos
                                 ? list_text.substr(start)
                                 : list_text.substr(start, comma - start);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front())))
      piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back())))
      piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

FormatCheck validate_format(std::string_view raw) {
  FormatCheck res;
  if (count_occurrences(raw, kThinkOpen) != 1 || count_occurrences(raw, kThinkClose) != 1 ||
      count_occurrences(raw, kAnswerOpen) != 1 || count_occurrences(raw, kAnswerClose) != 1)
    return res;
  std::size_t to = raw.find(kThinkOpen);
  std::size_t tc = raw.find(kThinkClose);
  std::size_t ao = raw.find(kAnswerOpen);
  std::size_t ac = raw.find(kAnswerClose);
  if (!(to < tc && tc < ao && ao < ac)) return res;
  if (!whitespace_only(raw.substr(0, to))) return res;
  if (!whitespace_only(raw.substr(tc + kThinkClose.size(), ao - tc - kThinkClose.size())))
    return res;
  if (!whitespace_only(raw.substr(ac + kAnswerClose.size()))) return res;
  res.ok = true;
  res.think_text = std::string(raw.substr(to + kThinkOpen.size(), tc - to - kThinkOpen.size()));
  res.answer_text = std::string(raw.substr(ao + kAnswerOpen.size(), ac - ao - kAnswerOpen.size()));
  return res;
}

std::pair<int, int> count_markers(std::string_view answer_text, const ParseOptions& opts) {
  int tables = count_occurrences(answer_text, kTableMarker);
  int columns = count_occurrences(answer_text, kColumnsMarker);
  if (opts.accept_column_marker_alias) columns += count_occurrences(answer_text, kColumnAlias);
  return {tables, columns};
}

SchemaLinkSet parse_answer(std::string_view answer_text, const DbSchema& schema,
                           const ParseOptions& opts) {
  auto [tables, columns] = count_markers(answer_text, opts);
  if (tables != 1 || columns != 1)
    throw ParseError("expected exactly one table marker and one columns marker", 0);

  std::size_t tpos = answer_text.find(kTableMarker);
  std::size_t cpos = answer_text.find(kColumnsMarker);
  std::size_t marker_len = kColumnsMarker.size();
  if (cpos == std::string_view::npos && opts.accept_column_marker_alias) {
    cpos = answer_text.find(kColumnAlias);
    marker_len = kColumnAlias.size();
  }
  if (cpos < tpos) throw ParseError("columns marker precedes table marker", 0);

  std::string_view table_list =
      answer_text.substr(tpos + kTableMarker.size(), cpos - tpos - kTableMarker.size());
  std::string_view column_list = answer_text.substr(cpos + marker_len);

  SchemaLinkSet link;
  for (const auto& entry : split_entries(table_list)) {
    if (entry == "*") continue;
    try {
      link.tables.insert(normalize_identifier(entry));
    } catch (const ConfigError&) {
      // quoting noise only, no identifier — skip
    }
  }
  for (const auto& entry : split_entries(column_list)) {
    if (entry == "*") continue;
    std::string norm;
    try {
      norm = normalize_identifier(entry);
    } catch (const ConfigError&) {
      continue;
    }
    auto dot = norm.find('.');
    if (dot != std::string::npos) {
      std::string col = norm.substr(dot + 1);
      if (col == "*") continue;
      std::string table = norm.substr(0, dot);
      link.columns.insert(table.empty() ? qualify_column("?", col) : norm);
      continue;
    }
    // unqualified: resolve against the predicted tables; unique owner or bust
    std::vector<std::string> owners;
    for (const auto& t : link.tables)
      if (schema.has_column(t, norm)) owners.push_back(t);
    if (owners.size() == 1)
      link.columns.insert(qualify_column(owners.front(), norm));
    else
      link.columns.insert(qualify_column("?", norm));
  }
  return link;
}

std::string render_response(std::string_view think_text, const SchemaLinkSet& link) {
  std::string out;
  out.append(kThinkOpen);
  out.append(think_text);
  out.append(kThinkClose);
  out.append(kAnswerOpen);
  out.append(kTableMarker);
  out.push_back(' ');
  bool first = true;
  for (const auto& t : link.tables) {
    if (!first) out.append(", ");
    out.append(t);
    first = false;
  }
  out.push_back('\n');
  out.append(kColumnsMarker);
  out.push_back(' ');
  first = true;
  for (const auto& c : link.columns) {
    if (!first) out.append(", ");
    out.append(c);
    first = false;
  }
  out.append(kAnswerClose);
  return out;
}

int token_count(std::string_view raw) {
  int n = 0;
  bool in_token = false;
  for (char c : raw) {
    bool ws = std::isspace(static_cast<unsigned char>(c));
    if (!ws && !in_token) ++n;
    in_token = !ws;
  }
  return n;
}

ParsedResponse parse_response(std::string_view raw, const DbSchema& schema,
                              const ParseOptions& opts, const TokenCounter& counter) {
  ParsedResponse r;
  r.raw = std::string(raw);
  r.token_len = counter ? counter(raw) : token_count(raw);

  FormatCheck fc = validate_format(raw);
  r.format_ok = fc.ok;
  r.think_text = std::move(fc.think_text);
  r.answer_text = std::move(fc.answer_text);

  // markers are counted on the answer block when the format held, on the raw
  // response otherwise, so malformed output still earns its marker reward
  std::string_view marker_text = r.answer_text ? std::string_view(*r.answer_text) : raw;
  auto [tc, cc] = count_markers(marker_text, opts);
  r.marker_table_count = tc;
  r.marker_columns_count = cc;

  if (r.format_ok && tc == 1 && cc == 1) {
    try {
      r.predicted = parse_answer(*r.answer_text, schema, opts);
    } catch (const Error&) {
      r.predicted.reset();
    }
  }
  return r;
}

}  // namespace slink
