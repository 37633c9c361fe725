#include "slink/reward.hpp"

#include <algorithm>

#include "slink/error.hpp"

namespace slink {

namespace {

std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t n = 0;
  for (const auto& x : small) n += large.count(x);
  return n;
}

// reward_max/|truth| per hit (or per surviving truth item in literal mode),
// penalty_max/|pred| per wrong prediction; empty pred -> no penalty term
double set_reward(const std::set<std::string>& truth, const std::set<std::string>& pred,
                  double reward_max, double penalty_max, bool literal_difference) {
  std::size_t hits = intersection_size(truth, pred);
  double gain = 0;
  if (!truth.empty()) {
    std::size_t gain_count = literal_difference ? truth.size() - hits : hits;
    gain = reward_max * static_cast<double>(gain_count) / static_cast<double>(truth.size());
  }
  double loss = 0;
  if (!pred.empty()) {
    std::size_t wrong = pred.size() - hits;
    loss = penalty_max * static_cast<double>(wrong) / static_cast<double>(pred.size());
  }
  return gain - loss;
}

}  // namespace

void RewardConfig::validate() const {
  if (table_reward_max <= 0 || table_penalty_max <= 0 || column_reward_max <= 0 ||
      column_penalty_max <= 0)
    throw ConfigError("reward/penalty caps must be positive");
  if (table_reward_max <= column_reward_max)
    throw ConfigError("table_reward_max must exceed column_reward_max");
  if (table_penalty_max <= column_penalty_max)
    throw ConfigError("table_penalty_max must exceed column_penalty_max");
  if (min_tokens <= 0 || max_tokens <= 0 || min_tokens >= max_tokens)
    throw ConfigError("length band requires 0 < min_tokens < max_tokens");
  if (format_weight < 0 || marker_weight < 0 || length_weight < 0 || schema_weight < 0)
    throw ConfigError("component weights must be non-negative");
}

double format_reward(const ParsedResponse& resp) { return resp.format_ok ? 1.0 : 0.0; }

double marker_reward(const ParsedResponse& resp) {
  return (resp.marker_table_count == 1 ? 1.0 : 0.0) +
         (resp.marker_columns_count == 1 ? 1.0 : 0.0);
}

double length_reward(int token_len, const RewardConfig& cfg) {
  return (token_len >= cfg.min_tokens && token_len < cfg.max_tokens) ? 1.0 : 0.0;
}

double table_reward(const std::set<std::string>& truth, const std::set<std::string>& pred,
                    const RewardConfig& cfg) {
  if (truth.empty()) throw ConfigError("table reward requires a non-empty truth set");
  return set_reward(truth, pred, cfg.table_reward_max, cfg.table_penalty_max,
                    cfg.literal_set_difference);
}

double column_reward(const std::set<std::string>& truth, const std::set<std::string>& pred,
                     const RewardConfig& cfg) {
  return set_reward(truth, pred, cfg.column_reward_max, cfg.column_penalty_max,
                    cfg.literal_set_difference);
}

RewardBreakdown total_reward(const ParsedResponse& resp, const SchemaLinkSet& truth,
                             const RewardConfig& cfg) {
  RewardBreakdown out;
  out.format = format_reward(resp);
  out.markers = marker_reward(resp);
  out.length = length_reward(resp.token_len, cfg);
  if (resp.predicted) {
    out.table = table_reward(truth.tables, resp.predicted->tables, cfg);
    out.column = column_reward(truth.columns, resp.predicted->columns, cfg);
  } else {
    out.parse_failed = true;
  }
  out.schema = out.table + out.column;
  out.total = cfg.format_weight * out.format + cfg.marker_weight * out.markers +
              cfg.length_weight * out.length + cfg.schema_weight * out.schema;
  return out;
}

}  // namespace slink
