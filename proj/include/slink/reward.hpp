#pragma once

#include <set>
#include <string>

#include "slink/response.hpp"
#include "slink/schema.hpp"

namespace slink {

/// Reward caps, penalty caps, desired response-length band and component
/// weights. Table caps must strictly dominate column caps.
struct RewardConfig {
  double table_reward_max = 2.0;
  double table_penalty_max = 2.0;
  double column_reward_max = 1.0;
  double column_penalty_max = 1.0;
  int min_tokens = 64;   // inclusive lower bound of the length band
  int max_tokens = 512;  // exclusive upper bound
  double format_weight = 1.0;
  double marker_weight = 1.0;
  double length_weight = 1.0;
  double schema_weight = 1.0;
  /// Score the reward term on the literal truth-minus-prediction difference
  /// instead of the intersection (degenerate: empty predictions max out).
  bool literal_set_difference = false;

  /// Throws ConfigError when the cap inequalities or length band are violated.
  void validate() const;
};

/// Per-response reward decomposition.
struct RewardBreakdown {
  double format = 0;   // 0/1
  double markers = 0;  // 0/1/2
  double length = 0;   // 0/1
  double table = 0;    // [-table_penalty_max, table_reward_max]
  double column = 0;   // [-column_penalty_max, column_reward_max]
  double schema = 0;   // table + column
  double total = 0;    // weighted sum
  bool parse_failed = false;
};

double format_reward(const ParsedResponse& resp);
double marker_reward(const ParsedResponse& resp);
double length_reward(int token_len, const RewardConfig& cfg);

/// Correct items earn table_reward_max/|truth| each, wrong ones cost
/// table_penalty_max/|pred| each; the penalty term is 0 for empty
/// predictions. Truth must be non-empty.
double table_reward(const std::set<std::string>& truth, const std::set<std::string>& pred,
                    const RewardConfig& cfg);

/// Same shape with the column caps; empty truth earns nothing and only the
/// penalty term applies.
double column_reward(const std::set<std::string>& truth, const std::set<std::string>& pred,
                     const RewardConfig& cfg);

/// All components plus the weighted total. A response whose answer failed to
/// parse gets zero (not maximally penalized) schema terms.
RewardBreakdown total_reward(const ParsedResponse& resp, const SchemaLinkSet& truth,
                             const RewardConfig& cfg);

}  // namespace slink
