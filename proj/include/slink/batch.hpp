#pragma once

#include <span>
#include <string>
#include <vector>

#include "slink/dataset.hpp"
#include "slink/parallel.hpp"
#include "slink/response.hpp"
#include "slink/reward.hpp"

namespace slink {

/// One externally produced response keyed to a dataset example.
struct PredictionRecord {
  std::string id;
  std::string response;
};

struct ScoredPrediction {
  std::string id;
  RewardBreakdown breakdown;
  SchemaLinkSet predicted;  // empty when the answer failed to parse
  bool parsed = false;
  std::size_t example_index = 0;
};

/// Score every prediction against its example's ground truth. Unknown ids
/// abort with ConfigError: scoring against missing ground truth is
/// meaningless. Output order matches input order in both exec modes.
std::vector<ScoredPrediction> score_batch(std::span<const PredictionRecord> predictions,
                                          const Dataset& dataset, const RewardConfig& cfg,
                                          const ParseOptions& opts = {},
                                          ExecMode mode = ExecMode::Serial);

}  // namespace slink
