#include "slink/batch.hpp"

#include <map>

#include "slink/error.hpp"

namespace slink {

std::vector<ScoredPrediction> score_batch(std::span<const PredictionRecord> predictions,
                                          const Dataset& dataset, const RewardConfig& cfg,
                                          const ParseOptions& opts, ExecMode mode) {
  cfg.validate();
  std::map<std::string, std::size_t, std::less<>> by_id;
  for (std::size_t i = 0; i < dataset.examples.size(); ++i)
    by_id.emplace(dataset.examples[i].id, i);

  // resolve ids up front so the parallel loop cannot throw
  std::vector<std::size_t> target(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    auto it = by_id.find(predictions[i].id);
    if (it == by_id.end())
      throw ConfigError("prediction '" + predictions[i].id + "' has no dataset example");
    target[i] = it->second;
  }

  std::vector<ScoredPrediction> out(predictions.size());
  for_each_index(predictions.size(), mode, [&](std::size_t i) {
    const LinkedExample& ex = dataset.examples[target[i]];
    const DbSchema& schema = dataset.schema_for(ex.db_id);
    ParsedResponse resp = parse_response(predictions[i].response, schema, opts);
    ScoredPrediction& s = out[i];
    s.id = predictions[i].id;
    s.breakdown = total_reward(resp, ex.truth, cfg);
    s.parsed = resp.predicted.has_value();
    if (resp.predicted) s.predicted = *resp.predicted;
    s.example_index = target[i];
  });
  return out;
}

}  // namespace slink
