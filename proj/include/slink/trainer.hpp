#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slink/dataset.hpp"
#include "slink/grpo.hpp"
#include "slink/metrics.hpp"
#include "slink/parallel.hpp"
#include "slink/policy.hpp"
#include "slink/reward.hpp"

namespace slink {

/// Training-loop knobs. A fixed seed makes the whole run, including the log
/// bytes, fully deterministic.
struct SimConfig {
  int iterations = 300;
  int eval_every = 10;
  int batch_size = 10;
  std::uint64_t seed = 0;
  double temperature = 1.0;
  double malform_prob = 0.0;
  double init_logit = 0.0;
  int init_think_len = 8;
  int length_step = 4;  // think-length probe distance and step size
  bool parallel = false;

  void validate() const;
};

/// One run-log record; record 0 is the pre-training snapshot.
struct IterationRecord {
  int iteration = 0;
  double mean_reward = 0;
  double mean_len = 0;
  double table_em = 0;
  double table_filtered = 0;
  double table_rec = 0;
  double col_em = 0;
  double col_filtered = 0;
  double col_rec = 0;
};

std::string to_log_line(const IterationRecord& rec);

struct TrainResult {
  std::vector<IterationRecord> log;
  ToyPolicy policy;
};

/// Greedy-decode every question and macro-average the metrics.
EvalReport evaluate_policy(const ToyPolicy& policy, const Dataset& dataset);

/// Run the full loop: per iteration, sample a batch of question groups under
/// the pre-update policy, score them, normalize advantages, take one ascent
/// step, nudge think lengths by the sign of a probe on the length reward, and
/// append one record (metrics refreshed every eval_every iterations). When
/// `run_log` is non-null every record is also written there as one JSON line.
/// A non-finite gradient aborts the run; the policy keeps its last good
/// parameters.
TrainResult train_loop(const Dataset& dataset, const RewardConfig& reward_cfg,
                       const grpo::GrpoConfig& grpo_cfg, const SimConfig& sim_cfg,
                       std::ostream* run_log = nullptr);

}  // namespace slink
