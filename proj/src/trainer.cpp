#include "slink/trainer.hpp"

#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <utility>

#include "slink/error.hpp"
#include "slink/response.hpp"
#include "slink/rng.hpp"

namespace slink {

namespace {

using nlohmann::json;

std::vector<std::size_t> batch_indices(int iteration, int batch_size,
                                       std::size_t question_count) {
  std::vector<std::size_t> out;
  out.reserve(batch_size);
  std::size_t start = static_cast<std::size_t>(iteration > 0 ? iteration - 1 : 0) *
                      static_cast<std::size_t>(batch_size);
  for (int j = 0; j < batch_size; ++j)
    out.push_back((start + static_cast<std::size_t>(j)) % question_count);
  return out;
}

// Sample and score one batch. Per-question sub-seeds keep parallel execution
// bit-identical to serial.
std::vector<grpo::TrajectoryGroup> rollout(const ToyPolicy& policy, const ToyPolicy& ref,
                                           const Dataset& dataset,
                                           const std::vector<std::size_t>& questions,
                                           const RewardConfig& reward_cfg,
                                           const grpo::GrpoConfig& grpo_cfg,
                                           std::uint64_t seed, int iteration, ExecMode mode) {
  std::vector<grpo::TrajectoryGroup> groups(questions.size());
  for_each_index(questions.size(), mode, [&](std::size_t j) {
    std::size_t q = questions[j];
    const LinkedExample& ex = dataset.examples[q];
    const DbSchema& schema = dataset.schema_for(ex.db_id);
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(iteration), j));
    grpo::TrajectoryGroup group = policy.sample_group(q, grpo_cfg.group_size, rng);
    group.question_id = ex.id;
    for (auto& traj : group.trajectories) {
      ParsedResponse resp = parse_response(traj.response, schema);
      traj.reward = total_reward(resp, ex.truth, reward_cfg).total;
      for (auto& d : traj.decisions) d.logp_ref = ref.decision_logprob(d);
    }
    grpo::compute_advantages(group, grpo_cfg.std_floor);
    groups[j] = std::move(group);
  });
  return groups;
}

std::pair<double, double> batch_means(const std::vector<grpo::TrajectoryGroup>& groups) {
  double reward_sum = 0, len_sum = 0;
  std::size_t n = 0;
  for (const auto& g : groups)
    for (const auto& t : g.trajectories) {
      reward_sum += t.reward;
      len_sum += token_count(t.response);
      ++n;
    }
  if (n == 0) return {0.0, 0.0};
  return {reward_sum / static_cast<double>(n), len_sum / static_cast<double>(n)};
}

// Discrete sign rule: probe the length reward one step up and one step down
// from each sampled response length and move toward the better side.
void update_think_lengths(ToyPolicy& policy, const std::vector<std::size_t>& questions,
                          const std::vector<grpo::TrajectoryGroup>& groups,
                          const RewardConfig& reward_cfg, int step) {
  std::set<std::size_t> seen;
  for (std::size_t j = 0; j < questions.size(); ++j) {
    std::size_t q = questions[j];
    if (!seen.insert(q).second) continue;
    double up = 0, down = 0;
    for (const auto& traj : groups[j].trajectories) {
      int len = token_count(traj.response);
      up += length_reward(len + step, reward_cfg);
      down += length_reward(len - step, reward_cfg);
    }
    if (up > down)
      policy.set_think_len(q, policy.think_len(q) + step);
    else if (down > up)
      policy.set_think_len(q, policy.think_len(q) - step);
  }
}

void fill_metrics(IterationRecord& rec, const EvalReport& report) {
  rec.table_em = report.tables.exact_match;
  rec.table_filtered = report.tables.filtered_acc;
  rec.table_rec = report.tables.recall;
  rec.col_em = report.columns.exact_match;
  rec.col_filtered = report.columns.filtered_acc;
  rec.col_rec = report.columns.recall;
}

void emit(const IterationRecord& rec, std::vector<IterationRecord>& log,
          std::ostream* out) {
  log.push_back(rec);
  if (out) *out << to_log_line(rec) << '\n';
}

}  // namespace

void SimConfig::validate() const {
  if (iterations < 0) throw ConfigError("iterations must be non-negative");
  if (eval_every <= 0) throw ConfigError("eval_every must be positive");
  if (batch_size <= 0) throw ConfigError("batch_size must be positive");
  if (temperature <= 0) throw ConfigError("temperature must be positive");
  if (malform_prob < 0 || malform_prob > 1)
    throw ConfigError("malform_prob must lie in [0, 1]");
  if (length_step <= 0) throw ConfigError("length_step must be positive");
}

std::string to_log_line(const IterationRecord& rec) {
  json j = json::object();
  j["iteration"] = rec.iteration;
  j["mean_reward"] = rec.mean_reward;
  j["mean_len"] = rec.mean_len;
  j["table_em"] = rec.table_em;
  j["table_filtered"] = rec.table_filtered;
  j["table_rec"] = rec.table_rec;
  j["col_em"] = rec.col_em;
  j["col_filtered"] = rec.col_filtered;
  j["col_rec"] = rec.col_rec;
  return j.dump();
}

EvalReport evaluate_policy(const ToyPolicy& policy, const Dataset& dataset) {
  std::vector<std::pair<SchemaLinkSet, SchemaLinkSet>> pairs;
  pairs.reserve(dataset.examples.size());
  for (std::size_t q = 0; q < dataset.examples.size(); ++q)
    pairs.emplace_back(policy.greedy_link(q), dataset.examples[q].truth);
  return aggregate_report(pairs);
}

TrainResult train_loop(const Dataset& dataset, const RewardConfig& reward_cfg,
                       const grpo::GrpoConfig& grpo_cfg, const SimConfig& sim_cfg,
                       std::ostream* run_log) {
  if (dataset.examples.empty()) throw ConfigError("dataset is empty");
  reward_cfg.validate();
  grpo_cfg.validate();
  sim_cfg.validate();

  ExecMode mode = sim_cfg.parallel ? ExecMode::Parallel : ExecMode::Serial;
  ToyPolicy policy(dataset, {sim_cfg.temperature, sim_cfg.malform_prob, sim_cfg.init_logit,
                             sim_cfg.init_think_len});
  const ToyPolicy reference = policy;  // frozen anchor for the KL penalty

  TrainResult result{{}, policy};

  // record 0: score one untouched batch and evaluate the initial policy
  {
    auto questions = batch_indices(0, sim_cfg.batch_size, dataset.examples.size());
    auto groups = rollout(policy, reference, dataset, questions, reward_cfg, grpo_cfg,
                          sim_cfg.seed, 0, mode);
    IterationRecord rec;
    rec.iteration = 0;
    std::tie(rec.mean_reward, rec.mean_len) = batch_means(groups);
    fill_metrics(rec, evaluate_policy(policy, dataset));
    emit(rec, result.log, run_log);
  }

  EvalReport last_eval = evaluate_policy(policy, dataset);
  for (int it = 1; it <= sim_cfg.iterations; ++it) {
    auto questions = batch_indices(it, sim_cfg.batch_size, dataset.examples.size());
    auto groups = rollout(policy, reference, dataset, questions, reward_cfg, grpo_cfg,
                          sim_cfg.seed, it, mode);
    try {
      grpo::policy_update(policy, groups, grpo_cfg, mode);
    } catch (const Error&) {
      result.policy = policy;  // last good parameters survive the abort
      throw;
    }
    update_think_lengths(policy, questions, groups, reward_cfg, sim_cfg.length_step);

    IterationRecord rec;
    rec.iteration = it;
    std::tie(rec.mean_reward, rec.mean_len) = batch_means(groups);
    if (it % sim_cfg.eval_every == 0 || it == sim_cfg.iterations)
      last_eval = evaluate_policy(policy, dataset);
    fill_metrics(rec, last_eval);
    emit(rec, result.log, run_log);
  }

  result.policy = std::move(policy);
  return result;
}

}  // namespace slink
