#include "slink/grpo.hpp"

#include <algorithm>
#include <cmath>

#include "slink/error.hpp"

namespace slink::grpo {

namespace {

// Per-decision contribution to the objective, before the 1/(groups*G*|o|)
// weight: clipped surrogate minus the KL penalty.
double decision_term(const Decision& d, double advantage, const GrpoConfig& cfg) {
  double ratio = std::exp(d.logp_current - d.logp_old);
  return clipped_term(ratio, advantage, cfg.clip_epsilon) -
         cfg.kl_coef * kl_estimate(d.logp_current, d.logp_ref);
}

// d(decision_term)/d(logp_current). The surrogate only passes gradient while
// the unclipped branch attains the min; the KL estimator contributes
// 1 - exp(logp_ref - logp_current).
double decision_term_grad(const Decision& d, double advantage, const GrpoConfig& cfg) {
  double ratio = std::exp(d.logp_current - d.logp_old);
  double unclipped = ratio * advantage;
  double clipped =
      std::clamp(ratio, 1.0 - cfg.clip_epsilon, 1.0 + cfg.clip_epsilon) * advantage;
  double surrogate_grad = unclipped <= clipped ? ratio * advantage : 0.0;
  double kl_grad = 1.0 - std::exp(d.logp_ref - d.logp_current);
  return surrogate_grad - cfg.kl_coef * kl_grad;
}

double group_objective(const TrajectoryGroup& group, const GrpoConfig& cfg) {
  double acc = 0;
  for (const auto& traj : group.trajectories) {
    if (traj.decisions.empty()) continue;
    double traj_sum = 0;
    for (const auto& d : traj.decisions) traj_sum += decision_term(d, traj.advantage, cfg);
    acc += traj_sum / static_cast<double>(traj.decisions.size());
  }
  return acc / static_cast<double>(group.trajectories.size());
}

void group_gradient(const DifferentiablePolicy& policy, const TrajectoryGroup& group,
                    double group_weight, const GrpoConfig& cfg, std::span<double> grad) {
  double per_traj = group_weight / static_cast<double>(group.trajectories.size());
  for (const auto& traj : group.trajectories) {
    if (traj.decisions.empty()) continue;
    double w = per_traj / static_cast<double>(traj.decisions.size());
    for (const auto& d : traj.decisions) {
      if (d.param < 0) continue;
      policy.add_logprob_grad(d, w * decision_term_grad(d, traj.advantage, cfg), grad);
    }
  }
}

}  // namespace

void GrpoConfig::validate() const {
  if (group_size < 2) throw ConfigError("group_size must be at least 2");
  if (clip_epsilon <= 0 || clip_epsilon >= 1)
    throw ConfigError("clip_epsilon must lie in (0, 1)");
  if (kl_coef < 0) throw ConfigError("kl_coef must be non-negative");
  if (learning_rate <= 0) throw ConfigError("learning_rate must be positive");
  if (std_floor <= 0) throw ConfigError("std_floor must be positive");
}

std::vector<double> group_advantages(std::span<const double> rewards, double std_floor) {
  if (rewards.size() < 2)
    throw ConfigError("group statistics need at least two rewards");
  double mean = 0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(rewards.size());
  double var = 0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= static_cast<double>(rewards.size());
  double denom = std::max(std::sqrt(var), std_floor);
  std::vector<double> out(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / denom;
  return out;
}

void compute_advantages(TrajectoryGroup& group, double std_floor) {
  std::vector<double> rewards;
  rewards.reserve(group.trajectories.size());
  for (const auto& t : group.trajectories) rewards.push_back(t.reward);
  auto adv = group_advantages(rewards, std_floor);
  for (std::size_t i = 0; i < adv.size(); ++i) group.trajectories[i].advantage = adv[i];
}

double clipped_term(double ratio, double advantage, double eps) {
  double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
  return std::min(ratio * advantage, clipped * advantage);
}

double kl_estimate(double logp_current, double logp_ref) {
  double diff = logp_ref - logp_current;
  return std::exp(diff) - diff - 1.0;
}

double grpo_objective(std::span<const TrajectoryGroup> groups, const GrpoConfig& cfg,
                      ExecMode mode) {
  if (groups.empty()) return 0;
  std::vector<double> partial(groups.size(), 0.0);
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(groups.size()); ++i)
      partial[i] = group_objective(groups[i], cfg);
  } else {
    for (std::size_t i = 0; i < groups.size(); ++i)
      partial[i] = group_objective(groups[i], cfg);
  }
  double sum = 0;
  for (double p : partial) sum += p;  // fixed reduction order
  return sum / static_cast<double>(groups.size());
}

std::vector<double> objective_gradient(const DifferentiablePolicy& policy,
                                       std::span<const TrajectoryGroup> groups,
                                       const GrpoConfig& cfg, ExecMode mode) {
  const std::size_t p = policy.param_count();
  std::vector<double> grad(p, 0.0);
  if (groups.empty()) return grad;
  double group_weight = 1.0 / static_cast<double>(groups.size());

  if (mode == ExecMode::Parallel) {
    std::vector<std::vector<double>> partials(groups.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(groups.size()); ++i) {
      partials[i].assign(p, 0.0);
      group_gradient(policy, groups[i], group_weight, cfg, partials[i]);
    }
    for (const auto& part : partials)  // fixed reduction order
      for (std::size_t k = 0; k < p; ++k) grad[k] += part[k];
  } else {
    std::vector<double> part(p);
    for (const auto& group : groups) {
      std::fill(part.begin(), part.end(), 0.0);
      group_gradient(policy, group, group_weight, cfg, part);
      for (std::size_t k = 0; k < p; ++k) grad[k] += part[k];
    }
  }
  return grad;
}

void refresh_current_logprobs(const DifferentiablePolicy& policy,
                              std::span<TrajectoryGroup> groups) {
  for (auto& group : groups)
    for (auto& traj : group.trajectories)
      for (auto& d : traj.decisions) d.logp_current = policy.decision_logprob(d);
}

void policy_update(DifferentiablePolicy& policy, std::span<TrajectoryGroup> groups,
                   const GrpoConfig& cfg, ExecMode mode) {
  refresh_current_logprobs(policy, groups);
  std::vector<double> grad = objective_gradient(policy, groups, cfg, mode);
  for (std::size_t k = 0; k < grad.size(); ++k)
    if (!std::isfinite(grad[k]))
      throw Error("non-finite gradient at parameter " + std::to_string(k) +
                  " (value " + std::to_string(grad[k]) + "); policy left unchanged");
  std::vector<double> params = policy.params();
  for (std::size_t k = 0; k < params.size(); ++k)
    params[k] += cfg.learning_rate * grad[k];
  policy.set_params(params);
}

}  // namespace slink::grpo
