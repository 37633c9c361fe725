#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slink/parallel.hpp"

namespace slink::grpo {

struct GrpoConfig {
  int group_size = 10;
  double clip_epsilon = 0.2;
  double kl_coef = 0.01;
  double learning_rate = 1.0;
  double std_floor = 1e-8;

  /// Throws ConfigError unless group_size >= 2, 0 < clip_epsilon < 1, etc.
  void validate() const;
};

/// One decision position: which policy parameter controlled it, which branch
/// was taken, and its log-probability under the current, sampling and
/// reference policies.
struct Decision {
  std::int32_t param = -1;
  bool taken = false;
  double logp_current = 0;
  double logp_old = 0;
  double logp_ref = 0;
};

/// One sampled trajectory: decision sequence, rendered response, scalar
/// reward and its group-normalized advantage.
struct Trajectory {
  std::vector<Decision> decisions;
  std::string response;
  double reward = 0;
  double advantage = 0;
};

/// All trajectories sampled for one question.
struct TrajectoryGroup {
  std::string question_id;
  std::vector<Trajectory> trajectories;
};

/// What the update step needs from a policy: a flat parameter vector, the
/// log-probability of a recorded decision under the current parameters, and
/// its gradient contribution.
class DifferentiablePolicy {
 public:
  virtual ~DifferentiablePolicy() = default;
  virtual std::size_t param_count() const = 0;
  virtual std::vector<double> params() const = 0;
  virtual void set_params(std::span<const double> values) = 0;
  virtual double decision_logprob(const Decision& d) const = 0;
  /// grad[k] += coeff * d logprob(d) / d param_k
  virtual void add_logprob_grad(const Decision& d, double coeff,
                                std::span<double> grad) const = 0;
};

/// Standardize rewards against the group mean and population standard
/// deviation (floored); a zero-variance group gets all-zero advantages.
/// Requires at least two rewards.
std::vector<double> group_advantages(std::span<const double> rewards, double std_floor);

/// Fill each trajectory's advantage from the group's rewards.
void compute_advantages(TrajectoryGroup& group, double std_floor);

/// min(ratio * adv, clip(ratio, 1-eps, 1+eps) * adv)
double clipped_term(double ratio, double advantage, double eps);

/// Per-decision estimator exp(d) - d - 1 with d = logp_ref - logp_current;
/// non-negative, zero iff the log-probs agree.
double kl_estimate(double logp_current, double logp_ref);

/// Mean over groups of (1/G) sum_i (1/|o_i|) sum_t [clipped surrogate -
/// kl_coef * KL estimate], with ratios exp(logp_current - logp_old).
/// Advantages must already be populated.
double grpo_objective(std::span<const TrajectoryGroup> groups, const GrpoConfig& cfg,
                      ExecMode mode = ExecMode::Serial);

/// d objective / d params at the current parameters; sampling and reference
/// log-probs held constant. Deterministic group-order reduction in both modes.
std::vector<double> objective_gradient(const DifferentiablePolicy& policy,
                                       std::span<const TrajectoryGroup> groups,
                                       const GrpoConfig& cfg,
                                       ExecMode mode = ExecMode::Serial);

/// Recompute every decision's logp_current from the policy.
void refresh_current_logprobs(const DifferentiablePolicy& policy,
                              std::span<TrajectoryGroup> groups);

/// One gradient-ascent step on the objective. Throws Error with diagnostics
/// on a non-finite gradient, leaving the policy untouched.
void policy_update(DifferentiablePolicy& policy, std::span<TrajectoryGroup> groups,
                   const GrpoConfig& cfg, ExecMode mode = ExecMode::Serial);

}  // namespace slink::grpo
