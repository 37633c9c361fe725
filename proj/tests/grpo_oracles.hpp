#pragma once

// Independent numeric oracles for the update-rule tests and the acceptance
// gate: central finite differences against the analytic gradient, and the
// closed-form KL between factorized Bernoulli policies as a cross-check for
// the sampled estimator.

#include <cmath>
#include <random>
#include <vector>

#include "slink/dataset.hpp"
#include "slink/grpo.hpp"
#include "slink/policy.hpp"

namespace oracles {

inline slink::Dataset five_param_dataset() {
  slink::Dataset ds;
  ds.schemas.emplace("tiny", slink::DbSchema("tiny", {{"alpha", {"u"}}, {"beta", {"v", "w"}}}));
  slink::LinkedExample ex;
  ex.id = "q0";
  ex.db_id = "tiny";
  ex.question = "which alpha?";
  ex.sql = "SELECT u FROM alpha";
  ex.truth.tables = {"alpha"};
  ex.truth.columns = {"alpha.u"};
  ds.examples.push_back(ex);
  return ds;
}

struct FdScenario {
  slink::ToyPolicy policy;
  std::vector<slink::grpo::TrajectoryGroup> groups;
  slink::grpo::GrpoConfig cfg;
};

/// Random policy parameters, trajectories sampled under them, then sampling
/// and reference log-probs reassigned from independently perturbed policies
/// so ratios differ from 1 and the clip path gets exercised.
inline FdScenario random_scenario(const slink::Dataset& ds, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto noise = [&rng](double scale) {
    return scale * (2.0 * slink::uniform01(rng) - 1.0);
  };

  slink::ToyPolicy policy(ds, {1.0, 0.0, 0.0, 4});
  std::vector<double> params = policy.params();
  for (auto& p : params) p += noise(1.0);
  policy.set_params(params);

  slink::ToyPolicy old_policy = policy;
  slink::ToyPolicy ref_policy = policy;
  std::vector<double> old_params = params, ref_params = params;
  for (auto& p : old_params) p += noise(0.35);
  for (auto& p : ref_params) p += noise(0.35);
  old_policy.set_params(old_params);
  ref_policy.set_params(ref_params);

  FdScenario sc{std::move(policy), {}, {}};
  sc.cfg.group_size = 3 + static_cast<int>(rng() % 4);
  sc.cfg.clip_epsilon = 0.2;
  sc.cfg.kl_coef = 0.01 + 0.04 * slink::uniform01(rng);
  sc.cfg.learning_rate = 0.5;

  int n_groups = 1 + static_cast<int>(rng() % 3);
  for (int g = 0; g < n_groups; ++g) {
    slink::Rng sample_rng(rng());
    auto group = sc.policy.sample_group(0, sc.cfg.group_size, sample_rng);
    for (auto& traj : group.trajectories) {
      for (auto& d : traj.decisions) {
        d.logp_old = old_policy.decision_logprob(d);
        d.logp_ref = ref_policy.decision_logprob(d);
      }
      traj.reward = 7.0 * slink::uniform01(rng);
    }
    slink::grpo::compute_advantages(group, sc.cfg.std_floor);
    sc.groups.push_back(std::move(group));
  }
  return sc;
}

inline double objective_at(slink::ToyPolicy& policy,
                           std::vector<slink::grpo::TrajectoryGroup>& groups,
                           const slink::grpo::GrpoConfig& cfg,
                           const std::vector<double>& params) {
  policy.set_params(params);
  slink::grpo::refresh_current_logprobs(policy, groups);
  return slink::grpo::grpo_objective(groups, cfg);
}

/// Max relative disagreement between the analytic gradient and central
/// finite differences with the given step.
inline double max_gradient_rel_error(FdScenario& sc, double step = 1e-5) {
  std::vector<double> base = sc.policy.params();
  slink::grpo::refresh_current_logprobs(sc.policy, sc.groups);
  std::vector<double> analytic =
      slink::grpo::objective_gradient(sc.policy, sc.groups, sc.cfg);

  double worst = 0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    std::vector<double> up = base, down = base;
    up[k] += step;
    down[k] -= step;
    double j_up = objective_at(sc.policy, sc.groups, sc.cfg, up);
    double j_down = objective_at(sc.policy, sc.groups, sc.cfg, down);
    double fd = (j_up - j_down) / (2.0 * step);
    double denom = std::max(std::abs(fd), std::abs(analytic[k]));
    if (denom < 1e-12) continue;
    worst = std::max(worst, std::abs(fd - analytic[k]) / denom);
  }
  objective_at(sc.policy, sc.groups, sc.cfg, base);  // restore
  return worst;
}

/// Closed-form KL between factorized Bernoulli policies with per-decision
/// success probabilities p (current) and q (reference).
inline double exact_bernoulli_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double kl = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    kl += p[i] * std::log(p[i] / q[i]) + (1.0 - p[i]) * std::log((1.0 - p[i]) / (1.0 - q[i]));
  return kl;
}

}  // namespace oracles
