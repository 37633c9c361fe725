#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slink/dataset.hpp"
#include "slink/grpo.hpp"
#include "slink/rng.hpp"

namespace slink {

/// Factorized schema-selection policy: one inclusion logit per (question,
/// table) and per (question, qualified column), selection probability
/// logistic(logit / temperature). Each logit is one Bernoulli decision, so
/// trajectories keep the per-decision ratio structure the update rule needs
/// while gradients stay analytic. Think text is inert filler whose integer
/// token length is a separate, non-differentiable per-question parameter.
class ToyPolicy final : public grpo::DifferentiablePolicy {
 public:
  struct Options {
    double temperature = 1.0;
    double malform_prob = 0.0;
    double init_logit = 0.0;
    int init_think_len = 8;
  };

  /// One schema element of a question, in canonical order: tables in schema
  /// order, then columns in schema order.
  struct Element {
    bool is_table = false;
    std::string name;  // table name or qualified column
  };

  ToyPolicy() = default;  // empty policy; usable only after move-assignment
  ToyPolicy(const Dataset& dataset, Options opts);

  // DifferentiablePolicy
  std::size_t param_count() const override { return params_.size(); }
  std::vector<double> params() const override { return params_; }
  void set_params(std::span<const double> values) override;
  double decision_logprob(const grpo::Decision& d) const override;
  void add_logprob_grad(const grpo::Decision& d, double coeff,
                        std::span<double> grad) const override;

  /// Sample G trajectories for one question: a malform coin, then one
  /// Bernoulli per schema element; responses rendered in the wire format.
  /// Rewards are left for the scorer; logp_old/logp_current start at the
  /// sampling log-probs and logp_ref at 0.
  grpo::TrajectoryGroup sample_group(std::size_t question, int group_size, Rng& rng) const;

  /// Sum of per-decision log-probs under the current parameters.
  double trajectory_logprob(const grpo::Trajectory& traj) const;

  /// Deterministic decoding: include an element iff its probability > 0.5.
  SchemaLinkSet greedy_link(std::size_t question) const;
  std::string greedy_response(std::size_t question) const;

  std::size_t question_count() const { return offsets_.size(); }
  std::span<const Element> elements(std::size_t question) const;
  std::size_t param_offset(std::size_t question) const { return offsets_[question]; }

  int think_len(std::size_t question) const { return think_lens_[question]; }
  void set_think_len(std::size_t question, int len);

  double temperature() const { return opts_.temperature; }
  double malform_prob() const { return opts_.malform_prob; }
  void set_malform_prob(double p) { opts_.malform_prob = p; }

  /// Filler think text of exactly `tokens` whitespace-separated words.
  static std::string filler_think_text(int tokens);

 private:
  Options opts_;
  std::vector<double> params_;
  std::vector<std::size_t> offsets_;         // per question, into params_
  std::vector<std::vector<Element>> elems_;  // per question
  std::vector<int> think_lens_;

  double selection_prob(double logit) const;
};

}  // namespace slink
