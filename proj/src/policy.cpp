#include "slink/policy.hpp"

#include <cmath>

#include "slink/error.hpp"
#include "slink/identifier.hpp"
#include "slink/response.hpp"

namespace slink {

namespace {

// log(1 + exp(x)) without overflow
double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

}  // namespace

ToyPolicy::ToyPolicy(const Dataset& dataset, Options opts) : opts_(opts) {
  if (opts_.temperature <= 0) throw ConfigError("temperature must be positive");
  if (opts_.init_think_len < 2) opts_.init_think_len = 2;
  for (const auto& ex : dataset.examples) {
    const DbSchema& schema = dataset.schema_for(ex.db_id);
    offsets_.push_back(params_.size());
    std::vector<Element> elems;
    for (const auto& t : schema.tables()) elems.push_back({true, t.name});
    for (const auto& t : schema.tables())
      for (const auto& c : t.columns) elems.push_back({false, qualify_column(t.name, c)});
    params_.resize(params_.size() + elems.size(), opts_.init_logit);
    elems_.push_back(std::move(elems));
    think_lens_.push_back(opts_.init_think_len);
  }
}

void ToyPolicy::set_params(std::span<const double> values) {
  if (values.size() != params_.size())
    throw ConfigError("parameter vector size mismatch");
  params_.assign(values.begin(), values.end());
}

double ToyPolicy::selection_prob(double logit) const {
  return 1.0 / (1.0 + std::exp(-logit / opts_.temperature));
}

double ToyPolicy::decision_logprob(const grpo::Decision& d) const {
  double x = params_.at(static_cast<std::size_t>(d.param)) / opts_.temperature;
  return d.taken ? -softplus(-x) : -softplus(x);
}

void ToyPolicy::add_logprob_grad(const grpo::Decision& d, double coeff,
                                 std::span<double> grad) const {
  double p = selection_prob(params_.at(static_cast<std::size_t>(d.param)));
  double dlogp = (d.taken ? 1.0 - p : -p) / opts_.temperature;
  grad[static_cast<std::size_t>(d.param)] += coeff * dlogp;
}

grpo::TrajectoryGroup ToyPolicy::sample_group(std::size_t question, int group_size,
                                              Rng& rng) const {
  grpo::TrajectoryGroup group;
  const auto& elems = elems_[question];
  const std::size_t base = offsets_[question];
  const std::string think = filler_think_text(think_lens_[question]);

  for (int g = 0; g < group_size; ++g) {
    grpo::Trajectory traj;
    bool corrupt = uniform01(rng) < opts_.malform_prob;
    SchemaLinkSet link;
    traj.decisions.reserve(elems.size());
    for (std::size_t e = 0; e < elems.size(); ++e) {
      std::size_t p = base + e;
      double prob = selection_prob(params_[p]);
      bool taken = uniform01(rng) < prob;
      grpo::Decision d;
      d.param = static_cast<std::int32_t>(p);
      d.taken = taken;
      d.logp_old = taken ? std::log(prob) : std::log1p(-prob);
      d.logp_current = d.logp_old;
      traj.decisions.push_back(d);
      if (taken) {
        if (elems[e].is_table)
          link.tables.insert(elems[e].name);
        else
          link.columns.insert(elems[e].name);
      }
    }
    traj.response = render_response(think, link);
    if (corrupt) {
      auto pos = traj.response.find("</think>");
      traj.response.replace(pos, 8, "</thnik>");
    }
    group.trajectories.push_back(std::move(traj));
  }
  return group;
}

double ToyPolicy::trajectory_logprob(const grpo::Trajectory& traj) const {
  double sum = 0;
  for (const auto& d : traj.decisions) sum += decision_logprob(d);
  return sum;
}

SchemaLinkSet ToyPolicy::greedy_link(std::size_t question) const {
  SchemaLinkSet link;
  const auto& elems = elems_[question];
  const std::size_t base = offsets_[question];
  for (std::size_t e = 0; e < elems.size(); ++e) {
    if (selection_prob(params_[base + e]) > 0.5) {
      if (elems[e].is_table)
        link.tables.insert(elems[e].name);
      else
        link.columns.insert(elems[e].name);
    }
  }
  return link;
}

std::string ToyPolicy::greedy_response(std::size_t question) const {
  return render_response(filler_think_text(think_lens_[question]), greedy_link(question));
}

std::span<const ToyPolicy::Element> ToyPolicy::elements(std::size_t question) const {
  return elems_[question];
}

void ToyPolicy::set_think_len(std::size_t question, int len) {
  think_lens_[question] = len < 2 ? 2 : len;
}

std::string ToyPolicy::filler_think_text(int tokens) {
  std::string out;
  for (int i = 0; i < tokens; ++i) {
    if (i) out.push_back(' ');
    out.append("reason");
  }
  return out;
}

}  // namespace slink
