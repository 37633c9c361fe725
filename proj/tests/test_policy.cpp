#include <doctest.h>

#include <cmath>

#include "grpo_oracles.hpp"
#include "slink/policy.hpp"
#include "slink/response.hpp"

using namespace slink;

namespace {

Dataset two_question_dataset() {
  Dataset ds = oracles::five_param_dataset();
  LinkedExample ex;
  ex.id = "q1";
  ex.db_id = "tiny";
  ex.question = "which beta?";
  ex.sql = "SELECT v FROM beta";
  ex.truth.tables = {"beta"};
  ex.truth.columns = {"beta.v"};
  ds.examples.push_back(ex);
  return ds;
}

}  // namespace

TEST_CASE("parameter layout covers every element of every question") {
  Dataset ds = two_question_dataset();
  ToyPolicy policy(ds, {});
  CHECK(policy.question_count() == 2);
  CHECK(policy.param_count() == 10);  // (2 tables + 3 columns) per question
  auto elems = policy.elements(0);
  CHECK(elems.size() == 5);
  CHECK(elems[0].is_table);
  CHECK(elems[0].name == "alpha");
  CHECK_FALSE(elems[2].name.empty());
}

TEST_CASE("saturated logits produce the extreme predictions") {
  Dataset ds = oracles::five_param_dataset();
  ToyPolicy policy(ds, {1.0, 0.0, 50.0, 4});  // +50 everywhere
  Rng rng(1);
  auto group = policy.sample_group(0, 4, rng);
  for (const auto& traj : group.trajectories) {
    auto fc = validate_format(traj.response);
    REQUIRE(fc.ok);
    auto link = parse_answer(*fc.answer_text, ds.schemas.at("tiny"));
    CHECK(link.tables == std::set<std::string>{"alpha", "beta"});
    CHECK(link.columns == std::set<std::string>{"alpha.u", "beta.v", "beta.w"});
  }

  ToyPolicy empty_policy(ds, {1.0, 0.0, -50.0, 4});
  auto empty_group = empty_policy.sample_group(0, 4, rng);
  for (const auto& traj : empty_group.trajectories) {
    auto fc = validate_format(traj.response);
    REQUIRE(fc.ok);
    auto link = parse_answer(*fc.answer_text, ds.schemas.at("tiny"));
    CHECK(link.tables.empty());
    CHECK(link.columns.empty());
  }
}

TEST_CASE("fixed seed reproduces the group bit for bit") {
  Dataset ds = oracles::five_param_dataset();
  ToyPolicy policy(ds, {1.0, 0.1, 0.3, 6});
  Rng a(99), b(99);
  auto ga = policy.sample_group(0, 5, a);
  auto gb = policy.sample_group(0, 5, b);
  REQUIRE(ga.trajectories.size() == gb.trajectories.size());
  for (std::size_t i = 0; i < ga.trajectories.size(); ++i) {
    CHECK(ga.trajectories[i].response == gb.trajectories[i].response);
    for (std::size_t t = 0; t < ga.trajectories[i].decisions.size(); ++t) {
      CHECK(ga.trajectories[i].decisions[t].taken == gb.trajectories[i].decisions[t].taken);
      CHECK(ga.trajectories[i].decisions[t].logp_old == gb.trajectories[i].decisions[t].logp_old);
    }
  }
}

TEST_CASE("trajectory log-probabilities are consistent and analytic") {
  Dataset ds = oracles::five_param_dataset();
  ToyPolicy policy(ds, {1.0, 0.0, 0.0, 4});  // logit 0 everywhere
  Rng rng(7);
  auto group = policy.sample_group(0, 3, rng);
  for (const auto& traj : group.trajectories) {
    // n symmetric Bernoulli decisions
    CHECK(policy.trajectory_logprob(traj) ==
          doctest::Approx(5.0 * std::log(0.5)).epsilon(1e-12));
    double recorded = 0;
    for (const auto& d : traj.decisions) recorded += d.logp_old;
    CHECK(recorded == doctest::Approx(policy.trajectory_logprob(traj)).epsilon(1e-12));
  }

  // single decision, known logit, taken branch
  std::vector<double> params = policy.params();
  params[0] = 1.7;
  policy.set_params(params);
  grpo::Decision d;
  d.param = 0;
  d.taken = true;
  double p = 1.0 / (1.0 + std::exp(-1.7));
  CHECK(policy.decision_logprob(d) == doctest::Approx(std::log(p)).epsilon(1e-12));
  d.taken = false;
  CHECK(policy.decision_logprob(d) == doctest::Approx(std::log1p(-p)).epsilon(1e-12));
}

TEST_CASE("temperature scales the selection probabilities") {
  Dataset ds = oracles::five_param_dataset();
  ToyPolicy hot(ds, {4.0, 0.0, 2.0, 4});
  ToyPolicy cold(ds, {0.5, 0.0, 2.0, 4});
  grpo::Decision d;
  d.param = 0;
  d.taken = true;
  CHECK(hot.decision_logprob(d) == doctest::Approx(std::log(1.0 / (1.0 + std::exp(-0.5)))));
  CHECK(cold.decision_logprob(d) == doctest::Approx(std::log(1.0 / (1.0 + std::exp(-4.0)))));
}

TEST_CASE("well-formed by construction; malform probability corrupts the wrapper") {
  Dataset ds = oracles::five_param_dataset();
  ToyPolicy clean(ds, {1.0, 0.0, 0.0, 4});
  Rng rng(123);
  for (int i = 0; i < 50; ++i) {
    auto group = clean.sample_group(0, 2, rng);
    for (const auto& traj : group.trajectories)
      CHECK(validate_format(traj.response).ok);
  }

  ToyPolicy broken(ds, {1.0, 1.0, 0.0, 4});  // always corrupt
  auto group = broken.sample_group(0, 4, rng);
  for (const auto& traj : group.trajectories)
    CHECK_FALSE(validate_format(traj.response).ok);
}

TEST_CASE("greedy decoding applies the half threshold") {
  Dataset ds = oracles::five_param_dataset();
  ToyPolicy policy(ds, {1.0, 0.0, 0.0, 4});
  std::vector<double> params = policy.params();
  params[0] = 2.0;   // alpha table in
  params[1] = -2.0;  // beta table out
  params[2] = 1.0;   // alpha.u in
  params[3] = -1.0;  // beta.v out
  params[4] = 0.0;   // beta.w exactly at the threshold -> out (strict >)
  policy.set_params(params);
  auto link = policy.greedy_link(0);
  CHECK(link.tables == std::set<std::string>{"alpha"});
  CHECK(link.columns == std::set<std::string>{"alpha.u"});
}

TEST_CASE("filler think text has exactly the requested token count") {
  for (int n : {2, 5, 64})
    CHECK(token_count(ToyPolicy::filler_think_text(n)) == n);
}
