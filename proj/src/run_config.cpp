#include "slink/run_config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "slink/error.hpp"

namespace slink {

namespace {

using nlohmann::json;

json reward_to_json(const RewardConfig& r) {
  json j = json::object();
  j["table_reward_max"] = r.table_reward_max;
  j["table_penalty_max"] = r.table_penalty_max;
  j["column_reward_max"] = r.column_reward_max;
  j["column_penalty_max"] = r.column_penalty_max;
  j["min_tokens"] = r.min_tokens;
  j["max_tokens"] = r.max_tokens;
  j["format_weight"] = r.format_weight;
  j["marker_weight"] = r.marker_weight;
  j["length_weight"] = r.length_weight;
  j["schema_weight"] = r.schema_weight;
  j["literal_set_difference"] = r.literal_set_difference;
  return j;
}

void reward_from_json(const json& j, RewardConfig& r) {
  r.table_reward_max = j.value("table_reward_max", r.table_reward_max);
  r.table_penalty_max = j.value("table_penalty_max", r.table_penalty_max);
  r.column_reward_max = j.value("column_reward_max", r.column_reward_max);
  r.column_penalty_max = j.value("column_penalty_max", r.column_penalty_max);
  r.min_tokens = j.value("min_tokens", r.min_tokens);
  r.max_tokens = j.value("max_tokens", r.max_tokens);
  r.format_weight = j.value("format_weight", r.format_weight);
  r.marker_weight = j.value("marker_weight", r.marker_weight);
  r.length_weight = j.value("length_weight", r.length_weight);
  r.schema_weight = j.value("schema_weight", r.schema_weight);
  r.literal_set_difference = j.value("literal_set_difference", r.literal_set_difference);
}

json grpo_to_json(const grpo::GrpoConfig& g) {
  json j = json::object();
  j["group_size"] = g.group_size;
  j["clip_epsilon"] = g.clip_epsilon;
  j["kl_coef"] = g.kl_coef;
  j["learning_rate"] = g.learning_rate;
  j["std_floor"] = g.std_floor;
  return j;
}

void grpo_from_json(const json& j, grpo::GrpoConfig& g) {
  g.group_size = j.value("group_size", g.group_size);
  g.clip_epsilon = j.value("clip_epsilon", g.clip_epsilon);
  g.kl_coef = j.value("kl_coef", g.kl_coef);
  g.learning_rate = j.value("learning_rate", g.learning_rate);
  g.std_floor = j.value("std_floor", g.std_floor);
}

json sim_to_json(const SimConfig& s) {
  json j = json::object();
  j["iterations"] = s.iterations;
  j["eval_every"] = s.eval_every;
  j["batch_size"] = s.batch_size;
  j["seed"] = s.seed;
  j["temperature"] = s.temperature;
  j["malform_prob"] = s.malform_prob;
  j["init_logit"] = s.init_logit;
  j["init_think_len"] = s.init_think_len;
  j["length_step"] = s.length_step;
  j["parallel"] = s.parallel;
  return j;
}

void sim_from_json(const json& j, SimConfig& s) {
  s.iterations = j.value("iterations", s.iterations);
  s.eval_every = j.value("eval_every", s.eval_every);
  s.batch_size = j.value("batch_size", s.batch_size);
  s.seed = j.value("seed", s.seed);
  s.temperature = j.value("temperature", s.temperature);
  s.malform_prob = j.value("malform_prob", s.malform_prob);
  s.init_logit = j.value("init_logit", s.init_logit);
  s.init_think_len = j.value("init_think_len", s.init_think_len);
  s.length_step = j.value("length_step", s.length_step);
  s.parallel = j.value("parallel", s.parallel);
}

}  // namespace

void RunConfig::validate() const {
  reward.validate();
  grpo.validate();
  sim.validate();
}

std::string RunConfig::to_json_string() const {
  json j = json::object();
  json paths = json::object();
  paths["schemas"] = schemas_path;
  paths["examples"] = examples_path;
  paths["out_dir"] = out_dir;
  j["paths"] = paths;
  j["reward"] = reward_to_json(reward);
  j["grpo"] = grpo_to_json(grpo);
  j["sim"] = sim_to_json(sim);
  return j.dump(2);
}

RunConfig RunConfig::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid run config JSON: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("paths")) {
    const json& p = j.at("paths");
    cfg.schemas_path = p.value("schemas", "");
    cfg.examples_path = p.value("examples", "");
    cfg.out_dir = p.value("out_dir", "");
  }
  if (j.contains("reward")) reward_from_json(j.at("reward"), cfg.reward);
  if (j.contains("grpo")) grpo_from_json(j.at("grpo"), cfg.grpo);
  if (j.contains("sim")) sim_from_json(j.at("sim"), cfg.sim);
  cfg.validate();  // invalid cap inequalities rejected at load
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run config '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_string(text);
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write run config '" + path + "'");
  out << to_json_string() << '\n';
}

}  // namespace slink
