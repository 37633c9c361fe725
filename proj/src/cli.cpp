#include "slink/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "slink/batch.hpp"
#include "slink/error.hpp"
#include "slink/metrics.hpp"
#include "slink/run_config.hpp"
#include "slink/spider.hpp"
#include "slink/trainer.hpp"

namespace slink::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json link_to_json(const SchemaLinkSet& link) {
  json j = json::object();
  j["tables"] = json::array();
  for (const auto& t : link.tables) j["tables"].push_back(t);
  j["columns"] = json::array();
  for (const auto& c : link.columns) j["columns"].push_back(c);
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

struct DatasetFiles {
  std::string schemas;
  std::string examples;
  bool exclude_join_columns = false;
  bool parallel = false;
};

Dataset load_dataset(const DatasetFiles& files, std::vector<Rejection>* rejections) {
  Dataset ds;
  ds.schemas = load_spider_schemas(files.schemas);
  auto raw = load_raw_examples(files.examples);
  sql::ExtractOptions opts;
  opts.exclude_join_columns = files.exclude_join_columns;
  LoadResult loaded = load_examples(raw, ds.schemas, opts,
                                    files.parallel ? ExecMode::Parallel : ExecMode::Serial);
  ds.examples = std::move(loaded.examples);
  if (rejections) *rejections = std::move(loaded.rejections);
  return ds;
}

std::vector<PredictionRecord> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open predictions '" + path + "'");
  std::vector<PredictionRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError("predictions line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!rec.contains("id") || !rec.contains("response"))
      throw ConfigError("predictions line " + std::to_string(lineno) +
                        ": id and response are required");
    out.push_back({rec.at("id").get<std::string>(), rec.at("response").get<std::string>()});
  }
  return out;
}

void write_rejections(const std::string& path, const std::vector<Rejection>& rejections) {
  auto out = open_out(path);
  for (const auto& r : rejections) {
    json j = json::object();
    j["index"] = r.index;
    j["id"] = r.id;
    j["reason"] = r.reason;
    out << j.dump() << '\n';
  }
}

json report_to_json(const EvalReport& rep) {
  json j = json::object();
  json t = json::object();
  t["em"] = rep.tables.exact_match;
  t["filtered_acc"] = rep.tables.filtered_acc;
  t["rec"] = rep.tables.recall;
  json c = json::object();
  c["em"] = rep.columns.exact_match;
  c["filtered_acc"] = rep.columns.filtered_acc;
  c["rec"] = rep.columns.recall;
  j["table_prediction"] = t;
  j["column_prediction"] = c;
  j["examples"] = rep.example_count;
  return j;
}

EvalReport report_from_scored(const std::vector<ScoredPrediction>& scored,
                              const Dataset& ds) {
  std::vector<std::pair<SchemaLinkSet, SchemaLinkSet>> pairs;
  pairs.reserve(scored.size());
  for (const auto& s : scored)
    pairs.emplace_back(s.predicted, ds.examples[s.example_index].truth);
  return aggregate_report(pairs);
}

json policy_snapshot(const ToyPolicy& policy, const Dataset& ds) {
  json questions = json::array();
  for (std::size_t q = 0; q < policy.question_count(); ++q) {
    json entry = json::object();
    entry["id"] = ds.examples[q].id;
    entry["think_len"] = policy.think_len(q);
    json tables = json::object();
    json columns = json::object();
    auto params = policy.params();
    auto elems = policy.elements(q);
    std::size_t base = policy.param_offset(q);
    for (std::size_t e = 0; e < elems.size(); ++e) {
      if (elems[e].is_table)
        tables[elems[e].name] = params[base + e];
      else
        columns[elems[e].name] = params[base + e];
    }
    entry["table_logits"] = tables;
    entry["column_logits"] = columns;
    questions.push_back(entry);
  }
  json j = json::object();
  j["temperature"] = policy.temperature();
  j["questions"] = questions;
  return j;
}

int cmd_extract(const DatasetFiles& files, const std::string& out_path,
                std::string rejects_path) {
  std::vector<Rejection> rejections;
  Dataset ds = load_dataset(files, &rejections);
  auto out = open_out(out_path);
  for (const auto& ex : ds.examples) {
    json j = json::object();
    j["id"] = ex.id;
    j["db_id"] = ex.db_id;
    j["question"] = ex.question;
    j["query"] = ex.sql;
    j["truth"] = link_to_json(ex.truth);
    if (ex.cot) j["cot"] = *ex.cot;
    out << j.dump() << '\n';
  }
  if (rejects_path.empty()) rejects_path = out_path + ".rejects.jsonl";
  write_rejections(rejects_path, rejections);
  std::cerr << "extract: accepted " << ds.examples.size() << ", rejected "
            << rejections.size() << "\n";
  return 0;
}

int cmd_prompts(const DatasetFiles& files, const std::string& out_path, std::size_t count) {
  Dataset ds = load_dataset(files, nullptr);
  auto out = open_out(out_path);
  std::size_t n = std::min(count, ds.examples.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ex = ds.examples[i];
    json j = json::object();
    j["id"] = ex.id;
    j["prompt"] = build_cot_prompt(ex, ds.schema_for(ex.db_id));
    out << j.dump() << '\n';
  }
  std::cerr << "prompts: wrote " << n << " prompts\n";
  return 0;
}

int cmd_score(const DatasetFiles& files, const std::string& predictions_path,
              const std::string& out_dir, const RewardConfig& reward_cfg,
              const ParseOptions& parse_opts) {
  std::vector<Rejection> rejections;
  Dataset ds = load_dataset(files, &rejections);
  for (const auto& r : rejections)
    std::cerr << "warning: example '" << r.id << "' unusable: " << r.reason << "\n";
  auto predictions = load_predictions(predictions_path);
  auto scored = score_batch(predictions, ds, reward_cfg, parse_opts,
                            files.parallel ? ExecMode::Parallel : ExecMode::Serial);

  fs::create_directories(out_dir);
  auto rewards_out = open_out((fs::path(out_dir) / "rewards.jsonl").string());
  for (const auto& s : scored) {
    json j = json::object();
    j["id"] = s.id;
    j["format"] = s.breakdown.format;
    j["markers"] = s.breakdown.markers;
    j["length"] = s.breakdown.length;
    j["table"] = s.breakdown.table;
    j["column"] = s.breakdown.column;
    j["schema"] = s.breakdown.schema;
    j["total"] = s.breakdown.total;
    j["parse_failed"] = s.breakdown.parse_failed;
    j["predicted"] = link_to_json(s.predicted);
    rewards_out << j.dump() << '\n';
  }

  EvalReport rep = report_from_scored(scored, ds);
  auto report_out = open_out((fs::path(out_dir) / "report.json").string());
  report_out << report_to_json(rep).dump(2) << '\n';
  std::cout << format_report(rep);
  return 0;
}

int cmd_eval(const DatasetFiles& files, const std::string& predictions_path,
             const std::string& out_path, const ParseOptions& parse_opts) {
  Dataset ds = load_dataset(files, nullptr);
  auto predictions = load_predictions(predictions_path);
  RewardConfig cfg;  // rewards irrelevant here; defaults satisfy validation
  auto scored = score_batch(predictions, ds, cfg, parse_opts,
                            files.parallel ? ExecMode::Parallel : ExecMode::Serial);
  EvalReport rep = report_from_scored(scored, ds);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << report_to_json(rep).dump(2) << '\n';
  }
  std::cout << format_report(rep);
  return 0;
}

int cmd_train_sim(RunConfig cfg) {
  DatasetFiles files{cfg.schemas_path, cfg.examples_path, false, cfg.sim.parallel};
  std::vector<Rejection> rejections;
  Dataset ds = load_dataset(files, &rejections);
  for (const auto& r : rejections)
    std::cerr << "warning: example '" << r.id << "' rejected: " << r.reason << "\n";

  fs::create_directories(cfg.out_dir);
  auto log_out = open_out((fs::path(cfg.out_dir) / "run_log.jsonl").string());
  TrainResult result = train_loop(ds, cfg.reward, cfg.grpo, cfg.sim, &log_out);
  log_out.close();

  auto policy_out = open_out((fs::path(cfg.out_dir) / "policy.json").string());
  policy_out << policy_snapshot(result.policy, ds).dump(2) << '\n';
  cfg.save((fs::path(cfg.out_dir) / "config.json").string());

  const IterationRecord& last = result.log.back();
  std::cerr << "train-sim: " << cfg.sim.iterations << " iterations, final mean reward "
            << last.mean_reward << ", table FilteredAcc " << last.table_filtered
            << ", column FilteredAcc " << last.col_filtered << "\n";
  return 0;
}

int cmd_report(const std::string& log_path, const std::string& out_path) {
  std::ifstream in(log_path);
  if (!in) throw ConfigError("cannot open run log '" + log_path + "'");
  auto out = open_out(out_path);
  out << "iteration,mean_reward,mean_len,table_em,table_filtered,table_rec,"
         "col_em,col_filtered,col_rec\n";
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ConfigError("run log line " + std::to_string(lineno) + ": " + e.what());
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  j.at("iteration").get<int>(), j.at("mean_reward").get<double>(),
                  j.at("mean_len").get<double>(), j.at("table_em").get<double>(),
                  j.at("table_filtered").get<double>(), j.at("table_rec").get<double>(),
                  j.at("col_em").get<double>(), j.at("col_filtered").get<double>(),
                  j.at("col_rec").get<double>());
    out << buf;
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"schema-linking reward, update-rule and evaluation harness"};
  app.require_subcommand(1);

  DatasetFiles files;
  std::string out_path;
  std::string rejects_path;
  std::string predictions_path;
  std::string config_path;
  std::string log_path;
  std::size_t count = 200;
  RewardConfig reward_cfg;
  ParseOptions parse_opts;
  bool literal_diff = false;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_dataset_opts = [&](CLI::App* cmd, bool need_examples = true) {
    cmd->add_option("--schemas", files.schemas, "Spider tables JSON file")->required();
    if (need_examples)
      cmd->add_option("--examples", files.examples, "examples JSONL file")->required();
    cmd->add_flag("--exclude-join-columns", files.exclude_join_columns,
                  "drop columns referenced only in JOIN ON conditions");
    cmd->add_flag("--parallel", files.parallel, "use the OpenMP kernels");
  };

  CLI::App* extract = app.add_subcommand("extract", "build the linked dataset from raw examples");
  add_dataset_opts(extract);
  extract->add_option("--out", out_path, "linked dataset JSONL")->required();
  extract->add_option("--rejects", rejects_path, "rejection log path (default <out>.rejects.jsonl)");

  CLI::App* prompts = app.add_subcommand("prompts", "emit reasoning-generation prompts");
  add_dataset_opts(prompts);
  prompts->add_option("--out", out_path, "prompts JSONL")->required();
  prompts->add_option("--count", count, "number of leading examples (default 200)");

  CLI::App* score = app.add_subcommand("score", "score a predictions file against ground truth");
  add_dataset_opts(score);
  score->add_option("--predictions", predictions_path, "predictions JSONL ({id, response})")
      ->required();
  score->add_option("--out", out_path, "output directory")->required();
  score->add_flag("--literal-set-difference", literal_diff,
                  "score the literal truth-minus-prediction reward variant");
  score->add_flag("--accept-column-alias", parse_opts.accept_column_marker_alias,
                  "also accept the ###column: marker spelling");

  CLI::App* eval = app.add_subcommand("eval", "metric report for a predictions file");
  add_dataset_opts(eval);
  eval->add_option("--predictions", predictions_path, "predictions JSONL")->required();
  eval->add_option("--out", out_path, "report JSON path");
  eval->add_flag("--accept-column-alias", parse_opts.accept_column_marker_alias,
                 "also accept the ###column: marker spelling");

  CLI::App* train = app.add_subcommand("train-sim", "run the toy-policy training loop");
  train->add_option("--config", config_path, "run config JSON")->required();
  auto* seed_opt = train->add_option("--seed", seed, "override the config seed");
  train->add_option("--out", out_path, "override the config out_dir");

  CLI::App* report = app.add_subcommand("report", "run log to per-iteration CSV");
  report->add_option("--log", log_path, "run log JSONL")->required();
  report->add_option("--out", out_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (extract->parsed()) return cmd_extract(files, out_path, rejects_path);
    if (prompts->parsed()) return cmd_prompts(files, out_path, count);
    if (score->parsed()) {
      reward_cfg.literal_set_difference = literal_diff;
      return cmd_score(files, predictions_path, out_path, reward_cfg, parse_opts);
    }
    if (eval->parsed()) return cmd_eval(files, predictions_path, out_path, parse_opts);
    if (train->parsed()) {
      RunConfig cfg = RunConfig::load(config_path);
      seed_given = seed_opt->count() > 0;
      if (seed_given) cfg.sim.seed = seed;
      if (!out_path.empty()) cfg.out_dir = out_path;
      if (cfg.out_dir.empty()) throw ConfigError("train-sim needs an out_dir (config or --out)");
      return cmd_train_sim(std::move(cfg));
    }
    if (report->parsed()) return cmd_report(log_path, out_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace slink::cli
