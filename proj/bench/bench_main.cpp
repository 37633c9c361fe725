// Serial-vs-OpenMP comparison for the three hot kernels: batch scoring,
// batch ground-truth extraction, and objective+gradient evaluation. Each
// kernel's parallel path must reproduce the serial result exactly; the table
// reports wall times and speedup.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "slink/batch.hpp"
#include "slink/grpo.hpp"
#include "slink/parallel.hpp"
#include "slink/policy.hpp"
#include "slink/response.hpp"
#include "slink/rng.hpp"
#include "slink/spider.hpp"

using namespace slink;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Dataset synthetic_dataset(int databases, int questions_per_db) {
  Dataset ds;
  std::vector<std::string> db_ids;
  for (int d = 0; d < databases; ++d) {
    std::string db_id = "db" + std::to_string(d);
    std::vector<TableDef> tables;
    for (int t = 0; t < 4; ++t) {
      TableDef def;
      def.name = "t" + std::to_string(t);
      for (int c = 0; c < 5; ++c) def.columns.push_back("c" + std::to_string(c));
      tables.push_back(std::move(def));
    }
    ds.schemas.emplace(db_id, DbSchema(db_id, std::move(tables)));
    db_ids.push_back(db_id);
  }
  std::mt19937_64 rng(1);
  int id = 0;
  for (const auto& db_id : db_ids) {
    const DbSchema& schema = ds.schemas.at(db_id);
    for (int q = 0; q < questions_per_db; ++q) {
      LinkedExample ex;
      ex.id = "q" + std::to_string(id++);
      ex.db_id = db_id;
      ex.question = "benchmark question";
      ex.sql = "SELECT c0 FROM t0";
      for (const auto& t : schema.tables()) {
        if (rng() % 2) continue;
        ex.truth.tables.insert(t.name);
        for (const auto& c : t.columns)
          if (rng() % 2) ex.truth.columns.insert(t.name + "." + c);
      }
      if (ex.truth.tables.empty()) ex.truth.tables.insert("t0");
      ds.examples.push_back(std::move(ex));
    }
  }
  return ds;
}

struct Row {
  const char* name;
  double serial_s;
  double parallel_s;
  bool equal;
};

void print_rows(const std::vector<Row>& rows) {
  std::printf("%-28s %12s %12s %9s %s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
              "bit-identical");
  for (const auto& r : rows)
    std::printf("%-28s %12.3f %12.3f %8.2fx %s\n", r.name, r.serial_s, r.parallel_s,
                r.serial_s / r.parallel_s, r.equal ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int scale = argc > 1 ? std::atoi(argv[1]) : 1;
  if (scale < 1) scale = 1;
  std::printf("threads available: %d\n\n", max_parallel_threads());

  std::vector<Row> rows;

  // batch scoring
  {
    Dataset ds = synthetic_dataset(8, 50);
    RewardConfig cfg;
    cfg.min_tokens = 2;
    cfg.max_tokens = 256;
    std::vector<PredictionRecord> predictions;
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 40 * scale; ++rep)
      for (const auto& ex : ds.examples) {
        SchemaLinkSet noisy = ex.truth;
        if (rng() % 3 == 0) noisy.tables.insert("t9");  // wrong table
        predictions.push_back({ex.id, render_response("thinking about the schema", noisy)});
      }

    auto t0 = std::chrono::steady_clock::now();
    auto serial = score_batch(predictions, ds, cfg, {}, ExecMode::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto parallel = score_batch(predictions, ds, cfg, {}, ExecMode::Parallel);
    double tp = seconds_since(t0);

    bool equal = serial.size() == parallel.size();
    for (std::size_t i = 0; equal && i < serial.size(); ++i)
      equal = serial[i].breakdown.total == parallel[i].breakdown.total &&
              serial[i].predicted == parallel[i].predicted;
    rows.push_back({"score_batch", ts, tp, equal});
  }

  // batch extraction
  {
    auto schemas = load_spider_schemas(std::string(SLINK_DATA_DIR) + "/toy/schemas.json");
    auto raw_base = load_raw_examples(std::string(SLINK_DATA_DIR) + "/toy/examples.jsonl");
    std::vector<RawExample> raw;
    for (int rep = 0; rep < 400 * scale; ++rep)
      for (auto ex : raw_base) {
        ex.id += "_" + std::to_string(rep);
        raw.push_back(std::move(ex));
      }

    auto t0 = std::chrono::steady_clock::now();
    LoadResult serial = load_examples(raw, schemas, {}, ExecMode::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    LoadResult parallel = load_examples(raw, schemas, {}, ExecMode::Parallel);
    double tp = seconds_since(t0);

    bool equal = serial.examples.size() == parallel.examples.size() &&
                 serial.rejections.size() == parallel.rejections.size();
    for (std::size_t i = 0; equal && i < serial.examples.size(); ++i)
      equal = serial.examples[i].truth == parallel.examples[i].truth;
    rows.push_back({"extract_batch", ts, tp, equal});
  }

  // objective and gradient
  {
    Dataset ds = synthetic_dataset(4, 64);
    ToyPolicy policy(ds, {1.0, 0.0, 0.3, 8});
    grpo::GrpoConfig cfg;
    cfg.group_size = 10;
    std::vector<grpo::TrajectoryGroup> groups;
    std::mt19937_64 seeder(3);
    for (std::size_t q = 0; q < policy.question_count(); ++q) {
      Rng rng(seeder());
      auto group = policy.sample_group(q, cfg.group_size, rng);
      for (auto& traj : group.trajectories) {
        traj.reward = 7.0 * uniform01(rng);
        for (auto& d : traj.decisions) d.logp_ref = d.logp_old;
      }
      grpo::compute_advantages(group, cfg.std_floor);
      groups.push_back(std::move(group));
    }

    const int reps = 50 * scale;
    auto t0 = std::chrono::steady_clock::now();
    double js = 0;
    std::vector<double> gs;
    for (int r = 0; r < reps; ++r) {
      js += grpo::grpo_objective(groups, cfg, ExecMode::Serial);
      gs = grpo::objective_gradient(policy, groups, cfg, ExecMode::Serial);
    }
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    double jp = 0;
    std::vector<double> gp;
    for (int r = 0; r < reps; ++r) {
      jp += grpo::grpo_objective(groups, cfg, ExecMode::Parallel);
      gp = grpo::objective_gradient(policy, groups, cfg, ExecMode::Parallel);
    }
    double tp = seconds_since(t0);
    rows.push_back({"objective+gradient", ts, tp, js == jp && gs == gp});
  }

  print_rows(rows);
  bool all_equal = true;
  for (const auto& r : rows) all_equal = all_equal && r.equal;
  return all_equal ? 0 : 1;
}
