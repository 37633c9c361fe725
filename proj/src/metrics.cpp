#include "slink/metrics.hpp"

#include <algorithm>
#include <cstdio>

#include "slink/error.hpp"

namespace slink {

double exact_match(const std::set<std::string>& pred, const std::set<std::string>& truth) {
  return pred == truth ? 1.0 : 0.0;
}

double filtered_acc(const std::set<std::string>& pred, const std::set<std::string>& truth) {
  return std::includes(pred.begin(), pred.end(), truth.begin(), truth.end()) ? 1.0 : 0.0;
}

double recall(const std::set<std::string>& pred, const std::set<std::string>& truth) {
  if (truth.empty()) return 1.0;
  std::size_t hit = 0;
  for (const auto& t : truth) hit += pred.count(t);
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

EvalReport aggregate_report(std::span<const std::pair<SchemaLinkSet, SchemaLinkSet>> pairs) {
  if (pairs.empty()) throw ConfigError("cannot aggregate metrics over an empty example list");
  EvalReport rep;
  rep.example_count = pairs.size();
  for (const auto& [pred, truth] : pairs) {
    rep.tables.exact_match += exact_match(pred.tables, truth.tables);
    rep.tables.filtered_acc += filtered_acc(pred.tables, truth.tables);
    rep.tables.recall += recall(pred.tables, truth.tables);
    rep.columns.exact_match += exact_match(pred.columns, truth.columns);
    rep.columns.filtered_acc += filtered_acc(pred.columns, truth.columns);
    rep.columns.recall += recall(pred.columns, truth.columns);
  }
  const double scale = 100.0 / static_cast<double>(pairs.size());
  for (MetricSummary* s : {&rep.tables, &rep.columns}) {
    s->exact_match *= scale;
    s->filtered_acc *= scale;
    s->recall *= scale;
  }
  return rep;
}

std::string format_report(const EvalReport& report) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%-18s %8s %12s %8s\n"
                "%-18s %8.2f %12.2f %8.2f\n"
                "%-18s %8.2f %12.2f %8.2f\n"
                "(%zu examples)\n",
                "task", "EM", "FilteredAcc", "Rec",
                "table prediction", report.tables.exact_match, report.tables.filtered_acc,
                report.tables.recall,
                "column prediction", report.columns.exact_match, report.columns.filtered_acc,
                report.columns.recall,
                report.example_count);
  return buf;
}

}  // namespace slink
