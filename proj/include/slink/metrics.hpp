#pragma once

#include <set>
#include <span>
#include <string>
#include <utility>

#include "slink/schema.hpp"

namespace slink {

/// 1 iff prediction equals truth as sets.
double exact_match(const std::set<std::string>& pred, const std::set<std::string>& truth);

/// 1 iff every ground-truth item survives into the prediction (superset test).
double filtered_acc(const std::set<std::string>& pred, const std::set<std::string>& truth);

/// |pred intersect truth| / |truth|; 1 by convention when truth is empty.
double recall(const std::set<std::string>& pred, const std::set<std::string>& truth);

/// Macro averages as percentages.
struct MetricSummary {
  double exact_match = 0;
  double filtered_acc = 0;
  double recall = 0;
};

/// Per-task (tables / columns) macro report over (prediction, truth) pairs.
struct EvalReport {
  MetricSummary tables;
  MetricSummary columns;
  std::size_t example_count = 0;
};

/// Macro-average the three metrics over examples, per task. Errors on an
/// empty list.
EvalReport aggregate_report(std::span<const std::pair<SchemaLinkSet, SchemaLinkSet>> pairs);

/// Two-panel text rendering of a report.
std::string format_report(const EvalReport& report);

}  // namespace slink
