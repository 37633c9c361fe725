#pragma once

#include <string>

#include "slink/grpo.hpp"
#include "slink/reward.hpp"
#include "slink/trainer.hpp"

namespace slink {

/// Everything a run needs, loadable from one human-editable JSON file.
/// Aggregates the reward, update-rule and simulation settings plus the input
/// and output paths. See docs/formats.md for the exact field names.
struct RunConfig {
  std::string schemas_path;
  std::string examples_path;
  std::string out_dir;
  RewardConfig reward;
  grpo::GrpoConfig grpo;
  SimConfig sim;

  void validate() const;

  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;

  std::string to_json_string() const;
  static RunConfig from_json_string(const std::string& text);
};

}  // namespace slink
