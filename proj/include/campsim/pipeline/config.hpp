#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/bench/bench.hpp"
#include "campsim/core/validate.hpp"
#include "campsim/profiles/attribute_space.hpp"
#include "campsim/sim/simulator.hpp"

namespace campsim::pipeline {

struct ProfileSettings {
  int attempt_budget = 3;
  int regeneration_rounds = 3;  // extra draws for profiles rejected as repetitive
  double threshold = 0.6;
  std::vector<std::string> required_keywords;
};

struct GraphSettings {
  GraphLimits limits;
  int semester_weeks = 16;
  int attempt_budget = 3;
};

struct QcSettings {
  double theta_profile = 0.6;
  double theta_dialogue = 0.85;
  std::optional<std::vector<std::string>> denylist;        // unset: built-in list
  std::optional<std::vector<std::string>> scenario_terms;  // unset: built-in list
  double judge_cutoff = 3.0;
  bool use_judge = false;
};

struct PipelineConfig {
  std::uint64_t seed = 0;
  int students = 10;
  AttributeSpace attribute_space = default_attribute_space();
  BackendConfig generator;
  std::optional<BackendConfig> judge;
  std::optional<BackendConfig> embedder;  // unset: the generator embeds
  ProfileSettings profiles;
  GraphSettings graphs;
  sim::SimulationConfig simulation;
  QcSettings qc;
  bench::BenchConfig bench;
  std::filesystem::path output_root = "campsim_out";
  int parallel = 0;  // 0: hardware concurrency
};

/// Validating parse. A missing "generator" block, unknown backend types,
/// non-positive counts and out-of-range thresholds throw Error(Config).
/// A string "attribute_space" is read as a path relative to `base_dir`.
PipelineConfig parse_config(const json& j, const std::filesystem::path& base_dir = ".");
PipelineConfig load_config(const std::filesystem::path& path);

json config_to_json(const PipelineConfig& c);

/// SHA-256 of the canonical JSON of every setting that affects generated
/// content (the output root and worker count are excluded).
std::string config_digest(const PipelineConfig& c);

/// Ready-to-run offline configuration.
PipelineConfig mock_config(std::uint64_t seed, int students);

}  // namespace campsim::pipeline
