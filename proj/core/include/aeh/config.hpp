#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aeh/network.hpp"
#include "aeh/problems.hpp"
#include "aeh/strategies.hpp"

namespace aeh {

/// Everything a training run needs, parsed from a flat dotted-key file:
///   problem = convection_dominated
///   problem.epsilon = 1e-2
///   strategy.kind = aeh
///   run.seeds = 1,2,3
/// Unknown keys are hard errors; unset keys take the documented defaults.
struct RunConfig {
  ProblemName problem = ProblemName::HeatSteep;
  bool problem_set = false;
  std::map<std::string, double> problem_overrides;
  std::string reference_path;  // problem.reference, for the ingested benchmark

  SampleCounts counts{-1, -1, -1};  // -1 = use the problem's default budget
  std::uint64_t sampling_seed = 0;

  NetworkConfig network;  // input_dim is derived from the problem
  OptimizerConfig optimizer;
  StrategySpec strategy;

  int max_epochs = 100000;
  int eval_every = 100;
  std::vector<std::uint64_t> seeds;  // default 1..10
  std::string out_dir = "out";
  bool timing = false;  // off keeps the metrics stream byte-reproducible

  ProblemSpec build_problem_spec() const;

  /// Fills the remaining defaults (sample budgets, seed list, network input
  /// dimension) and validates every field. Must run before the config is used.
  void finalize();
};

/// Applies one `key = value` pair. Throws ConfigError naming the key when it
/// is unknown or the value is out of range.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Full canonical rendering of a config, parseable by parse_config_text.
std::string render_config(const RunConfig& config);

/// Canonical listing of every field that determines the training trajectory
/// (excludes max_epochs, eval_every, out_dir, timing and the seed list, so a
/// resumed run hashes equal to the original).
std::string trajectory_descriptor(const RunConfig& config);

/// FNV-1a hash of trajectory_descriptor, used as the checkpoint guard.
std::uint64_t trajectory_hash(const RunConfig& config);

}  // namespace aeh
