#pragma once

#include <string>
#include <vector>

#include "aeh/checkpoint.hpp"
#include "aeh/config.hpp"
#include "aeh/strategies.hpp"

namespace aeh {

struct SeedResult {
  std::uint64_t seed = 0;
  bool has_rel_l2 = false;
  double final_rel_l2 = 0.0;
  bool aborted = false;
  std::string abort_reason;
  int completed_epochs = 0;
  double wall_time_s = 0.0;
};

struct ExperimentSummary {
  std::vector<SeedResult> per_seed;
  bool has_rel_l2 = false;
  double final_rel_l2_mean = 0.0;
  double final_rel_l2_median = 0.0;
  double final_rel_l2_min = 0.0;
  double final_rel_l2_max = 0.0;
  std::int64_t param_count = 0;
  std::int64_t flops_per_forward_est = 0;
  double time_per_epoch_s_mean = 0.0;
  bool complete = true;  // false when any seed aborted
};

/// 2 flops per weight entry of one value-only forward pass.
std::int64_t flops_per_forward_estimate(const NetworkConfig& config);

/// Trains every seed in the config; writes per-seed metrics.csv,
/// prediction.csv and checkpoint.bin under <out_dir>/seed_<s>/, plus
/// summary.txt in out_dir.
ExperimentSummary run_experiment(const RunConfig& config);

/// CSV with one row per test point. Exact/abs-err columns appear only when
/// the grid carries a reference.
void write_prediction_grid(const ParameterVector& params, const NetworkConfig& network,
                           const ProblemSpec& problem, const TestGrid& grid,
                           const std::string& path);

void write_summary(const ExperimentSummary& summary, const std::string& path);

std::string format_metrics_header();
std::string format_metrics_record(const MetricsRecord& record);

struct SweepCell {
  std::vector<std::pair<std::string, std::string>> overrides;
  ExperimentSummary summary;
  bool failed = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

/// Grid syntax: "strategy.s1=1,10;strategy.s2=1,5" — the cross product of
/// all listed values, one run_experiment per cell, written under
/// out_dir/cell_<i>/ with a matrix.csv overview. Cell failures are recorded
/// and the sweep continues.
SweepResult sweep(const RunConfig& base, const std::string& grid_spec,
                  const std::string& out_dir);

/// Runs each config and writes a side-by-side comparison.csv in out_dir.
std::vector<ExperimentSummary> compare_runs(const std::vector<std::string>& config_paths,
                                            const std::string& out_dir);

struct EvaluationReport {
  std::uint64_t seed = 0;
  int epoch = 0;  // last completed epoch
  bool has_rel_l2 = false;
  double rel_l2 = 0.0;
  LossBreakdown losses;
};

/// Re-evaluates a checkpointed state on its problem's test grid.
EvaluationReport evaluate_checkpoint(const std::string& checkpoint_path);

/// Continues a checkpointed run under the given config (which must hash-match)
/// up to config.max_epochs, appending to the metrics stream via `sink`.
TrainResult resume_training(const RunConfig& config, const Checkpoint& checkpoint,
                            const std::function<void(const MetricsRecord&)>& sink);

}  // namespace aeh
