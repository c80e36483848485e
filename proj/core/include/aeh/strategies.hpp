#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aeh/losses.hpp"
#include "aeh/network.hpp"
#include "aeh/problems.hpp"

namespace aeh {

enum class StrategyKind { Vanilla, HardOnly, EasyOnly, AapinnLite, Aeh };
enum class SelectionScope { PerGroup, Global };
enum class Phase { Hard, Easy, Full };

std::string to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& s);
std::string to_string(Phase phase);

struct StrategySpec {
  StrategyKind kind = StrategyKind::Aeh;
  int s1 = 10;      // hard-phase inner steps per epoch
  int s2 = 1;       // easy-phase inner steps per epoch
  int period = 300; // selection-ratio cycle length P
  MaskKind mask = MaskKind::Identity;
  double outlier_k = 3.0;
  int outlier_check_every = 100;
  SelectionScope selection_scope = SelectionScope::PerGroup;

  void validate() const;
};

struct PhaseRecord {
  int epoch = 0;
  Phase phase = Phase::Full;
  int inner_step = 0;  // 1-based within the phase
  double ratio = 1.0;  // selection ratio in force at this step
};

struct ScheduleState {
  int epoch = 1;       // current (1-based) epoch
  int cycle = 1;       // ((epoch - 1) mod P) + 1
  double ratio = 0.5;
  std::vector<PhaseRecord> phase_log;
};

struct TrainerState {
  ParameterVector params;
  AdamState adam;
  AdaptiveWeights weights;
  ScheduleState schedule;
  std::uint64_t rng_state = 0;
  std::vector<int> aapinn_excluded;  // pooled indices, persists between checks
};

/// min{0.5 + 0.99 * cycle / period, 1}.
double selection_ratio(int cycle, int period);

struct SubsetSelection {
  std::vector<int> residual;
  std::vector<int> initial;
  std::vector<int> boundary;
};

/// Lowest-loss subset, ceil(ratio * N) per group (per_group scope) or over
/// the pooled list (global scope), at least one sample kept per nonempty
/// group/pool. Ties break toward the lower sample index; returned indices
/// are ascending.
SubsetSelection select_easy_subset(const std::vector<PerSampleLoss>& losses, double ratio,
                                   SelectionScope scope);

/// Runs one strategy over a fixed sample set. All strategies funnel through
/// the same evaluator and coefficient assembly, so configurations that are
/// mathematically equivalent produce bit-identical trajectories.
class Trainer {
 public:
  Trainer(ProblemSpec problem, NetworkConfig network, OptimizerConfig opt,
          StrategySpec strategy, const SampleSet& samples);

  TrainerState make_initial_state(std::uint64_t seed) const;

  /// One simultaneous min-max update: per-sample losses, theta-gradient of
  /// the weighted objective and w-gradient are all evaluated at the current
  /// (theta, w); then w ascends and theta takes an Adam step.
  void hard_phase_step(TrainerState& state, int inner_step);

  /// One Adam step on the unweighted subset loss at the current selection
  /// ratio (subset-size denominators); weights untouched.
  void easy_phase_step(TrainerState& state, int inner_step);

  /// Runs one epoch of the configured strategy and advances the schedule.
  void run_epoch(TrainerState& state);

  /// Full-set loss breakdown at the given parameters, without stepping.
  LossBreakdown evaluate_losses(const TrainerState& state);

  const ProblemSpec& problem() const { return problem_; }
  const NetworkConfig& network() const { return network_; }
  const OptimizerConfig& optimizer() const { return opt_; }
  const StrategySpec& strategy() const { return strategy_; }
  const SampleCounts& counts() const { return eval_.counts(); }

  /// Full-set loss breakdown from the most recent step's forward pass.
  const LossBreakdown& last_breakdown() const { return breakdown_; }
  /// Per-sample losses from the most recent forward pass.
  const std::vector<PerSampleLoss>& last_losses() const { return eval_.losses(); }
  Phase last_phase() const { return last_phase_; }

 private:
  void full_batch_step(TrainerState& state, const std::vector<int>& excluded);

  ProblemSpec problem_;
  NetworkConfig network_;
  OptimizerConfig opt_;
  StrategySpec strategy_;
  SampleEvaluator eval_;
  LossBreakdown breakdown_;
  Phase last_phase_ = Phase::Full;
};

struct MetricsRecord {
  int epoch = 0;
  Phase phase = Phase::Full;
  double loss_total = 0.0;
  double loss_r = 0.0;
  double loss_i = 0.0;
  double loss_b = 0.0;
  bool has_rel_l2 = false;
  double rel_l2 = 0.0;
  double wall_time_s = 0.0;  // cumulative; 0 unless timing is enabled
};

struct TrainOptions {
  int max_epochs = 100000;
  int eval_every = 100;
  bool measure_time = false;
};

struct TrainResult {
  TrainerState state;
  int completed_epochs = 0;
  bool aborted = false;
  std::string abort_reason;
  double total_wall_time_s = 0.0;
};

/// Runs epochs until max_epochs, streaming one MetricsRecord per epoch.
/// rel_l2 is filled at eval_every multiples and at the final epoch when the
/// test grid carries a reference. A numeric failure stops training and
/// returns the last state that completed an epoch, flagged aborted.
TrainResult train(Trainer& trainer, TrainerState state, const TrainOptions& options,
                  const TestGrid* grid,
                  const std::function<void(const MetricsRecord&)>& sink);

}  // namespace aeh
