#include "aeh/strategies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace aeh {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Vanilla: return "vanilla";
    case StrategyKind::HardOnly: return "hard_only";
    case StrategyKind::EasyOnly: return "easy_only";
    case StrategyKind::AapinnLite: return "aapinn_lite";
    case StrategyKind::Aeh: return "aeh";
  }
  throw ConfigError("unknown strategy enum value");
}

StrategyKind strategy_from_string(const std::string& s) {
  if (s == "vanilla") return StrategyKind::Vanilla;
  if (s == "hard_only") return StrategyKind::HardOnly;
  if (s == "easy_only") return StrategyKind::EasyOnly;
  if (s == "aapinn_lite") return StrategyKind::AapinnLite;
  if (s == "aeh") return StrategyKind::Aeh;
  throw ConfigError("unknown strategy kind: " + s);
}

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::Hard: return "hard";
    case Phase::Easy: return "easy";
    case Phase::Full: return "full";
  }
  throw ConfigError("unknown phase enum value");
}

void StrategySpec::validate() const {
  if (s1 < 1) throw ConfigError("strategy.s1 must be >= 1");
  if (s2 < 1) throw ConfigError("strategy.s2 must be >= 1");
  if (period < 1) throw ConfigError("strategy.period must be >= 1");
  if (outlier_k < 0.0) throw ConfigError("strategy.outlier_k must be >= 0");
  if (outlier_check_every < 1) throw ConfigError("strategy.outlier_check_every must be >= 1");
}

double selection_ratio(int cycle, int period) {
  if (period < 1) throw ConfigError("selection_ratio: period must be >= 1");
  if (cycle < 1 || cycle > period) {
    throw ConfigError("selection_ratio: cycle out of [1, period]");
  }
  return std::min(0.5 + 0.99 * static_cast<double>(cycle) / static_cast<double>(period), 1.0);
}

namespace {

// ceil(ratio * n) clamped to [1, n]
int subset_size(double ratio, int n) {
  const int k = static_cast<int>(std::ceil(ratio * static_cast<double>(n)));
  return std::clamp(k, 1, n);
}

std::vector<int> lowest_k(const std::vector<const PerSampleLoss*>& group, int k) {
  std::vector<int> order(group.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (group[a]->value != group[b]->value) return group[a]->value < group[b]->value;
    return group[a]->index < group[b]->index;
  });
  std::vector<int> keep;
  keep.reserve(k);
  for (int i = 0; i < k; ++i) keep.push_back(group[order[i]]->index);
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace

SubsetSelection select_easy_subset(const std::vector<PerSampleLoss>& losses, double ratio,
                                   SelectionScope scope) {
  if (losses.empty()) throw ConfigError("select_easy_subset: empty loss list");
  if (!(ratio > 0.0) || ratio > 1.0) {
    throw ConfigError("select_easy_subset: ratio must be in (0, 1]");
  }
  SubsetSelection sel;
  if (scope == SelectionScope::PerGroup) {
    std::vector<const PerSampleLoss*> groups[3];
    for (const PerSampleLoss& l : losses) groups[static_cast<int>(l.group)].push_back(&l);
    std::vector<int>* out[3] = {&sel.residual, &sel.initial, &sel.boundary};
    for (int g = 0; g < 3; ++g) {
      if (groups[g].empty()) continue;
      *out[g] = lowest_k(groups[g], subset_size(ratio, static_cast<int>(groups[g].size())));
    }
  } else {
    std::vector<int> order(losses.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return losses[a].value < losses[b].value;  // stable sort keeps pooled index order on ties
    });
    const int k = subset_size(ratio, static_cast<int>(losses.size()));
    for (int i = 0; i < k; ++i) {
      const PerSampleLoss& l = losses[order[i]];
      switch (l.group) {
        case SampleGroup::Residual: sel.residual.push_back(l.index); break;
        case SampleGroup::Initial: sel.initial.push_back(l.index); break;
        case SampleGroup::Boundary: sel.boundary.push_back(l.index); break;
      }
    }
    std::sort(sel.residual.begin(), sel.residual.end());
    std::sort(sel.initial.begin(), sel.initial.end());
    std::sort(sel.boundary.begin(), sel.boundary.end());
  }
  return sel;
}

Trainer::Trainer(ProblemSpec problem, NetworkConfig network, OptimizerConfig opt,
                 StrategySpec strategy, const SampleSet& samples)
    : problem_(std::move(problem)),
      network_(network),
      opt_(opt),
      strategy_(strategy),
      eval_(problem_, network_, samples) {
  opt_.validate();
  strategy_.validate();
}

TrainerState Trainer::make_initial_state(std::uint64_t seed) const {
  TrainerState state;
  state.params = init_parameters(network_, seed);
  state.adam = AdamState::zeros(network_.parameter_count());
  state.weights = AdaptiveWeights::ones(eval_.counts());
  state.schedule.epoch = 1;
  state.schedule.cycle = 1;
  state.schedule.ratio = selection_ratio(1, strategy_.period);
  state.rng_state = seed;
  return state;
}

void Trainer::hard_phase_step(TrainerState& state, int inner_step) {
  const SampleCounts& c = eval_.counts();
  const std::vector<PerSampleLoss>& losses = eval_.forward(state.params);
  breakdown_ = aggregate_loss(losses, c);
  const AdaptiveWeights wgrad =
      weighted_objective_weight_grad(losses, state.weights, c, strategy_.mask);

  Eigen::VectorXd cr(c.n_residual), ci(c.n_initial), cb(c.n_boundary);
  for (int i = 0; i < c.n_residual; ++i) {
    cr[i] = apply_mask(strategy_.mask, state.weights.residual[i]) / c.n_residual;
  }
  for (int i = 0; i < c.n_initial; ++i) {
    ci[i] = apply_mask(strategy_.mask, state.weights.initial[i]) / c.n_initial;
  }
  for (int i = 0; i < c.n_boundary; ++i) {
    cb[i] = apply_mask(strategy_.mask, state.weights.boundary[i]) / c.n_boundary;
  }
  const GradientVector grad = eval_.gradient(cr, ci, cb);

  // both gradients were taken at the pre-update (theta, w): parallel update
  ascent_step(state.weights.residual, wgrad.residual, opt_.ascent_lr);
  ascent_step(state.weights.initial, wgrad.initial, opt_.ascent_lr);
  ascent_step(state.weights.boundary, wgrad.boundary, opt_.ascent_lr);
  adam_step(state.adam, state.params, grad, opt_);

  last_phase_ = Phase::Hard;
  state.schedule.phase_log.push_back(
      {state.schedule.epoch, Phase::Hard, inner_step, state.schedule.ratio});
}

void Trainer::easy_phase_step(TrainerState& state, int inner_step) {
  const SampleCounts& c = eval_.counts();
  const std::vector<PerSampleLoss>& losses = eval_.forward(state.params);
  breakdown_ = aggregate_loss(losses, c);
  const SubsetSelection sel =
      select_easy_subset(losses, state.schedule.ratio, strategy_.selection_scope);

  Eigen::VectorXd cr = Eigen::VectorXd::Zero(c.n_residual);
  Eigen::VectorXd ci = Eigen::VectorXd::Zero(c.n_initial);
  Eigen::VectorXd cb = Eigen::VectorXd::Zero(c.n_boundary);
  if (!sel.residual.empty()) {
    const double w = 1.0 / static_cast<double>(sel.residual.size());
    for (int i : sel.residual) cr[i] = w;
  }
  if (!sel.initial.empty()) {
    const double w = 1.0 / static_cast<double>(sel.initial.size());
    for (int i : sel.initial) ci[i] = w;
  }
  if (!sel.boundary.empty()) {
    const double w = 1.0 / static_cast<double>(sel.boundary.size());
    for (int i : sel.boundary) cb[i] = w;
  }
  const GradientVector grad = eval_.gradient(cr, ci, cb);
  adam_step(state.adam, state.params, grad, opt_);

  last_phase_ = Phase::Easy;
  state.schedule.phase_log.push_back(
      {state.schedule.epoch, Phase::Easy, inner_step, state.schedule.ratio});
}

void Trainer::full_batch_step(TrainerState& state, const std::vector<int>& excluded) {
  const SampleCounts& c = eval_.counts();
  const std::vector<PerSampleLoss>& losses = eval_.forward(state.params);
  breakdown_ = aggregate_loss(losses, c);

  std::vector<bool> out(losses.size(), false);
  for (int i : excluded) {
    if (i >= 0 && i < static_cast<int>(losses.size())) out[i] = true;
  }
  int included[3] = {0, 0, 0};
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (!out[i]) included[static_cast<int>(losses[i].group)] += 1;
  }
  Eigen::VectorXd cr = Eigen::VectorXd::Zero(c.n_residual);
  Eigen::VectorXd ci = Eigen::VectorXd::Zero(c.n_initial);
  Eigen::VectorXd cb = Eigen::VectorXd::Zero(c.n_boundary);
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (out[i]) continue;
    const PerSampleLoss& l = losses[i];
    const double w = 1.0 / static_cast<double>(included[static_cast<int>(l.group)]);
    switch (l.group) {
      case SampleGroup::Residual: cr[l.index] = w; break;
      case SampleGroup::Initial: ci[l.index] = w; break;
      case SampleGroup::Boundary: cb[l.index] = w; break;
    }
  }
  const GradientVector grad = eval_.gradient(cr, ci, cb);
  adam_step(state.adam, state.params, grad, opt_);

  last_phase_ = Phase::Full;
  state.schedule.phase_log.push_back(
      {state.schedule.epoch, Phase::Full, 1, state.schedule.ratio});
}

LossBreakdown Trainer::evaluate_losses(const TrainerState& state) {
  breakdown_ = aggregate_loss(eval_.forward(state.params), eval_.counts());
  return breakdown_;
}

void Trainer::run_epoch(TrainerState& state) {
  const int epoch = state.schedule.epoch;
  state.schedule.cycle = ((epoch - 1) % strategy_.period) + 1;
  state.schedule.ratio = selection_ratio(state.schedule.cycle, strategy_.period);

  switch (strategy_.kind) {
    case StrategyKind::Vanilla:
      full_batch_step(state, {});
      break;
    case StrategyKind::HardOnly:
      for (int i = 1; i <= strategy_.s1; ++i) hard_phase_step(state, i);
      break;
    case StrategyKind::EasyOnly:
      for (int i = 1; i <= strategy_.s2; ++i) easy_phase_step(state, i);
      break;
    case StrategyKind::AapinnLite:
      if ((epoch - 1) % strategy_.outlier_check_every == 0) {
        const std::vector<PerSampleLoss>& losses = eval_.forward(state.params);
        auto [stats, anomalies] = outlier_stats(losses, strategy_.outlier_k);
        (void)stats;
        state.aapinn_excluded = std::move(anomalies);
      }
      full_batch_step(state, state.aapinn_excluded);
      break;
    case StrategyKind::Aeh:
      for (int i = 1; i <= strategy_.s1; ++i) hard_phase_step(state, i);
      for (int i = 1; i <= strategy_.s2; ++i) easy_phase_step(state, i);
      break;
  }
  state.schedule.epoch = epoch + 1;
}

namespace {

double evaluate_rel_l2(const Trainer& trainer, const TrainerState& state, const TestGrid& grid) {
  const Eigen::VectorXd pred =
      predict_values(state.params, trainer.network(), grid.points);
  return relative_l2(pred, grid.exact);
}

}  // namespace

TrainResult train(Trainer& trainer, TrainerState state, const TrainOptions& options,
                  const TestGrid* grid,
                  const std::function<void(const MetricsRecord&)>& sink) {
  if (options.max_epochs < 0) throw ConfigError("run.max_epochs must be >= 0");
  if (options.eval_every < 1) throw ConfigError("run.eval_every must be >= 1");
  const bool can_eval = grid != nullptr && grid->has_exact;

  TrainResult result;
  using Clock = std::chrono::steady_clock;
  double elapsed = 0.0;

  if (options.max_epochs == 0) {
    // report the initial losses and accuracy without taking a step
    MetricsRecord rec;
    rec.epoch = 0;
    rec.phase = Phase::Full;
    const LossBreakdown b = trainer.evaluate_losses(state);
    rec.loss_total = b.total;
    rec.loss_r = b.l_residual;
    rec.loss_i = b.l_initial;
    rec.loss_b = b.l_boundary;
    if (can_eval) {
      rec.has_rel_l2 = true;
      rec.rel_l2 = evaluate_rel_l2(trainer, state, *grid);
    }
    if (sink) sink(rec);
    result.state = std::move(state);
    return result;
  }

  // epochs are numbered by the schedule state, so a resumed run continues
  // exactly where the checkpointed one stopped
  while (state.schedule.epoch <= options.max_epochs) {
    const int epoch = state.schedule.epoch;
    TrainerState snapshot = state;
    const auto t0 = Clock::now();
    try {
      trainer.run_epoch(state);
    } catch (const NumericError& e) {
      result.state = std::move(snapshot);
      result.aborted = true;
      result.abort_reason = e.what();
      result.total_wall_time_s = elapsed;
      return result;
    }
    if (options.measure_time) {
      elapsed += std::chrono::duration<double>(Clock::now() - t0).count();
    }

    MetricsRecord rec;
    rec.epoch = epoch;
    rec.phase = trainer.last_phase();
    const LossBreakdown& b = trainer.last_breakdown();
    rec.loss_total = b.total;
    rec.loss_r = b.l_residual;
    rec.loss_i = b.l_initial;
    rec.loss_b = b.l_boundary;
    if (can_eval && (epoch % options.eval_every == 0 || epoch == options.max_epochs)) {
      rec.has_rel_l2 = true;
      rec.rel_l2 = evaluate_rel_l2(trainer, state, *grid);
    }
    rec.wall_time_s = elapsed;
    if (sink) sink(rec);
    result.completed_epochs += 1;
  }
  result.state = std::move(state);
  result.total_wall_time_s = elapsed;
  return result;
}

}  // namespace aeh
