#include "aeh/losses.hpp"

#include <cmath>

namespace aeh {

AdaptiveWeights AdaptiveWeights::ones(const SampleCounts& counts) {
  return AdaptiveWeights{Eigen::VectorXd::Ones(counts.n_residual),
                         Eigen::VectorXd::Ones(counts.n_initial),
                         Eigen::VectorXd::Ones(counts.n_boundary)};
}

double apply_mask(MaskKind mask, double w) {
  return mask == MaskKind::Identity ? w : w * w;
}

double mask_derivative(MaskKind mask, double w) {
  return mask == MaskKind::Identity ? 1.0 : 2.0 * w;
}

LossBreakdown aggregate_loss(const std::vector<PerSampleLoss>& losses,
                             const SampleCounts& counts) {
  double sums[3] = {0.0, 0.0, 0.0};
  bool seen[3] = {false, false, false};
  for (const PerSampleLoss& l : losses) {
    sums[static_cast<int>(l.group)] += l.value;
    seen[static_cast<int>(l.group)] = true;
  }
  const int denom[3] = {counts.n_residual, counts.n_initial, counts.n_boundary};
  for (int g = 0; g < 3; ++g) {
    if (seen[g] && denom[g] == 0) {
      throw ConfigError("aggregate_loss: losses present for a group with count 0");
    }
  }
  LossBreakdown out;
  out.l_residual = counts.n_residual > 0 ? sums[0] / counts.n_residual : 0.0;
  out.l_initial = counts.n_initial > 0 ? sums[1] / counts.n_initial : 0.0;
  out.l_boundary = counts.n_boundary > 0 ? sums[2] / counts.n_boundary : 0.0;
  out.total = out.l_residual + out.l_initial + out.l_boundary;
  return out;
}

namespace {

const Eigen::VectorXd& group_weights(const AdaptiveWeights& w, SampleGroup g) {
  switch (g) {
    case SampleGroup::Residual: return w.residual;
    case SampleGroup::Initial: return w.initial;
    case SampleGroup::Boundary: return w.boundary;
  }
  throw ConfigError("unknown sample group");
}

int group_count(const SampleCounts& c, SampleGroup g) {
  switch (g) {
    case SampleGroup::Residual: return c.n_residual;
    case SampleGroup::Initial: return c.n_initial;
    case SampleGroup::Boundary: return c.n_boundary;
  }
  throw ConfigError("unknown sample group");
}

}  // namespace

double weighted_objective(const std::vector<PerSampleLoss>& losses,
                          const AdaptiveWeights& weights, const SampleCounts& counts,
                          MaskKind mask) {
  double sums[3] = {0.0, 0.0, 0.0};
  for (const PerSampleLoss& l : losses) {
    const Eigen::VectorXd& w = group_weights(weights, l.group);
    if (l.index < 0 || l.index >= w.size()) {
      throw ConfigError("weighted_objective: weight vector does not cover sample index");
    }
    sums[static_cast<int>(l.group)] += apply_mask(mask, w[l.index]) * l.value;
  }
  double total = 0.0;
  const int denom[3] = {counts.n_residual, counts.n_initial, counts.n_boundary};
  for (int g = 0; g < 3; ++g) {
    if (denom[g] > 0) {
      total += sums[g] / denom[g];
    } else if (sums[g] != 0.0) {
      throw ConfigError("weighted_objective: losses present for a group with count 0");
    }
  }
  return total;
}

AdaptiveWeights weighted_objective_weight_grad(const std::vector<PerSampleLoss>& losses,
                                               const AdaptiveWeights& weights,
                                               const SampleCounts& counts, MaskKind mask) {
  AdaptiveWeights grad{Eigen::VectorXd::Zero(weights.residual.size()),
                       Eigen::VectorXd::Zero(weights.initial.size()),
                       Eigen::VectorXd::Zero(weights.boundary.size())};
  for (const PerSampleLoss& l : losses) {
    const Eigen::VectorXd& w = group_weights(weights, l.group);
    if (l.index < 0 || l.index >= w.size()) {
      throw ConfigError("weighted_objective_weight_grad: index out of range");
    }
    const int n = group_count(counts, l.group);
    if (n <= 0) throw ConfigError("weighted_objective_weight_grad: zero group count");
    const double g = mask_derivative(mask, w[l.index]) * l.value / n;
    switch (l.group) {
      case SampleGroup::Residual: grad.residual[l.index] = g; break;
      case SampleGroup::Initial: grad.initial[l.index] = g; break;
      case SampleGroup::Boundary: grad.boundary[l.index] = g; break;
    }
  }
  return grad;
}

std::pair<OutlierStats, std::vector<int>> outlier_stats(
    const std::vector<PerSampleLoss>& losses, double threshold_k) {
  const std::size_t n = losses.size();
  if (n < 2) throw ConfigError("outlier_stats requires at least 2 samples");
  double sum = 0.0;
  for (const PerSampleLoss& l : losses) sum += l.value;
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (const PerSampleLoss& l : losses) {
    const double d = l.value - mean;
    sq += d * d;
  }
  OutlierStats stats;
  stats.mean = mean;
  stats.std = std::sqrt(sq / static_cast<double>(n - 1));
  stats.threshold_k = threshold_k;
  std::vector<int> anomalies;
  const double threshold = mean + threshold_k * stats.std;
  for (std::size_t i = 0; i < n; ++i) {
    if (losses[i].value > threshold) anomalies.push_back(static_cast<int>(i));
  }
  return {stats, std::move(anomalies)};
}

double relative_l2(const Eigen::VectorXd& predictions, const Eigen::VectorXd& exact) {
  if (predictions.size() == 0 || predictions.size() != exact.size()) {
    throw ConfigError("relative_l2: vectors must have equal nonzero length");
  }
  const double denom = exact.norm();
  if (denom == 0.0) {
    throw NumericError("relative_l2: reference is identically zero");
  }
  return (predictions - exact).norm() / denom;
}

SampleEvaluator::SampleEvaluator(const ProblemSpec& problem, const NetworkConfig& config,
                                 const SampleSet& samples)
    : problem_(problem), config_(config), counts_(samples.counts()) {
  config_.validate();
  const int d = problem_.input_dim();
  if (config_.input_dim != d) {
    throw ConfigError("SampleEvaluator: network input_dim does not match problem");
  }
  const int total = samples.total();
  points_.resize(d, total);
  grad_coeff_.resize(d, counts_.n_residual);
  sources_.resize(counts_.n_residual);
  hess_coeff_ = residual_hess_coeff(problem_);
  int col = 0;
  for (int i = 0; i < counts_.n_residual; ++i, ++col) {
    const SamplePoint& pt = samples.residual[i];
    points_.col(col) = pt.coords;
    grad_coeff_.col(i) = residual_grad_coeff(problem_, pt.coords);
    sources_[i] = source_term(problem_, pt.coords);
  }
  initial_targets_.resize(counts_.n_initial);
  for (int i = 0; i < counts_.n_initial; ++i, ++col) {
    points_.col(col) = samples.initial[i].coords;
    initial_targets_[i] = initial_value(problem_, samples.initial[i].coords);
  }
  boundary_targets_.resize(counts_.n_boundary);
  for (int i = 0; i < counts_.n_boundary; ++i, ++col) {
    points_.col(col) = samples.boundary[i].coords;
    boundary_targets_[i] = boundary_value(problem_, samples.boundary[i]);
  }
}

const std::vector<PerSampleLoss>& SampleEvaluator::forward(const ParameterVector& params) {
  batch_ = std::make_unique<JetBatch>(config_, params, points_);
  values_ = batch_->values();
  const int total = static_cast<int>(points_.cols());
  for (int i = 0; i < total; ++i) {
    if (!std::isfinite(values_(i))) {
      throw NumericError("SampleEvaluator: non-finite network output", i);
    }
  }
  violations_.resize(total);
  if (counts_.n_residual > 0) {
    const Eigen::MatrixXd grads = batch_->input_grads().leftCols(counts_.n_residual);
    const Eigen::MatrixXd hess = batch_->input_diag_hess().leftCols(counts_.n_residual);
    for (int i = 0; i < counts_.n_residual; ++i) {
      double r = grad_coeff_.col(i).dot(grads.col(i)) + hess_coeff_.dot(hess.col(i)) +
                 residual_value_part(problem_, values_(i)) - sources_[i];
      if (!std::isfinite(r)) {
        throw NumericError("SampleEvaluator: non-finite residual", i);
      }
      violations_[i] = r;
    }
  }
  int col = counts_.n_residual;
  for (int i = 0; i < counts_.n_initial; ++i, ++col) {
    violations_[col] = values_(col) - initial_targets_[i];
  }
  for (int i = 0; i < counts_.n_boundary; ++i, ++col) {
    violations_[col] = values_(col) - boundary_targets_[i];
  }

  losses_.clear();
  losses_.reserve(total);
  col = 0;
  for (int i = 0; i < counts_.n_residual; ++i, ++col) {
    losses_.push_back({SampleGroup::Residual, i, violations_[col] * violations_[col]});
  }
  for (int i = 0; i < counts_.n_initial; ++i, ++col) {
    losses_.push_back({SampleGroup::Initial, i, violations_[col] * violations_[col]});
  }
  for (int i = 0; i < counts_.n_boundary; ++i, ++col) {
    losses_.push_back({SampleGroup::Boundary, i, violations_[col] * violations_[col]});
  }
  has_forward_ = true;
  return losses_;
}

GradientVector SampleEvaluator::gradient(const Eigen::VectorXd& coeff_residual,
                                         const Eigen::VectorXd& coeff_initial,
                                         const Eigen::VectorXd& coeff_boundary) const {
  if (!has_forward_) {
    throw ConfigError("SampleEvaluator::gradient called before forward");
  }
  if (coeff_residual.size() != counts_.n_residual ||
      coeff_initial.size() != counts_.n_initial ||
      coeff_boundary.size() != counts_.n_boundary) {
    throw ConfigError("SampleEvaluator::gradient: coefficient length mismatch");
  }
  const int d = problem_.input_dim();
  const int total = static_cast<int>(points_.cols());
  Eigen::RowVectorXd vseed = Eigen::RowVectorXd::Zero(total);
  Eigen::MatrixXd gseed = Eigen::MatrixXd::Zero(d, total);
  Eigen::MatrixXd hseed = Eigen::MatrixXd::Zero(d, total);
  // d(c_i * r_i^2)/d(jet) = 2 c_i r_i * d(r_i)/d(jet)
  for (int i = 0; i < counts_.n_residual; ++i) {
    const double c = coeff_residual[i];
    if (c == 0.0) continue;
    const double scale = 2.0 * c * violations_[i];
    vseed(i) = scale * residual_value_part_derivative(problem_, values_(i));
    gseed.col(i) = scale * grad_coeff_.col(i);
    hseed.col(i) = scale * hess_coeff_;
  }
  int col = counts_.n_residual;
  for (int i = 0; i < counts_.n_initial; ++i, ++col) {
    if (coeff_initial[i] != 0.0) vseed(col) = 2.0 * coeff_initial[i] * violations_[col];
  }
  for (int i = 0; i < counts_.n_boundary; ++i, ++col) {
    if (coeff_boundary[i] != 0.0) vseed(col) = 2.0 * coeff_boundary[i] * violations_[col];
  }
  GradientVector grad = batch_->backprop(vseed, gseed, hseed);
  if (!grad.allFinite()) {
    throw NumericError("SampleEvaluator: non-finite parameter gradient");
  }
  return grad;
}

std::vector<PerSampleLoss> per_sample_losses(const ParameterVector& params,
                                             const NetworkConfig& config,
                                             const SampleSet& samples,
                                             const ProblemSpec& problem) {
  SampleEvaluator eval(problem, config, samples);
  return eval.forward(params);
}

}  // namespace aeh
