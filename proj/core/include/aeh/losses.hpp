#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

#include "aeh/autodiff.hpp"
#include "aeh/problems.hpp"

namespace aeh {

struct PerSampleLoss {
  SampleGroup group = SampleGroup::Residual;
  int index = 0;  // within the group
  double value = 0.0;
};

struct LossBreakdown {
  double l_residual = 0.0;
  double l_initial = 0.0;
  double l_boundary = 0.0;
  double total = 0.0;
};

/// One trainable penalty weight per collocation point, grouped like the
/// sample set. Initialized to 1 and only ever pushed up by gradient ascent.
struct AdaptiveWeights {
  Eigen::VectorXd residual;
  Eigen::VectorXd initial;
  Eigen::VectorXd boundary;

  static AdaptiveWeights ones(const SampleCounts& counts);
};

enum class MaskKind { Identity, Square };

struct OutlierStats {
  double mean = 0.0;  // Psi
  double std = 0.0;   // sigma, (N-1) denominator
  double threshold_k = 0.0;
};

/// Raw squared constraint violation per sample, no 1/N factor, pooled in
/// group order (residual, initial, boundary).
std::vector<PerSampleLoss> per_sample_losses(const ParameterVector& params,
                                             const NetworkConfig& config,
                                             const SampleSet& samples,
                                             const ProblemSpec& problem);

/// Group means summed into the total. `counts` are the denominators — pass
/// subset sizes when aggregating a selected subset.
LossBreakdown aggregate_loss(const std::vector<PerSampleLoss>& losses,
                             const SampleCounts& counts);

/// Hard-phase objective: sum over groups of (1/N_g) * sum_i m(w_i) * loss_i.
double weighted_objective(const std::vector<PerSampleLoss>& losses,
                          const AdaptiveWeights& weights, const SampleCounts& counts,
                          MaskKind mask);

/// d(weighted_objective)/d(w_i) = m'(w_i) * loss_i / N_group, for the ascent step.
AdaptiveWeights weighted_objective_weight_grad(const std::vector<PerSampleLoss>& losses,
                                               const AdaptiveWeights& weights,
                                               const SampleCounts& counts, MaskKind mask);

double apply_mask(MaskKind mask, double w);
double mask_derivative(MaskKind mask, double w);

/// Pooled mean / unbiased std over all sample losses plus the anomaly set
/// {i : loss_i > mean + k * std} (positions into the pooled list).
std::pair<OutlierStats, std::vector<int>> outlier_stats(
    const std::vector<PerSampleLoss>& losses, double threshold_k);

/// sqrt(sum |pred - exact|^2) / sqrt(sum |exact|^2).
double relative_l2(const Eigen::VectorXd& predictions, const Eigen::VectorXd& exact);

/// Batched loss/gradient evaluator over a fixed sample set.
///
/// Pools all collocation points into one jet batch and precomputes the
/// residual decomposition coefficients, sources and boundary/initial data.
/// Every training strategy drives the same forward() + gradient() pair, only
/// the per-sample coefficients differ, so strategies that are mathematically
/// identical produce bit-identical trajectories.
class SampleEvaluator {
 public:
  SampleEvaluator(const ProblemSpec& problem, const NetworkConfig& config,
                  const SampleSet& samples);

  const SampleCounts& counts() const { return counts_; }

  /// Evaluates the network jet over all points and caches the signed
  /// constraint violations; returns the pooled squared losses.
  const std::vector<PerSampleLoss>& forward(const ParameterVector& params);

  const std::vector<PerSampleLoss>& losses() const { return losses_; }

  /// Exact parameter gradient of sum_i c_i * loss_i over the pooled samples,
  /// where c_i is the caller-supplied coefficient (weight, mask and 1/N
  /// normalization folded in; zero excludes the sample). Requires forward()
  /// for the same params first.
  GradientVector gradient(const Eigen::VectorXd& coeff_residual,
                          const Eigen::VectorXd& coeff_initial,
                          const Eigen::VectorXd& coeff_boundary) const;

 private:
  const ProblemSpec problem_;
  NetworkConfig config_;
  SampleCounts counts_;
  Eigen::MatrixXd points_;       // input_dim x N_total, residual | initial | boundary
  Eigen::MatrixXd grad_coeff_;   // input_dim x N_R
  Eigen::VectorXd hess_coeff_;   // input_dim
  Eigen::VectorXd sources_;      // N_R
  Eigen::VectorXd initial_targets_;
  Eigen::VectorXd boundary_targets_;

  std::unique_ptr<JetBatch> batch_;
  Eigen::RowVectorXd values_;
  Eigen::VectorXd violations_;  // signed, pooled
  std::vector<PerSampleLoss> losses_;
  bool has_forward_ = false;
};

}  // namespace aeh
