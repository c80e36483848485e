#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "aeh/errors.hpp"

namespace aeh {

enum class Activation { Tanh };
enum class InitScheme { He };
enum class Precision { Double, Single };

/// Fully connected architecture: input -> hidden_layers x width -> scalar output.
struct NetworkConfig {
  int input_dim = 1;
  int hidden_layers = 4;
  int width = 50;
  Activation activation = Activation::Tanh;
  InitScheme init = InitScheme::He;
  Precision precision = Precision::Double;

  void validate() const;
  std::int64_t parameter_count() const;
};

/// Per-affine-layer offsets into the flat parameter vector.
/// Layout per layer: weights row-major (out x in), then biases (out).
class NetworkLayout {
 public:
  explicit NetworkLayout(const NetworkConfig& config);

  int layer_count() const { return static_cast<int>(fan_in_.size()); }
  int fan_in(int layer) const { return fan_in_[layer]; }
  int fan_out(int layer) const { return fan_out_[layer]; }
  std::int64_t weight_offset(int layer) const { return weight_off_[layer]; }
  std::int64_t bias_offset(int layer) const { return bias_off_[layer]; }
  std::int64_t total_size() const { return total_; }

 private:
  std::vector<int> fan_in_, fan_out_;
  std::vector<std::int64_t> weight_off_, bias_off_;
  std::int64_t total_ = 0;
};

/// Flat storage for all weights and biases; the object Adam optimizes.
struct ParameterVector {
  Eigen::VectorXd entries;

  static ParameterVector zeros(const NetworkConfig& config);
};

using GradientVector = Eigen::VectorXd;

/// He-initialized parameters: weights ~ N(0, 2/fan_in), biases zero.
/// Deterministic per seed (hand-rolled Box-Muller over mt19937_64).
ParameterVector init_parameters(const NetworkConfig& config, std::uint64_t seed);

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  std::int64_t step_count = 0;

  static AdamState zeros(std::int64_t n);
};

struct OptimizerConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double ascent_lr = 1e-3;  // rate for the sample-weight ascent update

  void validate() const;
};

/// One Adam update with bias correction, in place.
void adam_step(AdamState& state, ParameterVector& params, const GradientVector& grad,
               const OptimizerConfig& opt);

/// Plain gradient ascent on one group of sample weights: w += ascent_lr * grad.
void ascent_step(Eigen::VectorXd& weights, const Eigen::VectorXd& weight_grad, double ascent_lr);

}  // namespace aeh
