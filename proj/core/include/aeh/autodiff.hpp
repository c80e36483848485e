#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "aeh/errors.hpp"
#include "aeh/network.hpp"

namespace aeh {

/// Network output at one point together with its first derivatives and pure
/// second derivatives with respect to the network inputs.
struct JetValue {
  double value = 0.0;
  Eigen::VectorXd input_grad;       // length input_dim
  Eigen::VectorXd input_diag_hess;  // length input_dim
};

/// Batched jet evaluation with a retained tape.
///
/// Channels are packed column-wise into one matrix per layer,
/// [ value | grad_0 .. grad_{d-1} | hess_0 .. hess_{d-1} ], so each affine
/// layer is a single GEMM. Through an affine layer every channel transforms
/// linearly; through tanh the channels compose as
///   v -> t,  g_i -> s*g_i,  h_i -> s'*g_i^2 + s*h_i
/// with t = tanh(z), s = 1 - t^2, s' = -2*t*s. No mixed partials are needed
/// because the nonlinearity is elementwise, so diagonal-Hessian propagation
/// is exact.
template <typename Scalar>
class JetBatchT {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  JetBatchT(const NetworkConfig& config, const ParameterVector& params,
            const Eigen::MatrixXd& points);

  Eigen::Index sample_count() const { return n_; }
  int input_dim() const { return d_; }

  /// Output value / gradient / diagonal-Hessian blocks, cast to double.
  Eigen::RowVectorXd values() const;
  Eigen::MatrixXd input_grads() const;      // d x N
  Eigen::MatrixXd input_diag_hess() const;  // d x N

  /// Exact adjoint of a scalar objective given its partials with respect to
  /// the jet outputs. Accumulation order is fixed, so results are
  /// reproducible run to run.
  GradientVector backprop(const Eigen::RowVectorXd& value_seed,
                          const Eigen::MatrixXd& grad_seed,
                          const Eigen::MatrixXd& hess_seed) const;

 private:
  int d_ = 0;
  Eigen::Index n_ = 0;
  NetworkLayout layout_;
  std::vector<Mat> weights_;  // per layer, fan_out x fan_in
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> biases_;
  Mat seeds_;              // input channels, d x C*N
  std::vector<Mat> out_;   // post-activation packed output per layer
  std::vector<Mat> t_, s_; // tanh value and 1 - t^2 per hidden layer
  std::vector<Mat> gz_, hz_;  // pre-activation grad / hess channels
};

using JetBatch = JetBatchT<double>;

extern template class JetBatchT<double>;
extern template class JetBatchT<float>;

/// Plain forward pass, u_theta(x).
double forward_value(const ParameterVector& params, const NetworkConfig& config,
                     const Eigen::VectorXd& x);

/// Value, input gradient and diagonal input Hessian in one pass.
JetValue forward_jet(const ParameterVector& params, const NetworkConfig& config,
                     const Eigen::VectorXd& x);

/// Value-only batch forward (prediction grids).
Eigen::VectorXd predict_values(const ParameterVector& params, const NetworkConfig& config,
                               const Eigen::MatrixXd& points);

/// A scalar loss assembled from jet outputs over a batch of points.
/// `assemble` receives the jet blocks, fills the (zero-initialized) seed
/// matrices with the loss partials, and returns the loss value.
struct BatchObjective {
  Eigen::MatrixXd points;  // input_dim x N
  std::function<double(const Eigen::RowVectorXd& values, const Eigen::MatrixXd& grads,
                       const Eigen::MatrixXd& hess, Eigen::RowVectorXd& value_seed,
                       Eigen::MatrixXd& grad_seed, Eigen::MatrixXd& hess_seed)>
      assemble;
};

/// Loss value plus its exact parameter gradient.
std::pair<double, GradientVector> objective_gradient(const ParameterVector& params,
                                                     const NetworkConfig& config,
                                                     const BatchObjective& objective);

/// Exact gradient of the objective with respect to every parameter.
GradientVector parameter_gradient(const ParameterVector& params, const NetworkConfig& config,
                                  const BatchObjective& objective);

}  // namespace aeh
