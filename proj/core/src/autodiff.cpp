#include "aeh/autodiff.hpp"

namespace aeh {

template <typename Scalar>
JetBatchT<Scalar>::JetBatchT(const NetworkConfig& config, const ParameterVector& params,
                             const Eigen::MatrixXd& points)
    : d_(config.input_dim), n_(points.cols()), layout_(config) {
  config.validate();
  if (points.rows() != d_) {
    throw ConfigError("JetBatch: point dimension does not match network input_dim");
  }
  if (params.entries.size() != layout_.total_size()) {
    throw ConfigError("JetBatch: parameter vector length does not match config layout");
  }

  const int layers = layout_.layer_count();
  weights_.reserve(layers);
  biases_.reserve(layers);
  for (int l = 0; l < layers; ++l) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> w(
        params.entries.data() + layout_.weight_offset(l), layout_.fan_out(l), layout_.fan_in(l));
    Eigen::Map<const Eigen::VectorXd> b(params.entries.data() + layout_.bias_offset(l),
                                        layout_.fan_out(l));
    weights_.push_back(w.template cast<Scalar>());
    biases_.push_back(b.template cast<Scalar>());
  }

  const Eigen::Index cn = n_ * (1 + 2 * d_);
  seeds_ = Mat::Zero(d_, cn);
  seeds_.leftCols(n_) = points.cast<Scalar>();
  for (int i = 0; i < d_; ++i) {
    seeds_.row(i).segment(n_ * (1 + i), n_).setConstant(Scalar(1));  // grad seed e_i
  }
  // hessian seeds stay zero

  out_.resize(layers);
  t_.resize(layers);
  s_.resize(layers);
  gz_.resize(layers);
  hz_.resize(layers);

  const Mat* in = &seeds_;
  for (int l = 0; l < layers; ++l) {
    Mat z(layout_.fan_out(l), cn);
    if (n_ > 0) {
      z.noalias() = weights_[l] * (*in);
      z.leftCols(n_).colwise() += biases_[l];
    }
    if (l < layers - 1) {
      t_[l] = z.leftCols(n_).array().tanh().matrix();
      s_[l] = (Scalar(1) - t_[l].array().square()).matrix();
      gz_[l] = z.middleCols(n_, n_ * d_);
      hz_[l] = z.rightCols(n_ * d_);
      // hessian channels first: they read the pre-activation gradients
      for (int i = 0; i < d_; ++i) {
        auto g = gz_[l].middleCols(n_ * i, n_).array();
        auto h = hz_[l].middleCols(n_ * i, n_).array();
        z.middleCols(n_ * (1 + d_ + i), n_) =
            (Scalar(-2) * t_[l].array() * s_[l].array() * g.square() + s_[l].array() * h).matrix();
        z.middleCols(n_ * (1 + i), n_) = (s_[l].array() * g).matrix();
      }
      z.leftCols(n_) = t_[l];
    }
    out_[l] = std::move(z);
    in = &out_[l];
  }
}

template <typename Scalar>
Eigen::RowVectorXd JetBatchT<Scalar>::values() const {
  return out_.back().leftCols(n_).template cast<double>().row(0);
}

template <typename Scalar>
Eigen::MatrixXd JetBatchT<Scalar>::input_grads() const {
  Eigen::MatrixXd g(d_, n_);
  for (int i = 0; i < d_; ++i) {
    g.row(i) = out_.back().middleCols(n_ * (1 + i), n_).template cast<double>().row(0);
  }
  return g;
}

template <typename Scalar>
Eigen::MatrixXd JetBatchT<Scalar>::input_diag_hess() const {
  Eigen::MatrixXd h(d_, n_);
  for (int i = 0; i < d_; ++i) {
    h.row(i) = out_.back().middleCols(n_ * (1 + d_ + i), n_).template cast<double>().row(0);
  }
  return h;
}

template <typename Scalar>
GradientVector JetBatchT<Scalar>::backprop(const Eigen::RowVectorXd& value_seed,
                                           const Eigen::MatrixXd& grad_seed,
                                           const Eigen::MatrixXd& hess_seed) const {
  if (value_seed.size() != n_ || grad_seed.cols() != n_ || hess_seed.cols() != n_ ||
      grad_seed.rows() != d_ || hess_seed.rows() != d_) {
    throw ConfigError("backprop: seed shape mismatch");
  }
  const int layers = layout_.layer_count();
  const Eigen::Index cn = n_ * (1 + 2 * d_);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(layout_.total_size());
  if (n_ == 0) return grad;

  Mat zbar(1, cn);
  zbar.leftCols(n_) = value_seed.cast<Scalar>();
  for (int i = 0; i < d_; ++i) {
    zbar.middleCols(n_ * (1 + i), n_) = grad_seed.row(i).cast<Scalar>();
    zbar.middleCols(n_ * (1 + d_ + i), n_) = hess_seed.row(i).cast<Scalar>();
  }

  for (int l = layers - 1; l >= 0; --l) {
    if (l < layers - 1) {
      // undo tanh: zbar holds adjoints of (t, s*g, s'*g^2 + s*h); convert to
      // adjoints of the pre-activation channels (z, g, h).
      const auto t = t_[l].array();
      const auto s = s_[l].array();
      Mat sp = (Scalar(-2) * t * s).matrix();          // sigma''
      Mat spp = (Scalar(2) * s * (Scalar(3) * t.square() - Scalar(1))).matrix();  // sigma'''
      Mat vbar = (zbar.leftCols(n_).array() * s).matrix();
      for (int i = 0; i < d_; ++i) {
        const auto g = gz_[l].middleCols(n_ * i, n_).array();
        const auto h = hz_[l].middleCols(n_ * i, n_).array();
        const auto gbar_out = zbar.middleCols(n_ * (1 + i), n_).array();
        const auto hbar_out = zbar.middleCols(n_ * (1 + d_ + i), n_).array();
        vbar.array() += gbar_out * sp.array() * g +
                        hbar_out * (spp.array() * g.square() + sp.array() * h);
        Mat gbar_in = (gbar_out * s + hbar_out * Scalar(2) * sp.array() * g).matrix();
        Mat hbar_in = (hbar_out * s).matrix();
        zbar.middleCols(n_ * (1 + i), n_) = gbar_in;
        zbar.middleCols(n_ * (1 + d_ + i), n_) = hbar_in;
      }
      zbar.leftCols(n_) = vbar;
    }
    const Mat& ain = (l == 0) ? seeds_ : out_[l - 1];
    Mat wbar(layout_.fan_out(l), layout_.fan_in(l));
    wbar.noalias() = zbar * ain.transpose();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bbar = zbar.leftCols(n_).rowwise().sum();
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        grad.data() + layout_.weight_offset(l), layout_.fan_out(l), layout_.fan_in(l)) =
        wbar.template cast<double>();
    Eigen::Map<Eigen::VectorXd>(grad.data() + layout_.bias_offset(l), layout_.fan_out(l)) =
        bbar.template cast<double>();
    if (l > 0) {
      Mat prev(layout_.fan_in(l), cn);
      prev.noalias() = weights_[l].transpose() * zbar;
      zbar = std::move(prev);
    }
  }
  return grad;
}

template class JetBatchT<double>;
template class JetBatchT<float>;

JetValue forward_jet(const ParameterVector& params, const NetworkConfig& config,
                     const Eigen::VectorXd& x) {
  if (x.size() != config.input_dim) {
    throw ConfigError("forward_jet: point dimension does not match network input_dim");
  }
  JetBatch batch(config, params, x);
  JetValue jet;
  jet.value = batch.values()(0);
  jet.input_grad = batch.input_grads().col(0);
  jet.input_diag_hess = batch.input_diag_hess().col(0);
  if (!std::isfinite(jet.value) || !jet.input_grad.allFinite() ||
      !jet.input_diag_hess.allFinite()) {
    throw NumericError("forward_jet: non-finite output", 0);
  }
  return jet;
}

double forward_value(const ParameterVector& params, const NetworkConfig& config,
                     const Eigen::VectorXd& x) {
  return forward_jet(params, config, x).value;
}

Eigen::VectorXd predict_values(const ParameterVector& params, const NetworkConfig& config,
                               const Eigen::MatrixXd& points) {
  config.validate();
  const NetworkLayout layout(config);
  if (points.rows() != config.input_dim) {
    throw ConfigError("predict_values: point dimension does not match network input_dim");
  }
  if (params.entries.size() != layout.total_size()) {
    throw ConfigError("predict_values: parameter vector length does not match config layout");
  }
  Eigen::MatrixXd a = points;
  for (int l = 0; l < layout.layer_count(); ++l) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> w(
        params.entries.data() + layout.weight_offset(l), layout.fan_out(l), layout.fan_in(l));
    Eigen::Map<const Eigen::VectorXd> b(params.entries.data() + layout.bias_offset(l),
                                        layout.fan_out(l));
    Eigen::MatrixXd z = (w * a).colwise() + b;
    if (l < layout.layer_count() - 1) z = z.array().tanh();
    a = std::move(z);
  }
  return a.row(0);
}

std::pair<double, GradientVector> objective_gradient(const ParameterVector& params,
                                                     const NetworkConfig& config,
                                                     const BatchObjective& objective) {
  const Eigen::Index n = objective.points.cols();
  if (n == 0) {
    return {0.0, Eigen::VectorXd::Zero(config.parameter_count())};
  }
  JetBatch batch(config, params, objective.points);
  const Eigen::RowVectorXd values = batch.values();
  const Eigen::MatrixXd grads = batch.input_grads();
  const Eigen::MatrixXd hess = batch.input_diag_hess();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(values(i))) {
      throw NumericError("objective_gradient: non-finite network output", i);
    }
  }
  Eigen::RowVectorXd vseed = Eigen::RowVectorXd::Zero(n);
  Eigen::MatrixXd gseed = Eigen::MatrixXd::Zero(config.input_dim, n);
  Eigen::MatrixXd hseed = Eigen::MatrixXd::Zero(config.input_dim, n);
  const double loss = objective.assemble(values, grads, hess, vseed, gseed, hseed);
  if (!std::isfinite(loss)) {
    throw NumericError("objective_gradient: non-finite loss");
  }
  GradientVector grad = batch.backprop(vseed, gseed, hseed);
  if (!grad.allFinite()) {
    throw NumericError("objective_gradient: non-finite parameter gradient");
  }
  return {loss, std::move(grad)};
}

GradientVector parameter_gradient(const ParameterVector& params, const NetworkConfig& config,
                                  const BatchObjective& objective) {
  return objective_gradient(params, config, objective).second;
}

}  // namespace aeh
