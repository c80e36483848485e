#include "aeh/network.hpp"

#include <cmath>
#include <random>

namespace aeh {

void NetworkConfig::validate() const {
  if (input_dim < 1) throw ConfigError("network.input_dim must be >= 1");
  if (hidden_layers < 0) throw ConfigError("network.hidden_layers must be >= 0");
  if (width < 1) throw ConfigError("network.width must be >= 1");
}

std::int64_t NetworkConfig::parameter_count() const {
  validate();
  return NetworkLayout(*this).total_size();
}

NetworkLayout::NetworkLayout(const NetworkConfig& config) {
  const int layers = config.hidden_layers + 1;
  fan_in_.resize(layers);
  fan_out_.resize(layers);
  weight_off_.resize(layers);
  bias_off_.resize(layers);
  std::int64_t off = 0;
  for (int l = 0; l < layers; ++l) {
    fan_in_[l] = (l == 0) ? config.input_dim : config.width;
    fan_out_[l] = (l == layers - 1) ? 1 : config.width;
    weight_off_[l] = off;
    off += static_cast<std::int64_t>(fan_in_[l]) * fan_out_[l];
    bias_off_[l] = off;
    off += fan_out_[l];
  }
  total_ = off;
}

ParameterVector ParameterVector::zeros(const NetworkConfig& config) {
  return ParameterVector{Eigen::VectorXd::Zero(config.parameter_count())};
}

namespace {

// Deterministic standard normal sampler, independent of the standard
// library's distribution internals so streams are stable across platforms.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform_open() {
    // 53-bit mantissa, shifted into (0, 1).
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

ParameterVector init_parameters(const NetworkConfig& config, std::uint64_t seed) {
  config.validate();
  const NetworkLayout layout(config);
  ParameterVector params{Eigen::VectorXd::Zero(layout.total_size())};
  NormalSampler normal(seed);
  for (int l = 0; l < layout.layer_count(); ++l) {
    const double stddev = std::sqrt(2.0 / layout.fan_in(l));
    const std::int64_t n = static_cast<std::int64_t>(layout.fan_in(l)) * layout.fan_out(l);
    for (std::int64_t i = 0; i < n; ++i) {
      params.entries[layout.weight_offset(l) + i] = stddev * normal();
    }
    // biases stay zero
  }
  return params;
}

AdamState AdamState::zeros(std::int64_t n) {
  return AdamState{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0};
}

void OptimizerConfig::validate() const {
  if (lr < 0.0) throw ConfigError("optimizer.lr must be >= 0");
  if (beta1 < 0.0 || beta1 >= 1.0) throw ConfigError("optimizer.beta1 must be in [0, 1)");
  if (beta2 < 0.0 || beta2 >= 1.0) throw ConfigError("optimizer.beta2 must be in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("optimizer.eps must be > 0");
  if (ascent_lr < 0.0) throw ConfigError("optimizer.ascent_lr must be >= 0");
}

void adam_step(AdamState& state, ParameterVector& params, const GradientVector& grad,
               const OptimizerConfig& opt) {
  if (state.m.size() != params.entries.size() || grad.size() != params.entries.size()) {
    throw ConfigError("adam_step: state/params/grad length mismatch");
  }
  if (!grad.allFinite()) {
    std::ptrdiff_t bad = -1;
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      if (!std::isfinite(grad[i])) { bad = i; break; }
    }
    throw NumericError("adam_step: non-finite gradient entry", bad);
  }
  state.step_count += 1;
  state.m = opt.beta1 * state.m + (1.0 - opt.beta1) * grad;
  state.v = opt.beta2 * state.v + (1.0 - opt.beta2) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(opt.beta1, static_cast<double>(state.step_count));
  const double c2 = 1.0 - std::pow(opt.beta2, static_cast<double>(state.step_count));
  params.entries -=
      opt.lr * (state.m / c1).cwiseQuotient(((state.v / c2).cwiseSqrt().array() + opt.eps).matrix());
}

void ascent_step(Eigen::VectorXd& weights, const Eigen::VectorXd& weight_grad, double ascent_lr) {
  if (weights.size() != weight_grad.size()) {
    throw ConfigError("ascent_step: weight/gradient length mismatch");
  }
  if (!weight_grad.allFinite()) {
    throw NumericError("ascent_step: non-finite weight gradient");
  }
  weights += ascent_lr * weight_grad;
}

}  // namespace aeh
