#include <doctest.h>

#include <cmath>
#include <random>

#include "aeh/network.hpp"
#include "test_support.hpp"

using namespace aeh;

TEST_SUITE_BEGIN("network");

TEST_CASE("parameter count matches the closed-form formula") {
  for (int hidden : {0, 1, 2, 3, 4}) {
    for (int width : {8, 16, 50}) {
      for (int input : {1, 2, 4, 5}) {
        NetworkConfig cfg;
        cfg.input_dim = input;
        cfg.hidden_layers = hidden;
        cfg.width = width;
        std::int64_t expect = 0;
        int fan_in = input;
        for (int l = 0; l < hidden; ++l) {
          expect += static_cast<std::int64_t>(fan_in) * width + width;
          fan_in = width;
        }
        expect += fan_in + 1;  // scalar output layer
        CHECK(cfg.parameter_count() == expect);
      }
    }
  }
}

TEST_CASE("2-input 4x50 network has 7851 parameters") {
  NetworkConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden_layers = 4;
  cfg.width = 50;
  CHECK(cfg.parameter_count() == 7851);
  CHECK(cfg.parameter_count() == (2 * 50 + 50) + 3 * (50 * 50 + 50) + (50 + 1));
}

TEST_CASE("initialization is deterministic per seed, biases are zero") {
  NetworkConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden_layers = 2;
  cfg.width = 16;
  const ParameterVector a = init_parameters(cfg, 7);
  const ParameterVector b = init_parameters(cfg, 7);
  const ParameterVector c = init_parameters(cfg, 8);
  CHECK(a.entries == b.entries);
  CHECK(a.entries != c.entries);
  const NetworkLayout layout(cfg);
  for (int l = 0; l < layout.layer_count(); ++l) {
    for (int o = 0; o < layout.fan_out(l); ++o) {
      CHECK(a.entries[layout.bias_offset(l) + o] == 0.0);
    }
  }
}

TEST_CASE("first-layer weight stddev approximates sqrt(2/fan_in)") {
  NetworkConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden_layers = 1;
  cfg.width = 500;
  double sum = 0.0, sumsq = 0.0;
  std::int64_t n = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ParameterVector p = init_parameters(cfg, seed);
    const NetworkLayout layout(cfg);
    const std::int64_t first = static_cast<std::int64_t>(layout.fan_in(0)) * layout.fan_out(0);
    for (std::int64_t i = 0; i < first; ++i) {
      const double w = p.entries[layout.weight_offset(0) + i];
      sum += w;
      sumsq += w * w;
      ++n;
    }
  }
  const double mean = sum / static_cast<double>(n);
  const double stddev = std::sqrt(sumsq / static_cast<double>(n) - mean * mean);
  CHECK(n == 100000);
  CHECK(std::abs(stddev - 1.0) < 0.02);  // sqrt(2/2) = 1
  CHECK(std::abs(mean) < 0.02);
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  ParameterVector params{Eigen::VectorXd::Constant(3, 1.5)};
  AdamState state = AdamState::zeros(3);
  adam_step(state, params, Eigen::VectorXd::Zero(3), OptimizerConfig{});
  CHECK(params.entries == Eigen::VectorXd::Constant(3, 1.5));
  CHECK(state.step_count == 1);
}

TEST_CASE("adam: bias-corrected first step") {
  ParameterVector params{Eigen::VectorXd::Zero(1)};
  AdamState state = AdamState::zeros(1);
  OptimizerConfig opt;  // lr 1e-3
  adam_step(state, params, Eigen::VectorXd::Ones(1), opt);
  const double expect = -1e-3 / (1.0 + 1e-8);
  CHECK(params.entries[0] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("adam matches a textbook implementation over 100 steps") {
  const int n = 5;
  ParameterVector params{Eigen::VectorXd::LinSpaced(n, -2.0, 2.0)};
  std::vector<double> ref(params.entries.data(), params.entries.data() + n);
  AdamState state = AdamState::zeros(n);
  support::ReferenceAdam ref_adam(n);
  OptimizerConfig opt;
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 0.1);
  for (int step = 0; step < 100; ++step) {
    // gradient of the quadratic bowl 0.5*|theta|^2, plus noise
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = params.entries[i] + noise(rng);
    std::vector<double> gref(g.data(), g.data() + n);
    adam_step(state, params, g, opt);
    ref_adam.update(ref, gref, opt.lr, opt.beta1, opt.beta2, opt.eps);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(params.entries[i] - ref[i]) < 1e-12);
    }
  }
}

TEST_CASE("adam with lr=0 is the identity on params") {
  ParameterVector params{Eigen::VectorXd::Constant(4, 0.7)};
  const Eigen::VectorXd before = params.entries;
  AdamState state = AdamState::zeros(4);
  OptimizerConfig opt;
  opt.lr = 0.0;
  adam_step(state, params, Eigen::VectorXd::Constant(4, 3.0), opt);
  CHECK(params.entries == before);
}

TEST_CASE("adam rejects non-finite gradients with the offending index") {
  ParameterVector params{Eigen::VectorXd::Zero(3)};
  AdamState state = AdamState::zeros(3);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
  g[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(adam_step(state, params, g, OptimizerConfig{}), NumericError);
  try {
    adam_step(state, params, g, OptimizerConfig{});
  } catch (const NumericError& e) {
    CHECK(e.sample_index() == 1);
  }
}

TEST_CASE("ascent: losses (4,1) with lr 0.1 push unit weights to (1.2, 1.05)") {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
  Eigen::VectorXd grad(2);
  grad << 4.0 / 2.0, 1.0 / 2.0;  // dL/dw_i = loss_i / N_R
  ascent_step(w, grad, 0.1);
  CHECK(w[0] == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(1.05).epsilon(1e-15));
}

TEST_CASE("ascent matches the closed form w + lr*loss/N elementwise") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const int n = 17;
  Eigen::VectorXd w(n), losses(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 1.0 + u(rng);
    losses[i] = u(rng);
  }
  const double lr = 0.05;
  Eigen::VectorXd updated = w;
  ascent_step(updated, losses / n, lr);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(updated[i] - (w[i] + lr * losses[i] / n)) < 1e-15);
    CHECK(updated[i] >= w[i]);  // nonnegative losses never decrease weights
  }
}

TEST_CASE("ascent: zero gradient leaves weights unchanged") {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(3);
  ascent_step(w, Eigen::VectorXd::Zero(3), 0.1);
  CHECK(w == Eigen::VectorXd::Ones(3));
}

TEST_CASE("configuration validation") {
  NetworkConfig bad;
  bad.width = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = NetworkConfig{};
  bad.input_dim = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  OptimizerConfig opt;
  opt.beta1 = 1.0;
  CHECK_THROWS_AS(opt.validate(), ConfigError);
  opt = OptimizerConfig{};
  opt.eps = 0.0;
  CHECK_THROWS_AS(opt.validate(), ConfigError);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(ascent_step(w, Eigen::VectorXd::Ones(3), 0.1), ConfigError);
}

TEST_SUITE_END();
