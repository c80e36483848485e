#include <doctest.h>

#include <cmath>

#include "aeh/losses.hpp"
#include "aeh/network.hpp"
#include "test_support.hpp"

using namespace aeh;

namespace {

std::vector<PerSampleLoss> residual_losses(const std::vector<double>& values) {
  std::vector<PerSampleLoss> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({SampleGroup::Residual, static_cast<int>(i), values[i]});
  }
  return out;
}

NetworkConfig small_net(int input_dim) {
  NetworkConfig cfg;
  cfg.input_dim = input_dim;
  cfg.hidden_layers = 2;
  cfg.width = 6;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("losses");

TEST_CASE("aggregate: group mean with explicit denominators") {
  const std::vector<PerSampleLoss> losses = residual_losses({1.0, 3.0});
  SampleCounts counts{2, 0, 0};
  LossBreakdown b = aggregate_loss(losses, counts);
  CHECK(b.l_residual == 2.0);
  CHECK(b.l_initial == 0.0);
  CHECK(b.l_boundary == 0.0);
  CHECK(b.total == 2.0);

  // the same selected losses against the full-set denominator
  counts.n_residual = 4;
  CHECK(aggregate_loss(losses, counts).l_residual == 1.0);
}

TEST_CASE("aggregate: all three groups sum into the total") {
  std::vector<PerSampleLoss> losses = residual_losses({2.0, 4.0});
  losses.push_back({SampleGroup::Initial, 0, 6.0});
  losses.push_back({SampleGroup::Boundary, 0, 1.0});
  losses.push_back({SampleGroup::Boundary, 1, 3.0});
  const LossBreakdown b = aggregate_loss(losses, {2, 1, 2});
  CHECK(b.l_residual == 3.0);
  CHECK(b.l_initial == 6.0);
  CHECK(b.l_boundary == 2.0);
  CHECK(b.total == 11.0);
}

TEST_CASE("aggregate: losses for a zero-count group are rejected") {
  std::vector<PerSampleLoss> losses;
  losses.push_back({SampleGroup::Initial, 0, 1.0});
  CHECK_THROWS_AS(aggregate_loss(losses, {0, 0, 0}), ConfigError);
}

TEST_CASE("masks") {
  CHECK(apply_mask(MaskKind::Identity, 3.0) == 3.0);
  CHECK(mask_derivative(MaskKind::Identity, 3.0) == 1.0);
  CHECK(apply_mask(MaskKind::Square, 3.0) == 9.0);
  CHECK(mask_derivative(MaskKind::Square, 3.0) == 6.0);
}

TEST_CASE("weighted objective examples") {
  const std::vector<PerSampleLoss> losses = residual_losses({4.0, 1.0});
  AdaptiveWeights w = AdaptiveWeights::ones({2, 0, 0});
  w.residual << 1.0, 2.0;
  CHECK(weighted_objective(losses, w, {2, 0, 0}, MaskKind::Identity) == 3.0);
  CHECK(weighted_objective(losses, w, {2, 0, 0}, MaskKind::Square) ==
        doctest::Approx((4.0 + 4.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("weighted objective with unit weights equals the plain aggregate") {
  std::vector<PerSampleLoss> losses = residual_losses({0.7, 0.1, 2.3});
  losses.push_back({SampleGroup::Boundary, 0, 0.4});
  const SampleCounts counts{3, 0, 1};
  const AdaptiveWeights w = AdaptiveWeights::ones(counts);
  CHECK(weighted_objective(losses, w, counts, MaskKind::Identity) ==
        aggregate_loss(losses, counts).total);
  CHECK(weighted_objective(losses, w, counts, MaskKind::Square) ==
        aggregate_loss(losses, counts).total);
}

TEST_CASE("weight gradient example and finite-difference check") {
  const std::vector<PerSampleLoss> losses = residual_losses({4.0, 1.0});
  const SampleCounts counts{2, 0, 0};
  AdaptiveWeights w = AdaptiveWeights::ones(counts);
  const AdaptiveWeights g = weighted_objective_weight_grad(losses, w, counts, MaskKind::Identity);
  CHECK(g.residual[0] == 2.0);
  CHECK(g.residual[1] == 0.5);

  for (MaskKind mask : {MaskKind::Identity, MaskKind::Square}) {
    AdaptiveWeights base = AdaptiveWeights::ones(counts);
    base.residual << 1.3, 2.7;
    const AdaptiveWeights grad = weighted_objective_weight_grad(losses, base, counts, mask);
    for (int i = 0; i < 2; ++i) {
      const double h = 1e-6;
      AdaptiveWeights up = base, down = base;
      up.residual[i] += h;
      down.residual[i] -= h;
      const double fd = (weighted_objective(losses, up, counts, mask) -
                         weighted_objective(losses, down, counts, mask)) /
                        (2.0 * h);
      CHECK(support::rel_err(grad.residual[i], fd) < 1e-9);
    }
  }
}

TEST_CASE("outlier statistics and anomaly set") {
  const std::vector<PerSampleLoss> losses = residual_losses({1.0, 1.0, 1.0, 9.0});
  {
    const auto [stats, anomalies] = outlier_stats(losses, 3.0);
    CHECK(stats.mean == 3.0);
    CHECK(stats.std == 4.0);  // unbiased: sqrt((3*4 + 36)/3) = 4
    CHECK(anomalies.empty());
  }
  {
    const auto [stats, anomalies] = outlier_stats(losses, 1.0);
    CHECK(stats.threshold_k == 1.0);
    REQUIRE(anomalies.size() == 1);
    CHECK(anomalies[0] == 3);
  }
  // constant losses: std 0, nothing strictly above the mean
  const auto [cs, ca] = outlier_stats(residual_losses({2.0, 2.0, 2.0}), 3.0);
  CHECK(cs.std == 0.0);
  CHECK(ca.empty());

  CHECK_THROWS_AS(outlier_stats(residual_losses({1.0}), 3.0), ConfigError);

  // the anomaly set shrinks monotonically as k grows
  const std::vector<PerSampleLoss> mixed = residual_losses({0.1, 0.2, 0.5, 1.0, 4.0, 9.0});
  std::size_t prev = mixed.size();
  for (double k : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const auto [s, a] = outlier_stats(mixed, k);
    CHECK(a.size() <= prev);
    for (int idx : a) CHECK(mixed[static_cast<std::size_t>(idx)].value > s.mean + k * s.std);
    prev = a.size();
  }
}

TEST_CASE("relative l2 error") {
  Eigen::VectorXd exact(3);
  exact << 1.0, -2.0, 3.0;
  CHECK(relative_l2(exact, exact) == 0.0);
  CHECK(relative_l2(1.1 * exact, exact) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(relative_l2(Eigen::VectorXd::Zero(3), exact) == doctest::Approx(1.0).epsilon(1e-15));
  // invariant under joint scaling
  Eigen::VectorXd pred(3);
  pred << 1.2, -1.7, 3.3;
  CHECK(std::abs(relative_l2(pred, exact) - relative_l2(1e6 * pred, 1e6 * exact)) < 1e-14);
  CHECK_THROWS_AS(relative_l2(Eigen::VectorXd::Zero(2), exact), ConfigError);
  CHECK_THROWS_AS(relative_l2(exact, Eigen::VectorXd::Zero(3)), NumericError);
}

TEST_CASE("per-sample losses recompose from pointwise jets") {
  const ProblemSpec problem = build_problem(ProblemName::HeatSteep);
  const NetworkConfig cfg = small_net(2);
  const ParameterVector params = init_parameters(cfg, 19);
  const SampleSet samples = sample_training_set(problem, {16, 4, 4}, 3);
  const std::vector<PerSampleLoss> losses = per_sample_losses(params, cfg, samples, problem);
  REQUIRE(losses.size() == 24);

  std::size_t pos = 0;
  for (const SamplePoint& pt : samples.residual) {
    const JetValue jet = forward_jet(params, cfg, pt.coords);
    const double r = pde_residual(problem, jet, pt.coords);
    CHECK(losses[pos].group == SampleGroup::Residual);
    CHECK(std::abs(losses[pos].value - r * r) < 1e-14 * std::max(1.0, r * r));
    ++pos;
  }
  for (const SamplePoint& pt : samples.initial) {
    const double v = initial_residual(problem, forward_value(params, cfg, pt.coords), pt.coords);
    CHECK(losses[pos].group == SampleGroup::Initial);
    CHECK(std::abs(losses[pos].value - v * v) < 1e-10 * std::max(1.0, v * v));
    ++pos;
  }
  for (const SamplePoint& pt : samples.boundary) {
    const double v = boundary_residual(problem, forward_value(params, cfg, pt.coords), pt);
    CHECK(losses[pos].group == SampleGroup::Boundary);
    CHECK(std::abs(losses[pos].value - v * v) < 1e-14 * std::max(1.0, v * v));
    ++pos;
  }
}

TEST_CASE("zero network has zero boundary loss on homogeneous boundaries") {
  const ProblemSpec problem = build_problem(ProblemName::HeatSteep);
  const NetworkConfig cfg = small_net(2);
  const ParameterVector params = ParameterVector::zeros(cfg);
  const SampleSet samples = sample_training_set(problem, {16, 4, 8}, 1);
  for (const PerSampleLoss& l : per_sample_losses(params, cfg, samples, problem)) {
    if (l.group == SampleGroup::Boundary) CHECK(l.value == 0.0);
  }
}

TEST_CASE("evaluator forward agrees with the pointwise path") {
  for (ProblemName name : {ProblemName::HeatSteep, ProblemName::Helmholtz,
                           ProblemName::ConvectionDominated, ProblemName::AllenCahn,
                           ProblemName::SineGordon, ProblemName::Multiscale4d}) {
    const ProblemSpec problem = build_problem(name);
    const NetworkConfig cfg = small_net(problem.input_dim());
    const ParameterVector params = init_parameters(cfg, 5);
    SampleCounts counts{25, 0, 8};
    if (problem.has_time) counts.n_initial = 4;
    const SampleSet samples = sample_training_set(problem, counts, 2);
    SampleEvaluator eval(problem, cfg, samples);
    const std::vector<PerSampleLoss>& got = eval.forward(params);
    const std::vector<PerSampleLoss> want = per_sample_losses(params, cfg, samples, problem);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].group == want[i].group);
      CHECK(got[i].index == want[i].index);
      CHECK(std::abs(got[i].value - want[i].value) <
            1e-12 * std::max(1.0, std::abs(want[i].value)));
    }
  }
}

TEST_CASE("evaluator gradient matches finite differences of the weighted sum") {
  const ProblemSpec problem = build_problem(ProblemName::HeatSteep);
  const NetworkConfig cfg = small_net(2);
  const ParameterVector params = init_parameters(cfg, 23);
  const SampleSet samples = sample_training_set(problem, {9, 3, 4}, 4);
  SampleEvaluator eval(problem, cfg, samples);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd cr(9), ci(3), cb(4);
  for (int i = 0; i < 9; ++i) cr[i] = u(rng);
  for (int i = 0; i < 3; ++i) ci[i] = u(rng);
  for (int i = 0; i < 4; ++i) cb[i] = u(rng);
  cr[2] = 0.0;  // excluded sample must not contribute

  eval.forward(params);
  const GradientVector grad = eval.gradient(cr, ci, cb);

  auto objective = [&](const ParameterVector& p) {
    const std::vector<PerSampleLoss> losses = per_sample_losses(p, cfg, samples, problem);
    double total = 0.0;
    std::size_t pos = 0;
    for (int i = 0; i < 9; ++i) total += cr[i] * losses[pos++].value;
    for (int i = 0; i < 3; ++i) total += ci[i] * losses[pos++].value;
    for (int i = 0; i < 4; ++i) total += cb[i] * losses[pos++].value;
    return total;
  };
  const Eigen::VectorXd fd = support::fd_param_gradient(objective, params, 1e-5);
  // the steep source makes the objective huge, so finite-difference noise is
  // measured against the gradient magnitude rather than per component
  const double scale = std::max(fd.cwiseAbs().maxCoeff(), 1.0);
  for (Eigen::Index i = 0; i < grad.size(); ++i) {
    CHECK(std::abs(grad[i] - fd[i]) / scale < 5e-7);
  }
}

TEST_CASE("evaluator rejects gradient before forward and bad coefficient sizes") {
  const ProblemSpec problem = build_problem(ProblemName::Helmholtz);
  const NetworkConfig cfg = small_net(2);
  const SampleSet samples = sample_training_set(problem, {9, 0, 4}, 1);
  SampleEvaluator eval(problem, cfg, samples);
  CHECK_THROWS_AS(eval.gradient(Eigen::VectorXd::Ones(9), Eigen::VectorXd(0),
                                Eigen::VectorXd::Ones(4)),
                  ConfigError);
  eval.forward(init_parameters(cfg, 1));
  CHECK_THROWS_AS(eval.gradient(Eigen::VectorXd::Ones(5), Eigen::VectorXd(0),
                                Eigen::VectorXd::Ones(4)),
                  ConfigError);
}

TEST_SUITE_END();
