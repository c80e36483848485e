// Microbenchmarks for the training hot path: the batched jet forward pass,
// the backprop that produces parameter gradients, and the optimizer update.

#include <benchmark/benchmark.h>

#include <random>

#include "aeh/losses.hpp"
#include "aeh/problems.hpp"

using namespace aeh;

namespace {

NetworkConfig default_net(int input_dim) {
  NetworkConfig cfg;
  cfg.input_dim = input_dim;
  return cfg;  // 4 x 50
}

Eigen::MatrixXd interior_points(const ProblemSpec& problem, int n) {
  std::mt19937_64 rng(1);
  auto u01 = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
  Eigen::MatrixXd pts(problem.input_dim(), n);
  for (int c = 0; c < n; ++c) {
    for (int j = 0; j < problem.input_dim(); ++j) {
      pts(j, c) = problem.domain[j].first +
                  (problem.domain[j].second - problem.domain[j].first) * u01();
    }
  }
  return pts;
}

void bench_jet_forward(benchmark::State& state) {
  const ProblemSpec problem = build_problem(ProblemName::HeatSteep);
  const NetworkConfig cfg = default_net(2);
  const ParameterVector params = init_parameters(cfg, 1);
  const Eigen::MatrixXd pts = interior_points(problem, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    JetBatch batch(cfg, params, pts);
    benchmark::DoNotOptimize(batch.values());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bench_loss_gradient(benchmark::State& state) {
  const ProblemSpec problem = build_problem(ProblemName::HeatSteep);
  const NetworkConfig cfg = default_net(2);
  const ParameterVector params = init_parameters(cfg, 1);
  const int n = static_cast<int>(state.range(0));
  SampleSet samples = sample_training_set(
      problem, {n, std::max(n / 10, 1), std::max(n / 10, 1)}, 1);
  SampleEvaluator eval(problem, cfg, samples);
  const SampleCounts c = eval.counts();
  const Eigen::VectorXd cr = Eigen::VectorXd::Constant(c.n_residual, 1.0 / c.n_residual);
  const Eigen::VectorXd ci = Eigen::VectorXd::Constant(c.n_initial, 1.0 / c.n_initial);
  const Eigen::VectorXd cb = Eigen::VectorXd::Constant(c.n_boundary, 1.0 / c.n_boundary);
  for (auto _ : state) {
    eval.forward(params);
    benchmark::DoNotOptimize(eval.gradient(cr, ci, cb));
  }
  state.SetItemsProcessed(state.iterations() * samples.total());
}

void bench_adam_step(benchmark::State& state) {
  const NetworkConfig cfg = default_net(2);
  ParameterVector params = init_parameters(cfg, 1);
  AdamState adam = AdamState::zeros(cfg.parameter_count());
  const GradientVector grad = init_parameters(cfg, 2).entries;
  const OptimizerConfig opt;
  for (auto _ : state) {
    adam_step(adam, params, grad, opt);
    benchmark::DoNotOptimize(params.entries.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.parameter_count());
}

}  // namespace

BENCHMARK(bench_jet_forward)->Arg(256)->Arg(2501)->Arg(12800);
BENCHMARK(bench_loss_gradient)->Arg(256)->Arg(2501);
BENCHMARK(bench_adam_step);

BENCHMARK_MAIN();
