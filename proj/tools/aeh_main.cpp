#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "aeh/harness.hpp"

namespace {

void print_summary(const aeh::ExperimentSummary& s) {
  auto g = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  std::cout << "final_rel_l2_mean = " << (s.has_rel_l2 ? g(s.final_rel_l2_mean) : "nan") << "\n";
  std::cout << "final_rel_l2_per_seed =";
  for (const aeh::SeedResult& r : s.per_seed) {
    std::cout << " " << r.seed << ":"
              << (r.aborted ? "aborted" : (r.has_rel_l2 ? g(r.final_rel_l2) : "nan"));
  }
  std::cout << "\n";
  std::cout << "param_count = " << s.param_count << "\n";
  std::cout << "flops_per_forward_est = " << s.flops_per_forward_est << "\n";
  std::cout << "time_per_epoch_s_mean = " << g(s.time_per_epoch_s_mean) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating easy-hard PINN training toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, grid_spec, checkpoint_path;
  long long seed_override = -1;
  std::vector<std::string> compare_configs;

  CLI::App* train_cmd = app.add_subcommand("train", "Train one configuration");
  train_cmd->add_option("--config", config_path, "Config file")->required();
  train_cmd->add_option("--seed", seed_override, "Run only this seed");
  train_cmd->add_option("--out", out_dir, "Output directory override");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Cross-product ablation sweep");
  sweep_cmd->add_option("--config", config_path, "Base config file")->required();
  sweep_cmd->add_option("--grid", grid_spec, "Grid, e.g. \"strategy.s1=1,10;strategy.s2=1,5\"")
      ->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory");

  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Evaluate a checkpoint");
  eval_cmd->add_option("--checkpoint", checkpoint_path, "Checkpoint file")->required();

  CLI::App* compare_cmd = app.add_subcommand("compare", "Run and compare several configs");
  compare_cmd->add_option("--out", out_dir, "Output directory")->required();
  compare_cmd->add_option("configs", compare_configs, "Config files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (train_cmd->parsed()) {
      aeh::RunConfig config = aeh::load_config(config_path);
      if (seed_override >= 0) {
        config.seeds = {static_cast<std::uint64_t>(seed_override)};
      }
      if (!out_dir.empty()) config.out_dir = out_dir;
      const aeh::ExperimentSummary summary = aeh::run_experiment(config);
      print_summary(summary);
      if (!summary.complete) {
        std::cerr << "error: at least one seed aborted on a numeric failure\n";
        return 2;
      }
    } else if (sweep_cmd->parsed()) {
      aeh::RunConfig config = aeh::load_config(config_path);
      if (out_dir.empty()) out_dir = config.out_dir;
      const aeh::SweepResult result = aeh::sweep(config, grid_spec, out_dir);
      int failed = 0;
      for (const aeh::SweepCell& cell : result.cells) {
        if (cell.failed) ++failed;
      }
      std::cout << "cells = " << result.cells.size() << "\n";
      std::cout << "failed = " << failed << "\n";
      std::cout << "matrix = " << out_dir << "/matrix.csv\n";
    } else if (eval_cmd->parsed()) {
      const aeh::EvaluationReport report = aeh::evaluate_checkpoint(checkpoint_path);
      std::cout << "seed = " << report.seed << "\n";
      std::cout << "epochs_completed = " << report.epoch << "\n";
      std::cout << "loss_total = " << report.losses.total << "\n";
      std::cout << "loss_r = " << report.losses.l_residual << "\n";
      std::cout << "loss_i = " << report.losses.l_initial << "\n";
      std::cout << "loss_b = " << report.losses.l_boundary << "\n";
      if (report.has_rel_l2) {
        std::cout << "rel_l2 = " << report.rel_l2 << "\n";
      } else {
        std::cout << "rel_l2 = nan\n";
      }
    } else if (compare_cmd->parsed()) {
      aeh::compare_runs(compare_configs, out_dir);
      std::cout << "comparison = " << out_dir << "/comparison.csv\n";
    }
  } catch (const aeh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const aeh::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const aeh::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
