#include "aeh/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace aeh {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_e(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + tmp);
    out << content;
    if (!out) throw IoError("write failure: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move file into place: " + path + " (" + ec.message() + ")");
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory: " + path + " (" + ec.message() + ")");
}

// Allen-Cahn has no closed form; without an ingested reference the run still
// trains, it just cannot report rel_l2.
std::optional<TestGrid> acquire_grid(const RunConfig& config, const ProblemSpec& problem) {
  try {
    return test_grid(problem, config.reference_path);
  } catch (const IoError&) {
    if (config.reference_path.empty()) return std::nullopt;
    throw;
  }
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::int64_t flops_per_forward_estimate(const NetworkConfig& config) {
  const NetworkLayout layout(config);
  std::int64_t weights = 0;
  for (int l = 0; l < layout.layer_count(); ++l) {
    weights += static_cast<std::int64_t>(layout.fan_in(l)) * layout.fan_out(l);
  }
  return 2 * weights;
}

std::string format_metrics_header() {
  return "epoch,phase,loss_total,loss_r,loss_i,loss_b,rel_l2,wall_time_s\n";
}

std::string format_metrics_record(const MetricsRecord& r) {
  std::string line = std::to_string(r.epoch) + "," + to_string(r.phase) + "," +
                     fmt_g(r.loss_total) + "," + fmt_g(r.loss_r) + "," + fmt_g(r.loss_i) + "," +
                     fmt_g(r.loss_b) + ",";
  if (r.has_rel_l2) line += fmt_g(r.rel_l2);
  line += "," + fmt_g(r.wall_time_s) + "\n";
  return line;
}

void write_prediction_grid(const ParameterVector& params, const NetworkConfig& network,
                           const ProblemSpec& problem, const TestGrid& grid,
                           const std::string& path) {
  const Eigen::VectorXd pred = predict_values(params, network, grid.points);
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.points.cols()) * 64);
  for (int j = 0; j < problem.spatial_dim; ++j) {
    out += "x" + std::to_string(j + 1) + ",";
  }
  if (problem.has_time) out += "t,";
  out += "u_pred";
  if (grid.has_exact) out += ",u_exact,abs_err";
  out += "\n";
  for (Eigen::Index i = 0; i < grid.points.cols(); ++i) {
    for (int j = 0; j < grid.points.rows(); ++j) {
      out += fmt_e(grid.points(j, i)) + ",";
    }
    out += fmt_e(pred[i]);
    if (grid.has_exact) {
      out += "," + fmt_e(grid.exact[i]) + "," + fmt_e(std::abs(pred[i] - grid.exact[i]));
    }
    out += "\n";
  }
  write_file_atomic(path, out);
}

void write_summary(const ExperimentSummary& s, const std::string& path) {
  std::string out;
  out += "final_rel_l2_mean = " + (s.has_rel_l2 ? fmt_g(s.final_rel_l2_mean) : "nan") + "\n";
  out += "final_rel_l2_median = " + (s.has_rel_l2 ? fmt_g(s.final_rel_l2_median) : "nan") + "\n";
  out += "final_rel_l2_min = " + (s.has_rel_l2 ? fmt_g(s.final_rel_l2_min) : "nan") + "\n";
  out += "final_rel_l2_max = " + (s.has_rel_l2 ? fmt_g(s.final_rel_l2_max) : "nan") + "\n";
  out += "final_rel_l2_per_seed = ";
  for (std::size_t i = 0; i < s.per_seed.size(); ++i) {
    if (i) out += ",";
    const SeedResult& r = s.per_seed[i];
    out += std::to_string(r.seed) + ":";
    if (r.aborted) out += "aborted";
    else if (r.has_rel_l2) out += fmt_g(r.final_rel_l2);
    else out += "nan";
  }
  out += "\n";
  out += "param_count = " + std::to_string(s.param_count) + "\n";
  out += "flops_per_forward_est = " + std::to_string(s.flops_per_forward_est) + "\n";
  out += "time_per_epoch_s_mean = " + fmt_g(s.time_per_epoch_s_mean) + "\n";
  out += std::string("complete = ") + (s.complete ? "true" : "false") + "\n";
  write_file_atomic(path, out);
}

ExperimentSummary run_experiment(const RunConfig& config) {
  const ProblemSpec problem = config.build_problem_spec();
  const SampleSet samples = sample_training_set(problem, config.counts, config.sampling_seed);
  const std::optional<TestGrid> grid = acquire_grid(config, problem);
  ensure_dir(config.out_dir);

  ExperimentSummary summary;
  summary.param_count = config.network.parameter_count();
  summary.flops_per_forward_est = flops_per_forward_estimate(config.network);

  const std::uint64_t hash = trajectory_hash(config);
  const std::string config_text = render_config(config);
  double total_time = 0.0;
  std::int64_t total_epochs = 0;

  for (std::uint64_t seed : config.seeds) {
    const std::string seed_dir = config.out_dir + "/seed_" + std::to_string(seed);
    ensure_dir(seed_dir);

    Trainer trainer(problem, config.network, config.optimizer, config.strategy, samples);
    TrainerState state = trainer.make_initial_state(seed);

    std::string metrics = format_metrics_header();
    SeedResult sr;
    sr.seed = seed;
    auto sink = [&](const MetricsRecord& rec) {
      metrics += format_metrics_record(rec);
      if (rec.has_rel_l2) {
        sr.has_rel_l2 = true;
        sr.final_rel_l2 = rec.rel_l2;
      }
    };
    TrainOptions options{config.max_epochs, config.eval_every, config.timing};
    TrainResult result =
        train(trainer, std::move(state), options, grid ? &*grid : nullptr, sink);

    sr.aborted = result.aborted;
    sr.abort_reason = result.abort_reason;
    sr.completed_epochs = result.completed_epochs;
    sr.wall_time_s = result.total_wall_time_s;

    write_file_atomic(seed_dir + "/metrics.csv", metrics);
    save_checkpoint({hash, seed, config_text, result.state}, seed_dir + "/checkpoint.bin");
    if (grid) {
      write_prediction_grid(result.state.params, config.network, problem, *grid,
                            seed_dir + "/prediction.csv");
    }

    total_time += result.total_wall_time_s;
    total_epochs += result.completed_epochs;
    if (result.aborted) summary.complete = false;
    summary.per_seed.push_back(std::move(sr));
  }

  std::vector<double> finals;
  for (const SeedResult& r : summary.per_seed) {
    if (r.has_rel_l2 && !r.aborted) finals.push_back(r.final_rel_l2);
  }
  if (!finals.empty()) {
    summary.has_rel_l2 = true;
    summary.final_rel_l2_mean =
        std::accumulate(finals.begin(), finals.end(), 0.0) / static_cast<double>(finals.size());
    summary.final_rel_l2_median = median_of(finals);
    summary.final_rel_l2_min = *std::min_element(finals.begin(), finals.end());
    summary.final_rel_l2_max = *std::max_element(finals.begin(), finals.end());
  }
  if (total_epochs > 0) {
    summary.time_per_epoch_s_mean = total_time / static_cast<double>(total_epochs);
  }
  write_summary(summary, config.out_dir + "/summary.txt");
  return summary;
}

namespace {

std::string sanitize_cell(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ',') c = ';';
    if (c == '\n') c = ' ';
  }
  return out;
}

}  // namespace

SweepResult sweep(const RunConfig& base, const std::string& grid_spec,
                  const std::string& out_dir) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  std::stringstream fields(grid_spec);
  std::string field;
  while (std::getline(fields, field, ';')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("sweep grid entry is not 'key=v1,v2,...': " + field);
    }
    std::vector<std::string> values;
    std::stringstream vs(field.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) {
      if (!v.empty()) values.push_back(v);
    }
    if (values.empty()) throw ConfigError("sweep grid entry has no values: " + field);
    axes.emplace_back(field.substr(0, eq), std::move(values));
  }
  if (axes.empty()) throw ConfigError("sweep grid is empty");

  std::size_t cell_count = 1;
  for (const auto& [key, values] : axes) cell_count *= values.size();

  ensure_dir(out_dir);
  SweepResult result;
  std::string matrix =
      "cell,overrides,final_rel_l2_mean,final_rel_l2_median,final_rel_l2_per_seed,"
      "param_count,time_per_epoch_s_mean,status\n";

  for (std::size_t cell = 0; cell < cell_count; ++cell) {
    SweepCell sc;
    std::size_t rest = cell;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {  // last axis fastest
      sc.overrides.emplace_back(it->first, it->second[rest % it->second.size()]);
      rest /= it->second.size();
    }
    std::reverse(sc.overrides.begin(), sc.overrides.end());

    std::string label;
    for (const auto& [key, value] : sc.overrides) {
      if (!label.empty()) label += " ";
      label += key + "=" + value;
    }
    try {
      RunConfig cfg = base;
      for (const auto& [key, value] : sc.overrides) apply_config_entry(cfg, key, value);
      cfg.out_dir = out_dir + "/cell_" + std::to_string(cell);
      cfg.finalize();
      sc.summary = run_experiment(cfg);
    } catch (const std::exception& e) {
      sc.failed = true;
      sc.error = e.what();
    }

    std::string per_seed;
    for (const SeedResult& r : sc.summary.per_seed) {
      if (!per_seed.empty()) per_seed += "|";
      per_seed += std::to_string(r.seed) + ":" +
                  (r.aborted ? "aborted" : (r.has_rel_l2 ? fmt_g(r.final_rel_l2) : "nan"));
    }
    matrix += std::to_string(cell) + "," + sanitize_cell(label) + ",";
    if (sc.failed) {
      matrix += ",,,,,failed: " + sanitize_cell(sc.error) + "\n";
    } else {
      matrix += (sc.summary.has_rel_l2 ? fmt_g(sc.summary.final_rel_l2_mean) : "nan");
      matrix += ",";
      matrix += (sc.summary.has_rel_l2 ? fmt_g(sc.summary.final_rel_l2_median) : "nan");
      matrix += "," + per_seed + "," + std::to_string(sc.summary.param_count) + "," +
                fmt_g(sc.summary.time_per_epoch_s_mean) + "," +
                (sc.summary.complete ? "ok" : "incomplete") + "\n";
    }
    result.cells.push_back(std::move(sc));
  }
  write_file_atomic(out_dir + "/matrix.csv", matrix);
  return result;
}

std::vector<ExperimentSummary> compare_runs(const std::vector<std::string>& config_paths,
                                            const std::string& out_dir) {
  if (config_paths.empty()) throw ConfigError("compare requires at least one config");
  ensure_dir(out_dir);
  std::vector<ExperimentSummary> summaries;
  std::string csv =
      "config,final_rel_l2_mean,final_rel_l2_median,final_rel_l2_min,final_rel_l2_max,"
      "param_count,time_per_epoch_s_mean,status\n";
  for (const std::string& path : config_paths) {
    RunConfig cfg = load_config(path);
    cfg.out_dir = out_dir + "/" + fs::path(path).stem().string();
    const ExperimentSummary s = run_experiment(cfg);
    csv += sanitize_cell(path) + ",";
    csv += (s.has_rel_l2 ? fmt_g(s.final_rel_l2_mean) : "nan");
    csv += ",";
    csv += (s.has_rel_l2 ? fmt_g(s.final_rel_l2_median) : "nan");
    csv += ",";
    csv += (s.has_rel_l2 ? fmt_g(s.final_rel_l2_min) : "nan");
    csv += ",";
    csv += (s.has_rel_l2 ? fmt_g(s.final_rel_l2_max) : "nan");
    csv += "," + std::to_string(s.param_count) + "," + fmt_g(s.time_per_epoch_s_mean) + "," +
           (s.complete ? "ok" : "incomplete") + "\n";
    summaries.push_back(s);
  }
  write_file_atomic(out_dir + "/comparison.csv", csv);
  return summaries;
}

EvaluationReport evaluate_checkpoint(const std::string& checkpoint_path) {
  const Checkpoint ck = load_checkpoint(checkpoint_path);
  RunConfig config = parse_config_text(ck.config_text);
  const ProblemSpec problem = config.build_problem_spec();
  const SampleSet samples = sample_training_set(problem, config.counts, config.sampling_seed);

  EvaluationReport report;
  report.seed = ck.seed;
  report.epoch = ck.state.schedule.epoch - 1;

  SampleEvaluator eval(problem, config.network, samples);
  report.losses = aggregate_loss(eval.forward(ck.state.params), eval.counts());

  const std::optional<TestGrid> grid = acquire_grid(config, problem);
  if (grid && grid->has_exact) {
    const Eigen::VectorXd pred = predict_values(ck.state.params, config.network, grid->points);
    report.rel_l2 = relative_l2(pred, grid->exact);
    report.has_rel_l2 = true;
  }
  return report;
}

TrainResult resume_training(const RunConfig& config, const Checkpoint& checkpoint,
                            const std::function<void(const MetricsRecord&)>& sink) {
  verify_checkpoint(checkpoint, config);
  const ProblemSpec problem = config.build_problem_spec();
  const SampleSet samples = sample_training_set(problem, config.counts, config.sampling_seed);
  const std::optional<TestGrid> grid = acquire_grid(config, problem);
  Trainer trainer(problem, config.network, config.optimizer, config.strategy, samples);
  TrainOptions options{config.max_epochs, config.eval_every, config.timing};
  return train(trainer, checkpoint.state, options, grid ? &*grid : nullptr, sink);
}

}  // namespace aeh
