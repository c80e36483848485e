#include "aeh/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace aeh {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid value for '" + key + "': expected an integer, got '" + value + "'");
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid value for '" + key + "': expected a number, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("invalid value for '" + key + "': expected true/false, got '" + value + "'");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& key, const std::string& value) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const long long v = parse_int(key, item);
    if (v < 0) throw ConfigError("invalid value for '" + key + "': seeds must be >= 0");
    seeds.push_back(static_cast<std::uint64_t>(v));
  }
  if (seeds.empty()) throw ConfigError("invalid value for '" + key + "': empty seed list");
  return seeds;
}

}  // namespace

void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "problem" || key == "problem.name") {
    c.problem = problem_from_string(value);
    c.problem_set = true;
  } else if (key == "problem.reference") {
    c.reference_path = value;
  } else if (key.rfind("problem.", 0) == 0) {
    c.problem_overrides[key.substr(8)] = parse_real(key, value);
  } else if (key == "sampling.n_residual") {
    c.counts.n_residual = static_cast<int>(parse_int(key, value));
  } else if (key == "sampling.n_initial") {
    c.counts.n_initial = static_cast<int>(parse_int(key, value));
  } else if (key == "sampling.n_boundary") {
    c.counts.n_boundary = static_cast<int>(parse_int(key, value));
  } else if (key == "sampling.seed") {
    const long long v = parse_int(key, value);
    if (v < 0) throw ConfigError("invalid value for 'sampling.seed': must be >= 0");
    c.sampling_seed = static_cast<std::uint64_t>(v);
  } else if (key == "network.hidden_layers") {
    c.network.hidden_layers = static_cast<int>(parse_int(key, value));
  } else if (key == "network.width") {
    c.network.width = static_cast<int>(parse_int(key, value));
  } else if (key == "network.activation") {
    if (value != "tanh") throw ConfigError("invalid value for 'network.activation': only 'tanh' is supported");
    c.network.activation = Activation::Tanh;
  } else if (key == "network.init") {
    if (value != "he") throw ConfigError("invalid value for 'network.init': only 'he' is supported");
    c.network.init = InitScheme::He;
  } else if (key == "network.precision") {
    if (value == "double") c.network.precision = Precision::Double;
    else if (value == "single") c.network.precision = Precision::Single;
    else throw ConfigError("invalid value for 'network.precision': expected double|single");
  } else if (key == "optimizer.lr") {
    c.optimizer.lr = parse_real(key, value);
  } else if (key == "optimizer.beta1") {
    c.optimizer.beta1 = parse_real(key, value);
  } else if (key == "optimizer.beta2") {
    c.optimizer.beta2 = parse_real(key, value);
  } else if (key == "optimizer.eps") {
    c.optimizer.eps = parse_real(key, value);
  } else if (key == "optimizer.ascent_lr") {
    c.optimizer.ascent_lr = parse_real(key, value);
  } else if (key == "strategy.kind") {
    c.strategy.kind = strategy_from_string(value);
  } else if (key == "strategy.s1") {
    c.strategy.s1 = static_cast<int>(parse_int(key, value));
  } else if (key == "strategy.s2") {
    c.strategy.s2 = static_cast<int>(parse_int(key, value));
  } else if (key == "strategy.period") {
    c.strategy.period = static_cast<int>(parse_int(key, value));
  } else if (key == "strategy.mask") {
    if (value == "identity") c.strategy.mask = MaskKind::Identity;
    else if (value == "square") c.strategy.mask = MaskKind::Square;
    else throw ConfigError("invalid value for 'strategy.mask': expected identity|square");
  } else if (key == "strategy.outlier_k") {
    c.strategy.outlier_k = parse_real(key, value);
  } else if (key == "strategy.outlier_check_every") {
    c.strategy.outlier_check_every = static_cast<int>(parse_int(key, value));
  } else if (key == "strategy.selection_scope") {
    if (value == "per_group") c.strategy.selection_scope = SelectionScope::PerGroup;
    else if (value == "global") c.strategy.selection_scope = SelectionScope::Global;
    else throw ConfigError("invalid value for 'strategy.selection_scope': expected per_group|global");
  } else if (key == "run.max_epochs") {
    c.max_epochs = static_cast<int>(parse_int(key, value));
  } else if (key == "run.eval_every") {
    c.eval_every = static_cast<int>(parse_int(key, value));
  } else if (key == "run.seeds") {
    c.seeds = parse_seed_list(key, value);
  } else if (key == "run.out_dir") {
    c.out_dir = value;
  } else if (key == "run.timing") {
    c.timing = parse_bool(key, value);
  } else {
    throw ConfigError("unknown configuration key: '" + key + "'");
  }
}

ProblemSpec RunConfig::build_problem_spec() const {
  return build_problem(problem, problem_overrides);
}

void RunConfig::finalize() {
  if (!problem_set) {
    throw ConfigError("configuration must name a problem (key 'problem')");
  }
  const ProblemSpec spec = build_problem_spec();  // validates parameter overrides
  const SampleCounts defaults = default_sample_counts(problem);
  if (counts.n_residual < 0) counts.n_residual = defaults.n_residual;
  if (counts.n_initial < 0) counts.n_initial = defaults.n_initial;
  if (counts.n_boundary < 0) counts.n_boundary = defaults.n_boundary;
  network.input_dim = spec.input_dim();
  network.validate();
  optimizer.validate();
  strategy.validate();
  if (max_epochs < 0) throw ConfigError("run.max_epochs must be >= 0");
  if (eval_every < 1) throw ConfigError("run.eval_every must be >= 1");
  if (seeds.empty()) {
    for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + " is not 'key = value': " + line);
    }
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.finalize();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string trajectory_descriptor(const RunConfig& c) {
  std::ostringstream out;
  auto real = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "problem=" << to_string(c.problem) << "\n";
  for (const auto& [k, v] : c.problem_overrides) out << "problem." << k << "=" << real(v) << "\n";
  out << "sampling=" << c.counts.n_residual << "," << c.counts.n_initial << ","
      << c.counts.n_boundary << "," << c.sampling_seed << "\n";
  out << "network=" << c.network.input_dim << "x" << c.network.hidden_layers << "x"
      << c.network.width << ",tanh,he,"
      << (c.network.precision == Precision::Double ? "double" : "single") << "\n";
  out << "optimizer=" << real(c.optimizer.lr) << "," << real(c.optimizer.beta1) << ","
      << real(c.optimizer.beta2) << "," << real(c.optimizer.eps) << ","
      << real(c.optimizer.ascent_lr) << "\n";
  out << "strategy=" << to_string(c.strategy.kind) << "," << c.strategy.s1 << ","
      << c.strategy.s2 << "," << c.strategy.period << ","
      << (c.strategy.mask == MaskKind::Identity ? "identity" : "square") << ","
      << real(c.strategy.outlier_k) << "," << c.strategy.outlier_check_every << ","
      << (c.strategy.selection_scope == SelectionScope::PerGroup ? "per_group" : "global")
      << "\n";
  return out.str();
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  auto real = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "problem = " << to_string(c.problem) << "\n";
  for (const auto& [k, v] : c.problem_overrides) {
    out << "problem." << k << " = " << real(v) << "\n";
  }
  if (!c.reference_path.empty()) out << "problem.reference = " << c.reference_path << "\n";
  out << "sampling.n_residual = " << c.counts.n_residual << "\n";
  out << "sampling.n_initial = " << c.counts.n_initial << "\n";
  out << "sampling.n_boundary = " << c.counts.n_boundary << "\n";
  out << "sampling.seed = " << c.sampling_seed << "\n";
  out << "network.hidden_layers = " << c.network.hidden_layers << "\n";
  out << "network.width = " << c.network.width << "\n";
  out << "network.activation = tanh\n";
  out << "network.init = he\n";
  out << "network.precision = "
      << (c.network.precision == Precision::Double ? "double" : "single") << "\n";
  out << "optimizer.lr = " << real(c.optimizer.lr) << "\n";
  out << "optimizer.beta1 = " << real(c.optimizer.beta1) << "\n";
  out << "optimizer.beta2 = " << real(c.optimizer.beta2) << "\n";
  out << "optimizer.eps = " << real(c.optimizer.eps) << "\n";
  out << "optimizer.ascent_lr = " << real(c.optimizer.ascent_lr) << "\n";
  out << "strategy.kind = " << to_string(c.strategy.kind) << "\n";
  out << "strategy.s1 = " << c.strategy.s1 << "\n";
  out << "strategy.s2 = " << c.strategy.s2 << "\n";
  out << "strategy.period = " << c.strategy.period << "\n";
  out << "strategy.mask = " << (c.strategy.mask == MaskKind::Identity ? "identity" : "square")
      << "\n";
  out << "strategy.outlier_k = " << real(c.strategy.outlier_k) << "\n";
  out << "strategy.outlier_check_every = " << c.strategy.outlier_check_every << "\n";
  out << "strategy.selection_scope = "
      << (c.strategy.selection_scope == SelectionScope::PerGroup ? "per_group" : "global")
      << "\n";
  out << "run.max_epochs = " << c.max_epochs << "\n";
  out << "run.eval_every = " << c.eval_every << "\n";
  out << "run.seeds = ";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    if (i) out << ",";
    out << c.seeds[i];
  }
  out << "\n";
  out << "run.out_dir = " << c.out_dir << "\n";
  out << "run.timing = " << (c.timing ? "true" : "false") << "\n";
  return out.str();
}

std::uint64_t trajectory_hash(const RunConfig& config) {
  const std::string s = trajectory_descriptor(config);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace aeh
