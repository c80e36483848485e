#include "aeh/checkpoint.hpp"

#include <cstdio>
#include <fstream>

namespace aeh {

namespace {

constexpr char kMagic[8] = {'A', 'E', 'H', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void read_pod(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  write_pod(out, static_cast<std::uint64_t>(v.size()));
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

Eigen::VectorXd read_vector(std::istream& in) {
  std::uint64_t n = 0;
  read_pod(in, n);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  return v;
}

void write_string(std::ostream& out, const std::string& s) {
  write_pod(out, static_cast<std::uint64_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  std::uint64_t n = 0;
  read_pod(in, n);
  std::string s(n, '\0');
  in.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

}  // namespace

void save_checkpoint(const Checkpoint& ck, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open checkpoint file for writing: " + tmp);
    out.write(kMagic, sizeof kMagic);
    write_pod(out, ck.config_hash);
    write_pod(out, ck.seed);
    write_string(out, ck.config_text);

    const TrainerState& s = ck.state;
    write_vector(out, s.params.entries);
    write_vector(out, s.adam.m);
    write_vector(out, s.adam.v);
    write_pod(out, s.adam.step_count);
    write_vector(out, s.weights.residual);
    write_vector(out, s.weights.initial);
    write_vector(out, s.weights.boundary);
    write_pod(out, static_cast<std::int32_t>(s.schedule.epoch));
    write_pod(out, static_cast<std::int32_t>(s.schedule.cycle));
    write_pod(out, s.schedule.ratio);
    write_pod(out, static_cast<std::uint64_t>(s.schedule.phase_log.size()));
    for (const PhaseRecord& r : s.schedule.phase_log) {
      write_pod(out, static_cast<std::int32_t>(r.epoch));
      write_pod(out, static_cast<std::uint8_t>(r.phase));
      write_pod(out, static_cast<std::int32_t>(r.inner_step));
      write_pod(out, r.ratio);
    }
    write_pod(out, s.rng_state);
    write_pod(out, static_cast<std::uint64_t>(s.aapinn_excluded.size()));
    for (int idx : s.aapinn_excluded) write_pod(out, static_cast<std::int32_t>(idx));
    if (!out) throw IoError("write failure on checkpoint file: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("cannot move checkpoint into place: " + path);
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint file: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::string(magic, 8) != std::string(kMagic, 8)) {
    throw IoError("not a checkpoint file (bad magic): " + path);
  }
  Checkpoint ck;
  read_pod(in, ck.config_hash);
  read_pod(in, ck.seed);
  ck.config_text = read_string(in);

  TrainerState& s = ck.state;
  s.params.entries = read_vector(in);
  s.adam.m = read_vector(in);
  s.adam.v = read_vector(in);
  read_pod(in, s.adam.step_count);
  s.weights.residual = read_vector(in);
  s.weights.initial = read_vector(in);
  s.weights.boundary = read_vector(in);
  std::int32_t epoch = 0, cycle = 0;
  read_pod(in, epoch);
  read_pod(in, cycle);
  s.schedule.epoch = epoch;
  s.schedule.cycle = cycle;
  read_pod(in, s.schedule.ratio);
  std::uint64_t log_size = 0;
  read_pod(in, log_size);
  s.schedule.phase_log.resize(log_size);
  for (std::uint64_t i = 0; i < log_size; ++i) {
    std::int32_t rec_epoch = 0, inner = 0;
    std::uint8_t phase = 0;
    double ratio = 0.0;
    read_pod(in, rec_epoch);
    read_pod(in, phase);
    read_pod(in, inner);
    read_pod(in, ratio);
    s.schedule.phase_log[i] = {rec_epoch, static_cast<Phase>(phase), inner, ratio};
  }
  read_pod(in, s.rng_state);
  std::uint64_t excluded_size = 0;
  read_pod(in, excluded_size);
  s.aapinn_excluded.resize(excluded_size);
  for (std::uint64_t i = 0; i < excluded_size; ++i) {
    std::int32_t idx = 0;
    read_pod(in, idx);
    s.aapinn_excluded[i] = idx;
  }
  if (!in) throw IoError("truncated checkpoint file: " + path);
  return ck;
}

void verify_checkpoint(const Checkpoint& checkpoint, const RunConfig& config) {
  if (checkpoint.config_hash != trajectory_hash(config)) {
    throw ConfigError(
        "checkpoint was produced by a different configuration (trajectory hash mismatch)");
  }
}

}  // namespace aeh
