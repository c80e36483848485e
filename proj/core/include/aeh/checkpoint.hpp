#pragma once

#include <cstdint>
#include <string>

#include "aeh/config.hpp"
#include "aeh/strategies.hpp"

namespace aeh {

/// Complete training snapshot: restoring it and continuing reproduces the
/// uninterrupted trajectory bit-for-bit.
struct Checkpoint {
  std::uint64_t config_hash = 0;  // trajectory_hash of the producing config
  std::uint64_t seed = 0;
  std::string config_text;        // render_config of the producing config
  TrainerState state;
};

/// Binary write, atomic (temp file then rename).
void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);

Checkpoint load_checkpoint(const std::string& path);

/// Throws ConfigError when the checkpoint's trajectory hash does not match
/// the given config.
void verify_checkpoint(const Checkpoint& checkpoint, const RunConfig& config);

}  // namespace aeh
