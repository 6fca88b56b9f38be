#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rlap/sample.hpp"

namespace rlap {

// Planted-order ordering task. Each sample hides a permutation of its
// candidates; candidate texts carry the ordinal cue for their rank, so the
// optimal order is recoverable from text alone and earns return k under
// stepwise reward.
struct SyntheticConfig {
  int k = 4;                 // candidates per sample, 2..8
  int n_samples = 100;
  std::uint64_t seed = 0;
};

const std::array<std::string_view, 8>& ordinal_words();

// Byte-reproducible for a fixed config. Throws Error on k outside [2, 8]
// or non-positive n_samples.
std::vector<TaskSample> gen_synthetic(const SyntheticConfig& config);

}  // namespace rlap
