#pragma once

#include <algorithm>
#include <cmath>

namespace rlap {

// Exploration rate: starts at `initial` and decays by `decay` once per
// `period` steps, never below `floor_value`. Closed form, so the value at a
// step count is independent of how it was reached.
struct EpsilonSchedule {
  double initial = 0.9;
  double decay = 0.95;
  long period = 100;
  double floor_value = 0.02;
  long steps = 0;

  double value_at(long t) const {
    const double eps = initial * std::pow(decay, static_cast<double>(t / period));
    return std::max(floor_value, eps);
  }

  double value() const { return value_at(steps); }
  void advance() { ++steps; }
};

}  // namespace rlap
