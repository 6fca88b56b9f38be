#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rlap/environment.hpp"
#include "rlap/executor.hpp"
#include "rlap/mdp.hpp"

namespace rlap {

struct EpisodeResult {
  EpisodeTrace trace;
  StateRecord final_state;
  std::vector<SubtaskAction> chosen;
  bool failed = false;   // executor gave up; trace holds no transitions
  std::string error;
};

using ActionChooser = std::function<SubtaskAction(const StateRecord&, const ActionSpace&)>;

// Runs one full episode: pick, execute, apply, score, until the action space
// is empty. Executor failures abort the episode (failed=true, empty trace);
// `executor` may be null for kinds that never prompt.
EpisodeResult run_episode(const Environment& env, const TaskSample& sample,
                          const ActionChooser& choose, Executor* executor);

}  // namespace rlap
