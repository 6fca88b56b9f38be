#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rlap/mdp.hpp"
#include "rlap/sample.hpp"
#include "rlap/templates.hpp"

namespace rlap {

// Fixed reward mode per task kind; the synthetic kind is configurable on the
// Environment.
RewardMode default_reward_mode(TaskKind kind);

// Task environment: splits a sample into subtasks, renders prompts, applies
// executor output to the state, and scores steps against the ground truth.
// Stateless across calls; the episode state lives in StateRecord/ActionSpace.
class Environment {
 public:
  Environment() : Environment(TemplateSet::builtin()) {}
  explicit Environment(TemplateSet templates,
                       RewardMode synthetic_mode = RewardMode::stepwise)
      : templates_(std::move(templates)), synthetic_mode_(synthetic_mode) {}

  // One action per candidate, ids in enumeration order. Throws EmptyCandidates.
  std::pair<StateRecord, ActionSpace> init_instance(const TaskSample& sample) const;

  // Ordering kinds resolve steps without calling a model.
  bool needs_executor(TaskKind kind) const;

  RewardMode reward_mode(TaskKind kind) const;

  // Throws MissingTemplate for kinds that never prompt (stc_s2p, synthetic).
  std::string build_prompt(const TaskSample& sample, const StateRecord& state,
                           const SubtaskAction& action) const;

  // Applies one subtask. Unparseable executor output marks parse_failed and
  // records an empty result; the episode continues. `outcome.reward` is left 0.
  StepOutcome apply_step(const TaskSample& sample, const StateRecord& state,
                         const SubtaskAction& action,
                         const std::string& executor_text) const;

  // Scalar reward for the step: stepwise component, plus the terminal
  // component when the mode asks for it. Each component is 0 or 1.
  double reward(const StepOutcome& outcome, const TaskSample& sample,
                int step_index, bool terminal, RewardMode mode) const;

  // Blanked context with every filled blank substituted in (SFB).
  std::string working_context(const TaskSample& sample, const StateRecord& state) const;

  const TemplateSet& templates() const { return templates_; }

 private:
  TemplateSet templates_;
  RewardMode synthetic_mode_;
};

// Final prediction assembled from a finished episode, keyed the way the
// metrics want it.
struct FinalPrediction {
  std::string final_text;
  std::map<std::string, std::string> slots;
  std::map<int, std::string> blanks;
  std::vector<int> order;
};

struct EpisodeResult;  // episode.hpp

FinalPrediction extract_final(const Environment& env, const TaskSample& sample,
                              const EpisodeResult& episode);

// The text a fully correct episode would produce.
std::string gold_final_text(const TaskSample& sample);

// Exact-match rule for final answers: whitespace-canonical byte equality,
// case-folded only for English extractive reading comprehension, option
// letter only for multichoice.
bool answer_correct(const TaskSample& sample, const std::string& predicted);

}  // namespace rlap
