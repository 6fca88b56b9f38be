#pragma once

#include <map>
#include <string>
#include <vector>

#include "rlap/mdp.hpp"

namespace rlap {

enum class RewardMode { stepwise, episodic, both };

std::string_view to_string(RewardMode mode);
RewardMode reward_mode_from_string(std::string_view name);

// Gold record. Which members are meaningful depends on the task kind; the
// rest stay default-constructed.
struct GroundTruth {
  std::string answer;                            // MRC answer text / option letter
  std::map<std::string, std::string> slot_args;  // RE, EE
  std::vector<std::string> sentences;            // S2P sentences in gold order
  std::map<int, std::string> blank_map;          // SFB blank index -> gold sentence
  std::vector<int> gold_order;                   // synthetic: candidate ids in optimal order
  bool operator==(const GroundTruth&) const = default;
};

struct TaskSample {
  std::string sample_id;
  TaskKind kind{};
  std::string language;  // "en" or "zh"; answer folding applies to English extractive MRC only
  std::string context;
  std::string question_or_schema;     // question / relation / event type / blanked context
  std::vector<std::string> options;   // multichoice only
  std::vector<std::string> candidates;
  GroundTruth ground_truth;
  int complexity_hint = 0;  // optional dataset-level difficulty count (e.g. triples per context)
  bool operator==(const TaskSample&) const = default;
};

struct Dataset {
  std::string path;
  TaskKind kind{};
  std::string language = "en";
  std::vector<TaskSample> samples;
};

// Result of applying one subtask. `reward` is filled in by Environment::reward
// after the step; apply_step leaves it at 0.
struct StepOutcome {
  StateRecord new_state;
  double reward = 0.0;
  std::string executor_raw;
  ResultEntry parsed_result;
  bool parse_failed = false;
};

}  // namespace rlap
