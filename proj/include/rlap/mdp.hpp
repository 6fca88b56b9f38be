#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rlap {

enum class TaskKind {
  mrc_extractive,
  mrc_multichoice,
  re_triple,
  ee_event,
  stc_s2p,
  stc_sfb,
  synthetic,
};

std::string_view to_string(TaskKind kind);
TaskKind task_kind_from_string(std::string_view name);  // throws Error on unknown names

// One keyed entry of the intermediate-results list.
struct ResultEntry {
  std::string key;
  std::string value;
  bool operator==(const ResultEntry&) const = default;
};

// Markov state of a partially solved instance: what the task is, the text it
// works over, everything produced so far, and extra constraints. Treated as a
// value; each step yields a new record.
struct StateRecord {
  std::string task_definition;
  std::string original_text;
  std::vector<ResultEntry> intermediate_results;
  std::string requirements;
  int step_index = 0;
  bool operator==(const StateRecord&) const = default;
};

// One executable subtask. action_id is the candidate index assigned when the
// instance was split; it never changes as the space shrinks.
struct SubtaskAction {
  int action_id = 0;
  std::string surface;
  bool operator==(const SubtaskAction&) const = default;
};

struct ActionSpace {
  std::vector<SubtaskAction> remaining;
  std::size_t initial_size = 0;

  static ActionSpace from_actions(std::vector<SubtaskAction> actions);
  bool operator==(const ActionSpace&) const = default;
};

// Fixed textual rendering of a state. Same field contents, same bytes.
std::string flatten_state(const StateRecord& state);

// "key: value" pairs joined by "; " (an empty value renders as "key:").
std::string render_results(const std::vector<ResultEntry>& entries);

// The exact text scored by the value model for a (state, action) pair.
std::string build_scoring_sequence(const SubtaskAction& action, const StateRecord& state);

// Copy of `space` without `action` (matched by action_id); order of the rest
// is preserved. Throws ActionNotInSpace.
ActionSpace remove_action(const ActionSpace& space, const SubtaskAction& action);

bool is_terminal(const ActionSpace& space);

struct Transition {
  StateRecord state;
  SubtaskAction action;
  double reward = 0.0;
  StateRecord next_state;
  ActionSpace next_actions;
  bool terminal = false;
};

struct EpisodeTrace {
  std::string sample_id;
  std::vector<Transition> transitions;
  double total_return = 0.0;
};

}  // namespace rlap
