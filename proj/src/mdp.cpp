#include "rlap/mdp.hpp"

#include <algorithm>

#include "rlap/errors.hpp"

namespace rlap {

namespace {

// Renders "label:" or "label: content"; the " | " separator between segments
// supplies the space seen after a bare label.
void append_segment(std::string& out, std::string_view label, std::string_view content) {
  out.append(label);
  out.push_back(':');
  if (!content.empty()) {
    out.push_back(' ');
    out.append(content);
  }
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::mrc_extractive: return "mrc_extractive";
    case TaskKind::mrc_multichoice: return "mrc_multichoice";
    case TaskKind::re_triple: return "re_triple";
    case TaskKind::ee_event: return "ee_event";
    case TaskKind::stc_s2p: return "stc_s2p";
    case TaskKind::stc_sfb: return "stc_sfb";
    case TaskKind::synthetic: return "synthetic";
  }
  throw Error("unknown TaskKind value");
}

TaskKind task_kind_from_string(std::string_view name) {
  if (name == "mrc_extractive") return TaskKind::mrc_extractive;
  if (name == "mrc_multichoice") return TaskKind::mrc_multichoice;
  if (name == "re_triple") return TaskKind::re_triple;
  if (name == "ee_event") return TaskKind::ee_event;
  if (name == "stc_s2p") return TaskKind::stc_s2p;
  if (name == "stc_sfb") return TaskKind::stc_sfb;
  if (name == "synthetic") return TaskKind::synthetic;
  throw Error("unknown task kind: " + std::string(name));
}

ActionSpace ActionSpace::from_actions(std::vector<SubtaskAction> actions) {
  ActionSpace space;
  space.initial_size = actions.size();
  space.remaining = std::move(actions);
  return space;
}

std::string render_results(const std::vector<ResultEntry>& entries) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out.append("; ");
    out.append(entries[i].key);
    out.push_back(':');
    if (!entries[i].value.empty()) {
      out.push_back(' ');
      out.append(entries[i].value);
    }
  }
  return out;
}

std::string flatten_state(const StateRecord& state) {
  std::string out;
  append_segment(out, "task", state.task_definition);
  out.append(" | ");
  append_segment(out, "context", state.original_text);
  out.append(" | ");
  append_segment(out, "results", render_results(state.intermediate_results));
  out.append(" | ");
  append_segment(out, "requirements", state.requirements);
  return out;
}

std::string build_scoring_sequence(const SubtaskAction& action, const StateRecord& state) {
  std::string out = "<start> ";
  out.append(action.surface);
  out.append(" <sep> ");
  out.append(flatten_state(state));
  out.append(" <end>");
  return out;
}

ActionSpace remove_action(const ActionSpace& space, const SubtaskAction& action) {
  const auto it = std::find_if(
      space.remaining.begin(), space.remaining.end(),
      [&](const SubtaskAction& a) { return a.action_id == action.action_id; });
  if (it == space.remaining.end()) {
    throw ActionNotInSpace("action " + std::to_string(action.action_id) +
                           " is not in the remaining space");
  }
  ActionSpace next;
  next.initial_size = space.initial_size;
  next.remaining.reserve(space.remaining.size() - 1);
  for (const SubtaskAction& a : space.remaining) {
    if (a.action_id != action.action_id) next.remaining.push_back(a);
  }
  return next;
}

bool is_terminal(const ActionSpace& space) { return space.remaining.empty(); }

}  // namespace rlap
