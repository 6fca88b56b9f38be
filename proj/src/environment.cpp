#include "rlap/environment.hpp"

#include <algorithm>
#include <set>

#include "rlap/episode.hpp"
#include "rlap/errors.hpp"
#include "rlap/text.hpp"

namespace rlap {

namespace {

std::string blank_marker(int index) { return "[blank" + std::to_string(index) + "]"; }

std::string letter_options(const std::vector<std::string>& options) {
  std::string out;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out.push_back(static_cast<char>('A' + i));
    out.append(") ");
    out.append(options[i]);
  }
  return out;
}

std::string task_definition_for(TaskKind kind) {
  switch (kind) {
    case TaskKind::mrc_extractive: return "machine reading comprehension";
    case TaskKind::mrc_multichoice: return "multiple-choice reading comprehension";
    case TaskKind::re_triple: return "relational triple extraction";
    case TaskKind::ee_event: return "event argument extraction";
    case TaskKind::stc_s2p: return "sentence ordering";
    case TaskKind::stc_sfb: return "sentence cloze completion";
    case TaskKind::synthetic: return "order the segments";
  }
  throw Error("unknown TaskKind value");
}

std::string requirements_for(const TaskSample& sample) {
  switch (sample.kind) {
    case TaskKind::mrc_extractive:
      return "question: " + sample.question_or_schema +
             "; the final answer is a short span from the passage";
    case TaskKind::mrc_multichoice:
      return "question: " + sample.question_or_schema +
             "; options: " + letter_options(sample.options) +
             "; the final answer is one option letter";
    case TaskKind::re_triple:
      return "relation: " + sample.question_or_schema +
             "; extract the subject and object entities of this relation";
    case TaskKind::ee_event:
      return "event type: " + sample.question_or_schema +
             "; roles: " + join(sample.candidates, ", ") +
             "; each subtask extracts one argument span";
    case TaskKind::stc_sfb:
      return "fill each sentence into the blank where it belongs";
    case TaskKind::stc_s2p:
    case TaskKind::synthetic:
      return "";
  }
  throw Error("unknown TaskKind value");
}

// Ordering kinds parade their candidates through the context so the state
// rendering carries them.
std::string original_text_for(const TaskSample& sample) {
  switch (sample.kind) {
    case TaskKind::stc_s2p:
      return join(sample.candidates, " ");
    default:
      return sample.context;
  }
}

std::vector<std::string> values_with_key(const std::vector<ResultEntry>& entries,
                                         std::string_view key) {
  std::vector<std::string> out;
  for (const ResultEntry& e : entries) {
    if (e.key == key) out.push_back(e.value);
  }
  return out;
}

}  // namespace

bool answer_correct(const TaskSample& sample, const std::string& predicted) {
  if (sample.kind == TaskKind::mrc_multichoice) {
    const auto pred = first_letter_upper(predicted);
    const auto gold = first_letter_upper(sample.ground_truth.answer);
    return pred && gold && *pred == *gold;
  }
  const bool english_extractive =
      sample.kind == TaskKind::mrc_extractive && sample.language == "en";
  if (english_extractive) {
    return canonical_eq_folded(predicted, sample.ground_truth.answer);
  }
  return canonical_eq(predicted, sample.ground_truth.answer);
}

RewardMode default_reward_mode(TaskKind kind) {
  switch (kind) {
    case TaskKind::mrc_extractive:
    case TaskKind::mrc_multichoice: return RewardMode::episodic;
    case TaskKind::re_triple:
    case TaskKind::ee_event: return RewardMode::both;
    case TaskKind::stc_s2p:
    case TaskKind::stc_sfb: return RewardMode::stepwise;
    case TaskKind::synthetic: return RewardMode::stepwise;
  }
  throw Error("unknown TaskKind value");
}

std::string_view to_string(RewardMode mode) {
  switch (mode) {
    case RewardMode::stepwise: return "stepwise";
    case RewardMode::episodic: return "episodic";
    case RewardMode::both: return "both";
  }
  throw Error("unknown RewardMode value");
}

RewardMode reward_mode_from_string(std::string_view name) {
  if (name == "stepwise") return RewardMode::stepwise;
  if (name == "episodic") return RewardMode::episodic;
  if (name == "both") return RewardMode::both;
  throw Error("unknown reward mode: " + std::string(name));
}

std::pair<StateRecord, ActionSpace> Environment::init_instance(const TaskSample& sample) const {
  if (sample.candidates.empty()) {
    throw EmptyCandidates("sample " + sample.sample_id + " has no candidates");
  }
  StateRecord state;
  state.task_definition = task_definition_for(sample.kind);
  state.original_text = original_text_for(sample);
  state.requirements = requirements_for(sample);
  state.step_index = 0;

  std::vector<SubtaskAction> actions;
  actions.reserve(sample.candidates.size());
  const bool extraction =
      sample.kind == TaskKind::re_triple || sample.kind == TaskKind::ee_event;
  for (std::size_t i = 0; i < sample.candidates.size(); ++i) {
    SubtaskAction a;
    a.action_id = static_cast<int>(i);
    a.surface = extraction ? "extract " + sample.candidates[i] : sample.candidates[i];
    actions.push_back(std::move(a));
  }
  return {std::move(state), ActionSpace::from_actions(std::move(actions))};
}

bool Environment::needs_executor(TaskKind kind) const {
  return kind != TaskKind::stc_s2p && kind != TaskKind::synthetic;
}

RewardMode Environment::reward_mode(TaskKind kind) const {
  if (kind == TaskKind::synthetic) return synthetic_mode_;
  return default_reward_mode(kind);
}

std::string Environment::build_prompt(const TaskSample& sample, const StateRecord& state,
                                      const SubtaskAction& action) const {
  const std::string key{to_string(sample.kind)};
  const std::string& base = templates_.get(key);

  std::map<std::string, std::string> slots{
      {"task", state.task_definition},
      {"context", sample.kind == TaskKind::stc_sfb ? working_context(sample, state)
                                                   : state.original_text},
      {"results", render_results(state.intermediate_results)},
      {"requirements", state.requirements},
      {"action", action.surface},
      {"question", sample.question_or_schema},
  };

  std::string prompt = render_template(base, slots);
  const bool mrc =
      sample.kind == TaskKind::mrc_extractive || sample.kind == TaskKind::mrc_multichoice;
  const bool final_step =
      state.step_index + 1 == static_cast<int>(sample.candidates.size());
  if (mrc && final_step) {
    prompt += render_template(templates_.get(key + "_final"), slots);
  }
  return prompt;
}

StepOutcome Environment::apply_step(const TaskSample& sample, const StateRecord& state,
                                    const SubtaskAction& action,
                                    const std::string& executor_text) const {
  StepOutcome out;
  out.new_state = state;
  out.new_state.step_index = state.step_index + 1;
  out.executor_raw = executor_text;
  auto& results = out.new_state.intermediate_results;

  switch (sample.kind) {
    case TaskKind::mrc_extractive:
    case TaskKind::mrc_multichoice: {
      results.push_back({"read", action.surface});
      const bool final_step =
          state.step_index + 1 == static_cast<int>(sample.candidates.size());
      if (final_step) {
        const std::string answer = parse_payload(executor_text);
        out.parse_failed = answer.empty();
        out.parsed_result = {"answer", answer};
        results.push_back(out.parsed_result);
      } else {
        out.parsed_result = results.back();
      }
      break;
    }
    case TaskKind::re_triple:
    case TaskKind::ee_event: {
      const std::string& slot = sample.candidates.at(action.action_id);
      const std::string argument = parse_payload(executor_text);
      out.parse_failed = argument.empty();
      out.parsed_result = {slot, argument};
      results.push_back(out.parsed_result);
      break;
    }
    case TaskKind::stc_s2p: {
      out.parsed_result = {"text", action.surface};
      results.push_back(out.parsed_result);
      break;
    }
    case TaskKind::synthetic: {
      out.parsed_result = {"picked", action.surface};
      results.push_back(out.parsed_result);
      break;
    }
    case TaskKind::stc_sfb: {
      const std::optional<int> idx = first_integer(parse_payload(executor_text));
      const bool known = idx && sample.ground_truth.blank_map.count(*idx) > 0;
      const bool unfilled =
          known && !std::any_of(results.begin(), results.end(), [&](const ResultEntry& e) {
            return e.key == "blank " + std::to_string(*idx);
          });
      if (unfilled) {
        out.parsed_result = {"blank " + std::to_string(*idx), action.surface};
      } else {
        out.parse_failed = true;
        out.parsed_result = {"unplaced", action.surface};
      }
      results.push_back(out.parsed_result);
      break;
    }
  }
  return out;
}

double Environment::reward(const StepOutcome& outcome, const TaskSample& sample,
                           int step_index, bool terminal, RewardMode mode) const {
  const bool want_step = mode == RewardMode::stepwise || mode == RewardMode::both;
  const bool want_episodic =
      (mode == RewardMode::episodic || mode == RewardMode::both) && terminal;
  const auto& gt = sample.ground_truth;
  const auto& results = outcome.new_state.intermediate_results;
  double r = 0.0;

  switch (sample.kind) {
    case TaskKind::mrc_extractive:
    case TaskKind::mrc_multichoice: {
      // Reading steps carry no signal of their own.
      if (want_episodic && !outcome.parse_failed &&
          answer_correct(sample, outcome.parsed_result.value)) {
        r += 1.0;
      }
      break;
    }
    case TaskKind::re_triple:
    case TaskKind::ee_event: {
      const auto gold = gt.slot_args.find(outcome.parsed_result.key);
      if (want_step && gold != gt.slot_args.end() &&
          canonical_eq(outcome.parsed_result.value, gold->second)) {
        r += 1.0;
      }
      if (want_episodic) {
        bool all_match = true;
        for (const auto& [slot, gold_arg] : gt.slot_args) {
          bool matched = false;
          for (const ResultEntry& e : results) {
            if (e.key == slot && canonical_eq(e.value, gold_arg)) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            all_match = false;
            break;
          }
        }
        if (all_match && !gt.slot_args.empty()) r += 1.0;
      }
      break;
    }
    case TaskKind::stc_s2p: {
      const std::string completed = join(values_with_key(results, "text"), " ");
      const std::string gold_text = join(gt.sentences, " ");
      if (want_step && gold_text.starts_with(completed)) r += 1.0;
      if (want_episodic && completed == gold_text) r += 1.0;
      break;
    }
    case TaskKind::synthetic: {
      const std::vector<std::string> picked = values_with_key(results, "picked");
      bool prefix_ok = picked.size() <= gt.gold_order.size();
      for (std::size_t j = 0; prefix_ok && j < picked.size(); ++j) {
        prefix_ok = picked[j] == sample.candidates.at(gt.gold_order[j]);
      }
      if (want_step && prefix_ok) r += 1.0;
      if (want_episodic && prefix_ok && picked.size() == gt.gold_order.size()) r += 1.0;
      break;
    }
    case TaskKind::stc_sfb: {
      if (want_step && !outcome.parse_failed) {
        const auto idx = first_integer(outcome.parsed_result.key);
        const auto gold = idx ? gt.blank_map.find(*idx) : gt.blank_map.end();
        if (gold != gt.blank_map.end() &&
            canonical_eq(outcome.parsed_result.value, gold->second)) {
          r += 1.0;
        }
      }
      if (want_episodic &&
          canonical_eq(working_context(sample, outcome.new_state), gold_final_text(sample))) {
        r += 1.0;
      }
      break;
    }
  }
  (void)step_index;
  return r;
}

std::string Environment::working_context(const TaskSample& sample,
                                         const StateRecord& state) const {
  std::string context = sample.context;
  for (const ResultEntry& e : state.intermediate_results) {
    const auto idx = e.key.starts_with("blank ") ? first_integer(e.key) : std::nullopt;
    if (!idx) continue;
    const std::string marker = blank_marker(*idx);
    const std::size_t pos = context.find(marker);
    if (pos != std::string::npos) context.replace(pos, marker.size(), e.value);
  }
  return context;
}

FinalPrediction extract_final(const Environment& env, const TaskSample& sample,
                              const EpisodeResult& episode) {
  FinalPrediction out;
  const auto& results = episode.final_state.intermediate_results;
  switch (sample.kind) {
    case TaskKind::mrc_extractive:
    case TaskKind::mrc_multichoice: {
      const auto answers = values_with_key(results, "answer");
      if (!answers.empty()) out.final_text = answers.back();
      break;
    }
    case TaskKind::re_triple:
    case TaskKind::ee_event: {
      const std::set<std::string> slots(sample.candidates.begin(), sample.candidates.end());
      for (const ResultEntry& e : results) {
        if (slots.count(e.key) > 0) out.slots[e.key] = e.value;
      }
      break;
    }
    case TaskKind::stc_s2p: {
      out.final_text = join(values_with_key(results, "text"), " ");
      for (const SubtaskAction& a : episode.chosen) out.order.push_back(a.action_id);
      break;
    }
    case TaskKind::synthetic: {
      out.final_text = join(values_with_key(results, "picked"), " ");
      for (const SubtaskAction& a : episode.chosen) out.order.push_back(a.action_id);
      break;
    }
    case TaskKind::stc_sfb: {
      for (const ResultEntry& e : results) {
        if (!e.key.starts_with("blank ")) continue;
        if (const auto idx = first_integer(e.key)) out.blanks[*idx] = e.value;
      }
      out.final_text = env.working_context(sample, episode.final_state);
      break;
    }
  }
  return out;
}

std::string gold_final_text(const TaskSample& sample) {
  switch (sample.kind) {
    case TaskKind::mrc_extractive:
    case TaskKind::mrc_multichoice:
      return sample.ground_truth.answer;
    case TaskKind::re_triple:
    case TaskKind::ee_event: {
      std::vector<std::string> parts;
      for (const std::string& slot : sample.candidates) {
        const auto it = sample.ground_truth.slot_args.find(slot);
        if (it != sample.ground_truth.slot_args.end()) {
          parts.push_back(slot + ": " + it->second);
        }
      }
      return join(parts, "; ");
    }
    case TaskKind::stc_s2p:
      return join(sample.ground_truth.sentences, " ");
    case TaskKind::synthetic: {
      std::vector<std::string> parts;
      for (const int id : sample.ground_truth.gold_order) {
        parts.push_back(sample.candidates.at(id));
      }
      return join(parts, " ");
    }
    case TaskKind::stc_sfb: {
      std::string context = sample.context;
      for (const auto& [idx, sentence] : sample.ground_truth.blank_map) {
        const std::string marker = blank_marker(idx);
        const std::size_t pos = context.find(marker);
        if (pos != std::string::npos) context.replace(pos, marker.size(), sentence);
      }
      return context;
    }
  }
  throw Error("unknown TaskKind value");
}

}  // namespace rlap
