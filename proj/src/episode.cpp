#include "rlap/episode.hpp"

#include "rlap/errors.hpp"

namespace rlap {

EpisodeResult run_episode(const Environment& env, const TaskSample& sample,
                          const ActionChooser& choose, Executor* executor) {
  const bool prompts = env.needs_executor(sample.kind);
  if (prompts && executor == nullptr) {
    throw Error("sample " + sample.sample_id + " needs an executor");
  }
  const RewardMode mode = env.reward_mode(sample.kind);

  EpisodeResult result;
  result.trace.sample_id = sample.sample_id;
  auto [state, space] = env.init_instance(sample);

  while (!is_terminal(space)) {
    const SubtaskAction action = choose(state, space);
    std::string executor_text;
    if (prompts) {
      try {
        executor_text = executor->execute(sample.kind, env.build_prompt(sample, state, action));
      } catch (const Error& e) {
        result.failed = true;
        result.error = e.what();
        result.trace.transitions.clear();
        result.trace.total_return = 0.0;
        result.final_state = state;
        return result;
      }
    }
    StepOutcome outcome = env.apply_step(sample, state, action, executor_text);
    const ActionSpace next_space = remove_action(space, action);
    const bool terminal = is_terminal(next_space);
    outcome.reward = env.reward(outcome, sample, state.step_index, terminal, mode);

    result.trace.transitions.push_back(
        {state, action, outcome.reward, outcome.new_state, next_space, terminal});
    result.trace.total_return += outcome.reward;
    result.chosen.push_back(action);

    state = std::move(outcome.new_state);
    space = next_space;
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace rlap
