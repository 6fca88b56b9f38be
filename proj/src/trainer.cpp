#include "rlap/trainer.hpp"

#include <chrono>
#include <iostream>

#include "rlap/episode.hpp"
#include "rlap/errors.hpp"

namespace rlap {

namespace {

int effective_min_fill(const TrainConfig& config) {
  return config.min_fill > 0 ? config.min_fill : config.batch_size;
}

}  // namespace

const TaskSample& sample_instance(const std::vector<Dataset>& train_sets, Rng& rng) {
  if (train_sets.empty()) throw EmptyDataset("no training sets");
  const Dataset& set = train_sets[uniform_index(rng, train_sets.size())];
  if (set.samples.empty()) throw EmptyDataset("training set " + set.path + " is empty");
  return set.samples[uniform_index(rng, set.samples.size())];
}

double td_target(const Transition& t, const ActorModel& actor, double gamma, bool double_q) {
  if (t.terminal) return t.reward;
  if (t.next_actions.remaining.empty()) {
    throw EmptyActionSpace("non-terminal transition has no next actions");
  }
  if (double_q) {
    const SubtaskAction pick = select_greedy(actor, t.next_state, t.next_actions);
    return t.reward + gamma * q_value(actor, t.next_state, pick, HeadSelect::target);
  }
  bool first = true;
  double best = 0.0;
  for (const SubtaskAction& a : t.next_actions.remaining) {
    const double q = q_value(actor, t.next_state, a, HeadSelect::target);
    if (first || q > best) {
      best = q;
      first = false;
    }
  }
  return t.reward + gamma * best;
}

double learn_step(const ReplayBuffer& buffer, ActorModel& actor, const TrainConfig& config,
                  Rng& rng, long& learn_steps) {
  const std::size_t need = static_cast<std::size_t>(effective_min_fill(config));
  if (buffer.size() < need) {
    throw BufferTooSmall("buffer holds " + std::to_string(buffer.size()) +
                         " transitions, need " + std::to_string(need));
  }
  const auto batch = buffer.sample_batch(config.batch_size, rng);

  std::vector<double> gw(actor.head.w.size(), 0.0);
  double gb = 0.0;
  double loss = 0.0;
  for (const Transition* t : batch) {
    const double y = td_target(*t, actor, config.gamma, config.double_q);
    const std::vector<double> h =
        actor.provider->embed(build_scoring_sequence(t->action, t->state));
    const HeadGradient g = head_gradient(actor.head, h, y);
    for (std::size_t i = 0; i < gw.size(); ++i) gw[i] += g.gw[i];
    gb += g.gb;
    loss += g.loss;
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& x : gw) x *= inv;
  gb *= inv;
  loss *= inv;

  actor.head = sgd_update(actor.head, gw, gb, config.learning_rate);
  ++learn_steps;
  return loss;
}

void sync_target(ActorModel& actor, long learn_steps, int period) {
  if (period > 0 && learn_steps > 0 && learn_steps % period == 0) {
    actor.target_head = actor.head;
  }
}

std::pair<Checkpoint, TrainReport> run_training(const std::vector<Dataset>& train_sets,
                                                const Environment& env, Executor* executor,
                                                ActorModel& actor, const TrainConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  if (train_sets.empty()) throw EmptyDataset("no training sets");
  std::size_t total_samples = 0;
  for (const Dataset& set : train_sets) total_samples += set.samples.size();
  if (total_samples == 0) throw EmptyDataset("all training sets are empty");

  const long per_epoch = config.episodes_per_epoch > 0
                             ? config.episodes_per_epoch
                             : static_cast<long>(total_samples);
  const std::size_t min_fill = static_cast<std::size_t>(effective_min_fill(config));

  Rng rng(config.seed);
  EpsilonSchedule epsilon;
  ReplayBuffer buffer(config.buffer_capacity);
  TrainReport report;
  long learn_steps = 0;
  long env_steps = 0;
  const TaskKind kind = train_sets.front().kind;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    EpochStats stats;
    double loss_sum = 0.0;
    double return_sum = 0.0;
    for (long ep = 0; ep < per_epoch; ++ep) {
      const TaskSample& sample = sample_instance(train_sets, rng);
      // Exploration noise rides on the head that is being trained.
      const ActionChooser choose = [&](const StateRecord& s, const ActionSpace& space) {
        const SubtaskAction a = select_epsilon_greedy(actor, s, space, epsilon.value(), rng);
        epsilon.advance();
        return a;
      };
      const EpisodeResult episode = run_episode(env, sample, choose, executor);
      if (episode.failed) {
        // Nothing from a failed episode enters the buffer.
        ++stats.skipped_episodes;
        std::cerr << "[trainer] skipping episode on sample " << sample.sample_id << ": "
                  << episode.error << "\n";
        continue;
      }
      for (const Transition& t : episode.trace.transitions) {
        buffer.push(t);
        ++env_steps;
        if (buffer.size() >= min_fill) {
          loss_sum += learn_step(buffer, actor, config, rng, learn_steps);
          ++stats.learn_steps;
          sync_target(actor, learn_steps, config.target_sync);
        }
      }
      return_sum += episode.trace.total_return;
      ++stats.episodes;
    }
    stats.mean_loss = stats.learn_steps > 0 ? loss_sum / stats.learn_steps : 0.0;
    stats.mean_return = stats.episodes > 0 ? return_sum / stats.episodes : 0.0;
    stats.epsilon_end = epsilon.value();
    report.epochs.push_back(stats);
  }

  report.learn_steps = learn_steps;
  report.env_steps = env_steps;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  Checkpoint ckpt;
  ckpt.dimension = actor.provider->dimension();
  ckpt.w = actor.head.w;
  ckpt.b = actor.head.b;
  ckpt.target_w = actor.target_head.w;
  ckpt.target_b = actor.target_head.b;
  ckpt.learn_steps = learn_steps;
  ckpt.env_steps = env_steps;
  ckpt.epsilon_steps = epsilon.steps;
  ckpt.seed = config.seed;
  ckpt.kind = kind;
  ckpt.provider = actor.provider->descriptor();
  return {std::move(ckpt), std::move(report)};
}

}  // namespace rlap
