#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "rlap/actor.hpp"
#include "rlap/environment.hpp"
#include "rlap/executor.hpp"
#include "rlap/replay_buffer.hpp"
#include "rlap/sample.hpp"
#include "rlap/schedule.hpp"

namespace rlap {

struct TrainConfig {
  int epochs = 10;
  int episodes_per_epoch = 0;  // 0: one episode per training sample per epoch
  int batch_size = 32;
  double gamma = 0.5;
  int target_sync = 20;   // learn steps between target-head copies
  double learning_rate = 0.01;
  int min_fill = 0;       // 0: batch_size
  std::size_t buffer_capacity = ReplayBuffer::kDefaultCapacity;
  std::uint64_t seed = 0;
  bool double_q = false;  // pick the bootstrap action with the online head
};

struct EpochStats {
  double mean_loss = 0.0;
  double mean_return = 0.0;
  double epsilon_end = 0.0;
  long learn_steps = 0;
  long episodes = 0;
  long skipped_episodes = 0;
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  long learn_steps = 0;
  long env_steps = 0;
  double wall_seconds = 0.0;  // reported separately from the canonical report file
};

// Weights plus enough bookkeeping to resume or evaluate elsewhere.
struct Checkpoint {
  int format_version = 1;
  std::size_t dimension = 0;
  std::vector<double> w;
  double b = 0.0;
  std::vector<double> target_w;
  double target_b = 0.0;
  long learn_steps = 0;
  long env_steps = 0;
  long epsilon_steps = 0;
  std::uint64_t seed = 0;
  TaskKind kind{};
  nlohmann::json provider;
};

// Uniform over files, then uniform within the file. Throws EmptyDataset.
const TaskSample& sample_instance(const std::vector<Dataset>& train_sets, Rng& rng);

// Bellman target: reward alone at terminal transitions, else reward plus
// gamma times the best target-head value over the next action space. With
// double_q the best action is chosen by the online head instead.
double td_target(const Transition& t, const ActorModel& actor, double gamma,
                 bool double_q = false);

// One batch update: sample with replacement, average the squared TD error and
// its gradient, take one SGD step on the online head. Returns the batch loss
// and bumps learn_steps. Throws BufferTooSmall below the minimum fill.
double learn_step(const ReplayBuffer& buffer, ActorModel& actor, const TrainConfig& config,
                  Rng& rng, long& learn_steps);

// Copies online -> target every `period` learn steps.
void sync_target(ActorModel& actor, long learn_steps, int period);

std::pair<Checkpoint, TrainReport> run_training(const std::vector<Dataset>& train_sets,
                                                const Environment& env, Executor* executor,
                                                ActorModel& actor, const TrainConfig& config);

}  // namespace rlap
