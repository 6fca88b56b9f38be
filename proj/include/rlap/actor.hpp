#pragma once

#include <memory>
#include <vector>

#include "rlap/embedding.hpp"
#include "rlap/mdp.hpp"
#include "rlap/rng.hpp"

namespace rlap {

// Linear value head over an embedding: q = w . h + b.
struct QHead {
  std::vector<double> w;
  double b = 0.0;
  bool operator==(const QHead&) const = default;
};

// The trainable part of the planner: a frozen text encoder plus online and
// target heads. Copying the struct shares the provider.
struct ActorModel {
  std::shared_ptr<EmbeddingProvider> provider;
  QHead head;
  QHead target_head;
};

// Zero-initialized heads sized to the provider's dimension.
ActorModel make_actor(std::shared_ptr<EmbeddingProvider> provider);

enum class HeadSelect { online, target };

double q_value(const ActorModel& actor, const StateRecord& state,
               const SubtaskAction& action, HeadSelect which = HeadSelect::online);

// Argmax of the online head over the remaining actions; exact ties go to the
// lowest action_id. Throws EmptyActionSpace.
SubtaskAction select_greedy(const ActorModel& actor, const StateRecord& state,
                            const ActionSpace& space);

// Greedy with probability 1 - epsilon, otherwise uniform over the remaining
// actions. epsilon must lie in [0, 1].
SubtaskAction select_epsilon_greedy(const ActorModel& actor, const StateRecord& state,
                                    const ActionSpace& space, double epsilon, Rng& rng);

struct HeadGradient {
  std::vector<double> gw;
  double gb = 0.0;
  double loss = 0.0;  // squared error (y - q)^2
};

// Gradient of (y - q)^2 at h: gw = -2 (y - q) h, gb = -2 (y - q).
HeadGradient head_gradient(const QHead& head, const std::vector<double>& h, double y);

// One plain gradient step; inputs are untouched.
QHead sgd_update(const QHead& head, const std::vector<double>& gw, double gb,
                 double learning_rate);

}  // namespace rlap
