#pragma once

#include <cstdint>
#include <memory>

#include "rlap/actor.hpp"
#include "rlap/mdp.hpp"
#include "rlap/rng.hpp"

namespace rlap {

// How actions get picked at evaluation time: the trained head, a seeded
// uniform baseline, or the plain enumeration order.
class Policy {
 public:
  enum class Kind { learned, random, fixed_sequence };

  static Policy learned(std::shared_ptr<ActorModel> actor);
  static Policy random(std::uint64_t seed);
  static Policy fixed_sequence();

  Kind kind() const { return kind_; }
  SubtaskAction choose(const StateRecord& state, const ActionSpace& space);

 private:
  Policy(Kind kind, std::shared_ptr<ActorModel> actor, std::uint64_t seed)
      : kind_(kind), actor_(std::move(actor)), rng_(seed) {}

  Kind kind_;
  std::shared_ptr<ActorModel> actor_;
  Rng rng_;
};

}  // namespace rlap
