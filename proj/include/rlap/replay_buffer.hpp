#pragma once

#include <vector>

#include "rlap/errors.hpp"
#include "rlap/mdp.hpp"
#include "rlap/rng.hpp"

namespace rlap {

// Bounded FIFO transition store with uniform sampling (with replacement).
class ReplayBuffer {
 public:
  static constexpr std::size_t kDefaultCapacity = 5000;

  explicit ReplayBuffer(std::size_t capacity = kDefaultCapacity) : capacity_(capacity) {
    if (capacity_ == 0) throw Error("replay capacity must be positive");
  }

  void push(Transition t) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(t));
      return;
    }
    items_[next_] = std::move(t);  // overwrite the oldest slot
    next_ = (next_ + 1) % capacity_;
  }

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }

  const Transition& sample_one(Rng& rng) const {
    if (items_.empty()) throw BufferTooSmall("cannot sample from an empty buffer");
    return items_[uniform_index(rng, items_.size())];
  }

  std::vector<const Transition*> sample_batch(std::size_t n, Rng& rng) const {
    if (items_.empty()) throw BufferTooSmall("cannot sample from an empty buffer");
    std::vector<const Transition*> batch;
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      batch.push_back(&items_[uniform_index(rng, items_.size())]);
    }
    return batch;
  }

  // Every stored transition, eviction order not implied.
  const std::vector<Transition>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::vector<Transition> items_;
  std::size_t next_ = 0;
};

}  // namespace rlap
