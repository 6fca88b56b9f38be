#include "rlap/synthetic.hpp"

#include <numeric>

#include "rlap/errors.hpp"
#include "rlap/rng.hpp"
#include "rlap/text.hpp"

namespace rlap {

const std::array<std::string_view, 8>& ordinal_words() {
  static const std::array<std::string_view, 8> words{
      "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth"};
  return words;
}

std::vector<TaskSample> gen_synthetic(const SyntheticConfig& config) {
  if (config.k < 2 || config.k > 8) {
    throw Error("synthetic k must be in [2, 8], got " + std::to_string(config.k));
  }
  if (config.n_samples <= 0) {
    throw Error("synthetic n_samples must be positive");
  }

  Rng rng(config.seed);
  std::vector<TaskSample> samples;
  samples.reserve(config.n_samples);
  for (int i = 0; i < config.n_samples; ++i) {
    std::vector<int> order(config.k);
    std::iota(order.begin(), order.end(), 0);
    shuffle_vec(order, rng);  // order[rank] = candidate id at that rank

    std::vector<std::string> candidates(config.k);
    for (int rank = 0; rank < config.k; ++rank) {
      candidates[order[rank]] = std::string(ordinal_words()[rank]) + " segment";
    }

    TaskSample s;
    s.sample_id = "syn-" + std::to_string(config.k) + "-" + std::to_string(i);
    s.kind = TaskKind::synthetic;
    s.language = "en";
    s.candidates = std::move(candidates);
    s.context = join(s.candidates, " ");
    s.ground_truth.gold_order = std::move(order);
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace rlap
