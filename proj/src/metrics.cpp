#include "rlap/metrics.hpp"

#include <algorithm>

#include "rlap/errors.hpp"
#include "rlap/text.hpp"

namespace rlap {

SlotF1 slot_f1(const std::vector<std::map<std::string, std::string>>& predictions,
               const std::vector<std::map<std::string, std::string>>& golds) {
  if (predictions.size() != golds.size()) {
    throw LengthMismatch("slot_f1: " + std::to_string(predictions.size()) +
                         " predictions vs " + std::to_string(golds.size()) + " golds");
  }
  long tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    for (const auto& [slot, arg] : predictions[i]) {
      if (canonical_text(arg).empty()) continue;  // nothing was predicted
      const auto gold = golds[i].find(slot);
      if (gold != golds[i].end() && canonical_eq(arg, gold->second)) {
        ++tp;
      } else {
        ++fp;
      }
    }
    for (const auto& [slot, gold_arg] : golds[i]) {
      const auto pred = predictions[i].find(slot);
      const bool hit = pred != predictions[i].end() && canonical_eq(pred->second, gold_arg) &&
                       !canonical_text(pred->second).empty();
      if (!hit) ++fn;
    }
  }
  SlotF1 out;
  if (tp + fp == 0) {
    out.degenerate = true;
  } else {
    out.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn == 0) {
    out.degenerate = true;
  } else {
    out.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  if (out.precision + out.recall > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

double cac(const std::vector<std::string>& finals, const std::vector<std::string>& golds) {
  if (finals.size() != golds.size()) {
    throw LengthMismatch("cac: " + std::to_string(finals.size()) + " finals vs " +
                         std::to_string(golds.size()) + " golds");
  }
  if (finals.empty()) return 0.0;
  long correct = 0;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    if (canonical_eq(finals[i], golds[i])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(finals.size());
}

double soc_single(const std::vector<int>& predicted, const std::vector<int>& gold) {
  const std::size_t n = gold.size();
  if (n < 2) throw NotAPermutation("soc needs at least 2 items per order");
  std::map<int, std::size_t> rank;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rank.emplace(gold[i], i).second) {
      throw NotAPermutation("gold order repeats item " + std::to_string(gold[i]));
    }
  }
  if (predicted.size() != n) {
    throw NotAPermutation("predicted order has " + std::to_string(predicted.size()) +
                          " items, gold has " + std::to_string(n));
  }
  std::vector<std::size_t> ranks;
  ranks.reserve(n);
  std::vector<bool> seen(n, false);
  for (const int item : predicted) {
    const auto it = rank.find(item);
    if (it == rank.end() || seen[it->second]) {
      throw NotAPermutation("predicted order is not a permutation of gold");
    }
    seen[it->second] = true;
    ranks.push_back(it->second);
  }
  long concordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ranks[i] < ranks[j]) ++concordant;
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(concordant) / pairs;
}

double soc(const std::vector<std::vector<int>>& predicted,
           const std::vector<std::vector<int>>& golds) {
  if (predicted.size() != golds.size()) {
    throw LengthMismatch("soc: " + std::to_string(predicted.size()) + " predictions vs " +
                         std::to_string(golds.size()) + " golds");
  }
  if (predicted.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    sum += soc_single(predicted[i], golds[i]);
  }
  return sum / static_cast<double>(predicted.size());
}

double bac(const std::vector<std::map<int, std::string>>& filled,
           const std::vector<std::map<int, std::string>>& golds) {
  if (filled.size() != golds.size()) {
    throw LengthMismatch("bac: " + std::to_string(filled.size()) + " filled vs " +
                         std::to_string(golds.size()) + " golds");
  }
  long total = 0, correct = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    total += static_cast<long>(golds[i].size());
    for (const auto& [blank, gold_sentence] : golds[i]) {
      const auto it = filled[i].find(blank);
      if (it != filled[i].end() && canonical_eq(it->second, gold_sentence)) ++correct;
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace rlap
