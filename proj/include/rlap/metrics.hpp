#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rlap {

struct SlotF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;  // a zero denominator was coerced to 0
};

// Micro-averaged slot scores. A predicted slot counts as a true positive only
// when its argument matches the gold argument for that slot exactly (after
// whitespace canonicalization); empty predictions are treated as absent.
// Inputs are aligned per sample. Throws LengthMismatch.
SlotF1 slot_f1(const std::vector<std::map<std::string, std::string>>& predictions,
               const std::vector<std::map<std::string, std::string>>& golds);

// Fraction of final texts equal to gold under whitespace canonicalization.
double cac(const std::vector<std::string>& finals, const std::vector<std::string>& golds);

// Mean over samples of (concordant pairs) / C(n, 2) between a predicted order
// and its gold order; 1 minus the normalized Kendall tau distance. Orders name
// items by id. Throws NotAPermutation when a predicted order does not permute
// its gold (or n < 2), LengthMismatch on ragged input.
double soc(const std::vector<std::vector<int>>& predicted,
           const std::vector<std::vector<int>>& golds);

// Single-pair version used by the batch form and per-sample scoring.
double soc_single(const std::vector<int>& predicted, const std::vector<int>& gold);

// Micro-averaged blank accuracy: correctly filled blanks over all gold
// blanks. Samples without blanks contribute nothing; an all-empty gold set
// scores 0. Throws LengthMismatch.
double bac(const std::vector<std::map<int, std::string>>& filled,
           const std::vector<std::map<int, std::string>>& golds);

}  // namespace rlap
