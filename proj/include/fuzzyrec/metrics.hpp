#pragma once

#include <span>
#include <string>
#include <vector>

#include "fuzzyrec/ensemble.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

enum class SizeMode { ReflexRows, AlignmentColumns };

struct CategoryScore {
  int count = 0;
  double proportion = 0.0;  // unrounded; displays round to two decimals
  double mean_alignment_size = 0.0;
};

// A reconstruction is correct only when it is certain AND its consensus
// equals the gold proto tokens; everything else counts as false.
struct SummaryScores {
  int total = 0;
  CategoryScore correct;
  CategoryScore incorrect;  // displayed under the heading "false"
  CategoryScore certain;
  CategoryScore uncertain;
};

// Scores the reconstructions whose cognate set carries a gold proto-form.
SummaryScores score_predictions(std::span<const FuzzyReconstruction> frs,
                                const Wordlist& gold,
                                SizeMode mode = SizeMode::ReflexRows);

struct ConfusedPair {
  std::string first;  // lexicographically before second
  std::string second;
  int frequency = 0;  // number of cognate sets exhibiting the pair
};

// Unordered pairs of options co-occurring in a segment, counted at most
// once per cognate set, sorted by frequency descending then pair order.
std::vector<ConfusedPair> confused_pairs(
    std::span<const FuzzyReconstruction> frs);

std::string evaluate_tsv(const std::string& dataset,
                         const SummaryScores& scores);
std::string confusions_tsv(const std::string& dataset,
                           std::span<const ConfusedPair> pairs);

}  // namespace fuzzyrec
