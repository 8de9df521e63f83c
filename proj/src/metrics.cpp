#include "fuzzyrec/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "fuzzyrec/errors.hpp"

namespace fuzzyrec {

namespace {

struct Accumulator {
  int count = 0;
  double size_sum = 0.0;

  void add(double size) {
    count += 1;
    size_sum += size;
  }

  CategoryScore finish(int total) const {
    CategoryScore score;
    score.count = count;
    score.proportion =
        total > 0 ? static_cast<double>(count) / static_cast<double>(total)
                  : 0.0;
    score.mean_alignment_size =
        count > 0 ? size_sum / static_cast<double>(count) : 0.0;
    return score;
  }
};

}  // namespace

SummaryScores score_predictions(std::span<const FuzzyReconstruction> frs,
                                const Wordlist& gold, SizeMode mode) {
  Accumulator correct, incorrect, certain, uncertain;
  int total = 0;
  for (const FuzzyReconstruction& fr : frs) {
    const CognateSet* set = gold.find(fr.cogid);
    if (!set || !set->proto) continue;
    const double size = mode == SizeMode::ReflexRows
                            ? static_cast<double>(fr.reflex_count)
                            : static_cast<double>(fr.alignment_width);
    total += 1;
    const bool is_correct = fr.certain && consensus(fr) == set->proto->tokens;
    (is_correct ? correct : incorrect).add(size);
    (fr.certain ? certain : uncertain).add(size);
  }
  if (total == 0)
    throw DataError("nothing to score: no reconstruction matches a gold proto-form");

  SummaryScores scores;
  scores.total = total;
  scores.correct = correct.finish(total);
  scores.incorrect = incorrect.finish(total);
  scores.certain = certain.finish(total);
  scores.uncertain = uncertain.finish(total);
  return scores;
}

std::vector<ConfusedPair> confused_pairs(
    std::span<const FuzzyReconstruction> frs) {
  std::map<std::pair<std::string, std::string>, int> tally;
  for (const FuzzyReconstruction& fr : frs) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const FuzzySegment& seg : fr.segments) {
      for (auto a = seg.options.begin(); a != seg.options.end(); ++a) {
        auto b = a;
        for (++b; b != seg.options.end(); ++b)
          seen.insert({a->first, b->first});
      }
    }
    for (const auto& pair : seen) tally[pair] += 1;
  }

  std::vector<ConfusedPair> rows;
  rows.reserve(tally.size());
  for (const auto& [pair, freq] : tally)
    rows.push_back({pair.first, pair.second, freq});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ConfusedPair& a, const ConfusedPair& b) {
                     return a.frequency > b.frequency;
                   });
  return rows;
}

namespace {

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void append_score_row(std::string& out, const std::string& dataset,
                      const char* name, const CategoryScore& score) {
  out += dataset;
  out += '\t';
  out += name;
  out += '\t';
  out += std::to_string(score.count);
  out += '\t';
  out += two_decimals(score.proportion);
  out += '\t';
  out += two_decimals(score.mean_alignment_size);
  out += '\n';
}

}  // namespace

std::string evaluate_tsv(const std::string& dataset,
                         const SummaryScores& scores) {
  std::string out = "Dataset\tPrediction\tCount\tProportion\tAlignment Size\n";
  append_score_row(out, dataset, "correct", scores.correct);
  append_score_row(out, dataset, "false", scores.incorrect);
  append_score_row(out, dataset, "certain", scores.certain);
  append_score_row(out, dataset, "uncertain", scores.uncertain);
  return out;
}

std::string confusions_tsv(const std::string& dataset,
                           std::span<const ConfusedPair> pairs) {
  std::string out = "Dataset\tSound A\tSound B\tFrequency\n";
  for (const ConfusedPair& pair : pairs) {
    out += dataset;
    out += '\t';
    out += pair.first;
    out += '\t';
    out += pair.second;
    out += '\t';
    out += std::to_string(pair.frequency);
    out += '\n';
  }
  return out;
}

}  // namespace fuzzyrec
