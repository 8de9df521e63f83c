#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fuzzyrec/classifier.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

struct EnsembleConfig {
  int samples = 10;
  double dropout = 0.1;
  std::uint64_t seed = 42;
  int epochs = 20;
  int threads = 0;  // 0: FUZZYREC_THREADS env var, else hardware concurrency
};

// Labelled instances for every proto-bearing set, in wordlist order.
std::vector<TrainInstance> training_instances(const Wordlist& wl);

// Resampled training views: per sample, floor(dropout * reflex_count)
// reflexes are removed from the proto-bearing sets; sets left with fewer
// than two reflexes are omitted from that sample. Doculect inventory is
// inherited from wl so feature spaces stay aligned.
std::vector<Wordlist> draw_samples(const Wordlist& wl,
                                   const EnsembleConfig& cfg);

// One model per sample. Each member's training seed is derived from the
// run seed and a content hash of its instance stream, so identical samples
// produce identical models regardless of scheduling.
std::vector<LinearModel> train_ensemble(const Wordlist& wl,
                                        const EnsembleConfig& cfg);

struct FuzzySegment {
  std::map<std::string, int> options;  // rendered label -> tally
  int total = 0;
};

struct FuzzyReconstruction {
  std::string cogid;
  std::string gloss;  // the CONCEPT column
  std::vector<FuzzySegment> segments;
  bool certain = false;
  std::size_t reflex_count = 0;
  std::size_t alignment_width = 0;
};

// All models predict over one shared reflex alignment; per-column tallies
// become segments. Columns unanimously predicted as gaps are dropped.
FuzzyReconstruction fuzzy_reconstruct(std::span<const LinearModel> models,
                                      const CognateSet& set,
                                      std::span<const std::string> doculects);

std::vector<FuzzyReconstruction> reconstruct_all(
    const Wordlist& wl, std::span<const LinearModel> models);

// Segments joined by spaces; multi-option segments render options sorted by
// count descending then lexicographic, "label:count" joined by "|". bare
// omits the counts.
std::string render_fuzzy(const FuzzyReconstruction& fr, bool bare = false);

// Highest-count option per segment (ties lexicographic), gaps dropped,
// compound labels expanded.
std::vector<Token> consensus(const FuzzyReconstruction& fr);

struct PatternOption {
  std::vector<Token> tokens;  // empty encodes the gap choice "-"
  int count = 0;              // 0 when the text carries no tally
};

struct PatternSegment {
  std::vector<PatternOption> options;
};

struct FuzzyPattern {
  std::vector<PatternSegment> segments;
};

FuzzyPattern parse_pattern(const std::string& text);

// A pattern matches a form iff some choice of one option per segment,
// dropping gaps and expanding compounds, concatenates to the form.
bool matches(const FuzzyPattern& pattern, std::span<const Token> form);
bool matches(const std::string& pattern_text, std::span<const Token> form);

// Product of per-segment option counts, saturating at the type maximum.
unsigned long long expansion_count(const FuzzyPattern& pattern);
unsigned long long expansion_count(const std::string& pattern_text);
unsigned long long expansion_count(const FuzzyReconstruction& fr);

}  // namespace fuzzyrec
