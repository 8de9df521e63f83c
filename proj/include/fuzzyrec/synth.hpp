#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fuzzyrec/ensemble.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

enum class RuleContext { Any, Initial, Final };

// Ordered per doculect; the first rule whose source and context match a
// segment wins. A kGap target deletes the segment.
struct ChangeRule {
  std::string doculect;
  Token source;
  Token target;
  RuleContext context = RuleContext::Any;
};

struct SynthNoise {
  int n_corrupted_reflexes = 0;
  int n_dropped_reflexes = 0;
};

struct SynthSpec {
  std::vector<Token> inventory;  // disjoint from reserved tokens
  int n_doculects = 0;
  int n_cognate_sets = 0;
  int min_form_length = 1;
  int max_form_length = 1;
  std::vector<ChangeRule> rules;
  std::uint64_t seed = 0;
  SynthNoise noise;
  int min_attestation = 0;  // 0 disables the floor
  std::string proto_name = "Proto";
};

// 0-based index to the generated doculect name ("L01", "L02", ...).
std::string doculect_name(int index);

// Key-value text: "key = value" lines, '#' comments. Repeated "rule" keys
// append "DOCULECT SOURCE TARGET CONTEXT" entries; TARGET "-" deletes.
SynthSpec parse_synth_spec(std::istream& in);
SynthSpec parse_synth_spec_file(const std::string& path);

struct Corruption {
  std::string cogid;
  std::string doculect;
  std::size_t position = 0;  // alignment frame column
  Token original;
  Token replacement;
};

struct DroppedReflex {
  std::string cogid;
  std::string doculect;
};

struct SynthResult {
  Wordlist wordlist;
  std::vector<Corruption> corruptions;
  std::vector<DroppedReflex> drops;
};

// Deterministic for a given spec. Proto-forms are drawn from the inventory,
// reflexes derived by rule, then the requested number of reflexes corrupted
// (one substituted token each) and dropped. When min_attestation > 0 the
// proto draws are adjusted until every correspondence pattern in the clean
// data is attested at least that often.
SynthResult generate(const SynthSpec& spec);

// Built-in demonstration family: eight doculects, regular changes, and one
// engineered near-merger (b and d kept apart only by L07 and L08), with the
// attestation floor at 3. n_corrupted > 0 adds that many corrupted reflexes.
std::string demo_spec_text(int n_corrupted = 0);
SynthSpec demo_spec(int n_corrupted = 0);

// True when no two identical correspondence patterns carry different proto
// labels across the wordlist's training sites.
bool is_conflict_free(const Wordlist& wl, std::string* offending = nullptr);

struct OracleReport {
  bool passed = false;
  std::vector<std::string> lines;
};

// Clean data (no corruptions recorded): every reconstruction must be certain
// and its consensus must equal the gold proto-form. Noisy data: sets sharing
// no correspondence pattern with a corrupted set must stay certain, at least
// one set must be uncertain, and every uncertain set must be a corrupted set
// or share a pattern with one.
OracleReport oracle_check(const SynthResult& synth,
                          std::span<const FuzzyReconstruction> frs);

}  // namespace fuzzyrec
