#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyrec/alignment.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

// One alignment column as a correspondence pattern. Every daughter doculect
// of the wordlist has exactly one entry: its aligned token, "-" for a gap,
// "Ø" when the language has no reflex in the set.
struct Site {
  std::vector<std::pair<std::string, Token>> pattern;  // sorted by doculect
  std::size_t index = 0;  // position within the site sequence
  bool is_initial = false;
  bool is_final = false;
};

// Label of a training site: a sequence of proto tokens, or a gap. Compound
// labels ("a+n") arise when degenerate columns are folded into a neighbour.
struct ProtoLabel {
  std::vector<Token> tokens;  // empty means the gap label "-"

  bool is_gap_label() const { return tokens.empty(); }
  bool operator==(const ProtoLabel&) const = default;
};

std::string render_label(const ProtoLabel& label);
ProtoLabel parse_label(const std::string& rendered);

struct TrainingSite {
  Site site;
  ProtoLabel label;
};

// Supervised instances from a joint (proto-included) alignment. Columns
// without any reflex token are degenerate: their proto token is folded into
// the nearest preceding site's label (the following one at the left edge).
std::vector<TrainingSite> extract_training_sites(
    const CognateSet& set, const Alignment& joint,
    std::span<const std::string> doculects, const std::string& proto_doculect);

// Unlabelled sites from a reflex-only alignment, one per column.
std::vector<Site> extract_prediction_sites(
    const Alignment& reflex_alignment, std::span<const std::string> doculects);

// Concatenate labels into proto tokens, expanding compounds and dropping
// gap labels. An empty result is an error.
std::vector<Token> assemble_form(std::span<const ProtoLabel> labels);

}  // namespace fuzzyrec
