#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

// Coarse sound classes, just enough signal to align short word forms.
enum class SoundClass {
  Vowel,
  Stop,
  Fricative,
  Affricate,
  Nasal,
  Liquid,
  Glide,
  Tone,
  Laryngeal,
  Other
};

const char* to_string(SoundClass c);

// Total over tokens: explicit override table first, then the base character
// (first scalar after stripping combining marks and aspiration/
// pre-glottalization modifier letters).
SoundClass classify(const Token& token);

// +2 identical, +1 same class, -1 otherwise; gaps score -1 against tokens
// and 0 against each other.
int score(const Token& a, const Token& b);

struct Alignment {
  std::vector<std::string> doculects;   // row labels
  std::vector<std::vector<Token>> rows; // rectangular, "-" gaps

  std::size_t width() const { return rows.empty() ? 0 : rows[0].size(); }
  const std::vector<Token>* row(const std::string& doculect) const;
};

// Needleman-Wunsch global alignment, linear gap cost, deterministic
// traceback (diagonal preferred over up over left).
Alignment align_pair(const Form& x, const Form& y);

// Progressive profile alignment of a cognate set, longest form first.
// Validated precomputed ALIGNMENT rows take precedence when the whole set
// carries them. include_proto selects the joint (training) view.
Alignment align_cognate_set(const CognateSet& set, bool include_proto);

}  // namespace fuzzyrec
