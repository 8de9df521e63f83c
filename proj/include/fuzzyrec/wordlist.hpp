#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyrec {

// One IPA segment ("tʃ", "a", "⁵⁵"). Never contains whitespace.
using Token = std::string;

// Reserved pseudo-tokens. kGap marks an alignment gap, kMissing a language
// with no reflex in a cognate set. Neither may occur inside a Form.
inline constexpr std::string_view kGap = "-";
inline constexpr std::string_view kMissing = "Ø";  // Ø

inline bool is_gap(std::string_view t) { return t == kGap; }
inline bool is_missing(std::string_view t) { return t == kMissing; }
inline bool is_reserved(std::string_view t) { return is_gap(t) || is_missing(t); }

// One attested word form (a reflex, or a gold proto-form).
struct Form {
  std::string id;
  std::string doculect;
  std::string gloss;  // the CONCEPT column
  std::vector<Token> tokens;     // non-empty, no reserved tokens
  std::vector<Token> alignment;  // optional precomputed row, "-" gaps allowed

  bool operator==(const Form&) const = default;
};

struct CognateSet {
  std::string cogid;
  std::string gloss;  // the CONCEPT column
  std::vector<Form> reflexes;  // daughter languages only, >= 2
  std::optional<Form> proto;   // gold reconstruction when annotated

  bool operator==(const CognateSet&) const = default;
};

struct Wordlist {
  std::vector<std::string> doculects;  // daughter varieties, sorted
  std::optional<std::string> proto_doculect;
  std::vector<CognateSet> sets;  // first-appearance order

  const CognateSet* find(const std::string& cogid) const;
  std::size_t total_reflexes() const;
  bool has_training_sets() const;

  bool operator==(const Wordlist&) const = default;
};

struct ParseReport {
  Wordlist wordlist;
  std::vector<std::string> warnings;
  std::size_t dropped_sets = 0;   // sets with fewer than 2 reflexes
  std::size_t skipped_rows = 0;   // rows without usable TOKENS/DOCULECT
  std::size_t duplicate_reflexes = 0;
};

// Split a pre-tokenized TOKENS cell on runs of spaces. Reserved segments are
// rejected; empty fields from doubled spaces are discarded.
std::vector<Token> tokenize(std::string_view cell);

// Ingest the flat TSV projection (ID, DOCULECT, CONCEPT, TOKENS, COGID,
// optional ALIGNMENT; unknown columns ignored). Rows whose DOCULECT equals
// proto_doculect become the gold proto-form of their cognate set.
ParseReport parse_wordlist(std::istream& in,
                           const std::optional<std::string>& proto_doculect);
ParseReport parse_wordlist_file(const std::string& path,
                                const std::optional<std::string>& proto_doculect);

// Inverse of parse_wordlist; re-parsing the output yields an equal Wordlist.
std::string to_tsv(const Wordlist& wl);

}  // namespace fuzzyrec
