#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fuzzyrec/sites.hpp"
#include "fuzzyrec/wordlist.hpp"

namespace fuzzyrec {

struct Feature {
  enum class Kind { Corr, Index, Initial, Final };

  Kind kind = Kind::Corr;
  std::string doculect;  // Corr only
  Token token;           // Corr only
  int position = 0;      // Index only, capped at 9

  auto operator<=>(const Feature&) const = default;
};

using FeatureVector = std::vector<Feature>;  // sorted, duplicate-free

FeatureVector encode_site(const Site& site);

struct TrainInstance {
  FeatureVector features;
  std::string label;  // rendered proto label
};

// Multiclass averaged perceptron. Training is deterministic for a given
// (data order, epochs, seed) triple; ties always resolve to the
// lexicographically smallest class.
class LinearModel {
 public:
  static LinearModel train(std::span<const TrainInstance> data, int epochs,
                           std::uint64_t seed);

  std::string predict(const FeatureVector& features) const;

  const std::vector<std::string>& classes() const { return classes_; }
  int epochs() const { return epochs_; }
  std::uint64_t seed() const { return seed_; }

  void save(std::ostream& out) const;
  static LinearModel load(std::istream& in);

 private:
  std::vector<std::string> classes_;  // sorted
  std::map<std::string, std::map<Feature, double>> weights_;
  int epochs_ = 0;
  std::uint64_t seed_ = 0;

  friend bool operator==(const LinearModel&, const LinearModel&);
};

bool operator==(const LinearModel& a, const LinearModel& b);

void save_model_file(const LinearModel& model, const std::string& path);
LinearModel load_model_file(const std::string& path);

// Frequency baseline: remembers correspondence patterns verbatim and answers
// with the majority label of the best-matching stored pattern.
class PatternMemory {
 public:
  void add(const Site& site, const std::string& label);
  std::string predict(const Site& site) const;
  bool empty() const { return counts_.empty(); }

 private:
  using PatternKey = std::vector<std::pair<std::string, Token>>;
  std::map<PatternKey, std::map<std::string, int>> counts_;
  std::map<std::string, int> global_;
};

// Align the set's reflexes, predict a label per column, assemble the form.
std::vector<Token> reconstruct_form(const LinearModel& model,
                                    const CognateSet& set,
                                    std::span<const std::string> doculects);

}  // namespace fuzzyrec
