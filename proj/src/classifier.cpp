#include "fuzzyrec/classifier.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "fuzzyrec/alignment.hpp"
#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/prng.hpp"

namespace fuzzyrec {

FeatureVector encode_site(const Site& site) {
  FeatureVector fv;
  fv.reserve(site.pattern.size() + 3);
  for (const auto& [doculect, token] : site.pattern)
    fv.push_back({Feature::Kind::Corr, doculect, token, 0});
  const int capped = static_cast<int>(std::min<std::size_t>(site.index, 9));
  fv.push_back({Feature::Kind::Index, "", "", capped});
  if (site.is_initial) fv.push_back({Feature::Kind::Initial, "", "", 0});
  if (site.is_final) fv.push_back({Feature::Kind::Final, "", "", 0});
  std::sort(fv.begin(), fv.end());
  return fv;
}

namespace {

using IntWeights = std::map<std::string, std::map<Feature, long long>>;

const std::string& argmax_int(const IntWeights& weights,
                              const std::vector<std::string>& classes,
                              const FeatureVector& features) {
  const std::string* best = nullptr;
  long long best_score = 0;
  for (const std::string& c : classes) {
    long long s = 0;
    auto it = weights.find(c);
    if (it != weights.end()) {
      for (const Feature& f : features) {
        auto wit = it->second.find(f);
        if (wit != it->second.end()) s += wit->second;
      }
    }
    if (!best || s > best_score) {
      best = &c;
      best_score = s;
    }
  }
  return *best;
}

}  // namespace

LinearModel LinearModel::train(std::span<const TrainInstance> data, int epochs,
                               std::uint64_t seed) {
  if (data.empty()) throw DataError("no training instances");
  if (epochs < 1) throw DataError("epochs must be positive");

  std::set<std::string> labels;
  for (const TrainInstance& inst : data) labels.insert(inst.label);

  LinearModel model;
  model.classes_.assign(labels.begin(), labels.end());
  model.epochs_ = epochs;
  model.seed_ = seed;
  if (model.classes_.size() == 1) return model;  // weights stay zero

  IntWeights w;
  IntWeights accum;  // update deltas scaled by (t - 1), for averaging
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);

  long long t = 1;
  const long long total =
      static_cast<long long>(epochs) * static_cast<long long>(data.size());
  for (int e = 0; e < epochs; ++e) {
    shuffle(order, rng);
    for (std::size_t idx : order) {
      const TrainInstance& inst = data[idx];
      const std::string& guess = argmax_int(w, model.classes_, inst.features);
      if (guess != inst.label) {
        for (const Feature& f : inst.features) {
          w[inst.label][f] += 1;
          accum[inst.label][f] += t - 1;
          w[guess][f] -= 1;
          accum[guess][f] -= t - 1;
        }
      }
      ++t;
    }
  }

  for (const auto& [c, fw] : w) {
    for (const auto& [f, value] : fw) {
      const double avg = static_cast<double>(value) -
                         static_cast<double>(accum[c][f]) /
                             static_cast<double>(total);
      if (avg != 0.0) model.weights_[c][f] = avg;
    }
  }
  return model;
}

std::string LinearModel::predict(const FeatureVector& features) const {
  if (classes_.empty()) throw DataError("model has no classes");
  const std::string* best = nullptr;
  double best_score = 0.0;
  for (const std::string& c : classes_) {
    double s = 0.0;
    auto it = weights_.find(c);
    if (it != weights_.end()) {
      for (const Feature& f : features) {
        auto wit = it->second.find(f);
        if (wit != it->second.end()) s += wit->second;
      }
    }
    if (!best || s > best_score) {
      best = &c;
      best_score = s;
    }
  }
  return *best;
}

bool operator==(const LinearModel& a, const LinearModel& b) {
  return a.classes_ == b.classes_ && a.weights_ == b.weights_ &&
         a.epochs_ == b.epochs_ && a.seed_ == b.seed_;
}

namespace {

constexpr char kModelMagic[] = "fuzzyrec-model";
constexpr char kModelVersion[] = "v1";

std::string format_weight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

const char* kind_name(Feature::Kind kind) {
  switch (kind) {
    case Feature::Kind::Corr: return "corr";
    case Feature::Kind::Index: return "index";
    case Feature::Kind::Initial: return "initial";
    case Feature::Kind::Final: return "final";
  }
  return "corr";
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string next_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("truncated model file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

long long parse_count(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(text, &pos);
    if (pos != text.size() || v < 0) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " in model file: '" + text +
                     "'");
  }
}

}  // namespace

void LinearModel::save(std::ostream& out) const {
  out << kModelMagic << '\t' << kModelVersion << '\n';
  out << "epochs\t" << epochs_ << '\n';
  out << "seed\t" << seed_ << '\n';
  out << "classes\t" << classes_.size() << '\n';
  for (const std::string& c : classes_) out << "class\t" << c << '\n';
  std::size_t n_weights = 0;
  for (const auto& [c, fw] : weights_) n_weights += fw.size();
  out << "weights\t" << n_weights << '\n';
  for (const auto& [c, fw] : weights_) {
    for (const auto& [f, value] : fw) {
      out << "w\t" << c << '\t' << kind_name(f.kind);
      switch (f.kind) {
        case Feature::Kind::Corr:
          out << '\t' << f.doculect << '\t' << f.token;
          break;
        case Feature::Kind::Index:
          out << '\t' << f.position;
          break;
        case Feature::Kind::Initial:
        case Feature::Kind::Final:
          break;
      }
      out << '\t' << format_weight(value) << '\n';
    }
  }
  out << "end\n";
}

LinearModel LinearModel::load(std::istream& in) {
  auto expect = [](const std::vector<std::string>& fields, std::size_t n,
                   const char* what) {
    if (fields.size() != n)
      throw ParseError(std::string("malformed ") + what + " line in model file");
  };

  std::vector<std::string> fields = split_tabs(next_line(in));
  expect(fields, 2, "header");
  if (fields[0] != kModelMagic)
    throw ParseError("not a model file (bad magic)");
  if (fields[1] != kModelVersion)
    throw ParseError("unsupported model version '" + fields[1] + "'");

  LinearModel model;
  fields = split_tabs(next_line(in));
  expect(fields, 2, "epochs");
  if (fields[0] != "epochs") throw ParseError("expected epochs line");
  model.epochs_ = static_cast<int>(parse_count(fields[1], "epoch count"));

  fields = split_tabs(next_line(in));
  expect(fields, 2, "seed");
  if (fields[0] != "seed") throw ParseError("expected seed line");
  try {
    model.seed_ = std::stoull(fields[1]);
  } catch (const std::exception&) {
    throw ParseError("bad seed in model file: '" + fields[1] + "'");
  }

  fields = split_tabs(next_line(in));
  expect(fields, 2, "classes");
  if (fields[0] != "classes") throw ParseError("expected classes line");
  const long long n_classes = parse_count(fields[1], "class count");
  for (long long i = 0; i < n_classes; ++i) {
    fields = split_tabs(next_line(in));
    expect(fields, 2, "class");
    if (fields[0] != "class") throw ParseError("expected class line");
    model.classes_.push_back(fields[1]);
  }
  if (!std::is_sorted(model.classes_.begin(), model.classes_.end()))
    throw ParseError("model classes are not sorted");

  fields = split_tabs(next_line(in));
  expect(fields, 2, "weights");
  if (fields[0] != "weights") throw ParseError("expected weights line");
  const long long n_weights = parse_count(fields[1], "weight count");
  for (long long i = 0; i < n_weights; ++i) {
    fields = split_tabs(next_line(in));
    if (fields.size() < 4 || fields[0] != "w")
      throw ParseError("malformed weight line in model file");
    const std::string& cls = fields[1];
    if (!std::binary_search(model.classes_.begin(), model.classes_.end(), cls))
      throw ParseError("weight for unknown class '" + cls + "'");
    Feature f;
    const std::string& kind = fields[2];
    std::size_t weight_field = 0;
    if (kind == "corr") {
      expect(fields, 6, "corr weight");
      f.kind = Feature::Kind::Corr;
      f.doculect = fields[3];
      f.token = fields[4];
      weight_field = 5;
    } else if (kind == "index") {
      expect(fields, 5, "index weight");
      f.kind = Feature::Kind::Index;
      f.position = static_cast<int>(parse_count(fields[3], "feature position"));
      weight_field = 4;
    } else if (kind == "initial" || kind == "final") {
      expect(fields, 4, "flag weight");
      f.kind = kind == "initial" ? Feature::Kind::Initial : Feature::Kind::Final;
      weight_field = 3;
    } else {
      throw ParseError("unknown feature kind '" + kind + "' in model file");
    }
    double value = 0.0;
    try {
      std::size_t pos = 0;
      value = std::stod(fields[weight_field], &pos);
      if (pos != fields[weight_field].size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad weight value '" + fields[weight_field] + "'");
    }
    model.weights_[cls][f] = value;
  }
  if (next_line(in) != "end") throw ParseError("missing end marker");
  return model;
}

void save_model_file(const LinearModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file: " + path);
  model.save(out);
  if (!out) throw DataError("error writing model file: " + path);
}

LinearModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model file: " + path);
  return LinearModel::load(in);
}

void PatternMemory::add(const Site& site, const std::string& label) {
  counts_[site.pattern][label] += 1;
  global_[label] += 1;
}

namespace {

const std::string& majority_label(const std::map<std::string, int>& counts) {
  const std::string* best = nullptr;
  int best_count = 0;
  for (const auto& [label, count] : counts) {
    if (!best || count > best_count) {
      best = &label;
      best_count = count;
    }
  }
  return *best;
}

}  // namespace

std::string PatternMemory::predict(const Site& site) const {
  if (counts_.empty()) throw DataError("pattern memory is empty");

  auto exact = counts_.find(site.pattern);
  if (exact != counts_.end()) return majority_label(exact->second);

  // Partial match: most shared attested entries, then most observations.
  const std::map<std::string, int>* best = nullptr;
  std::size_t best_shared = 0;
  int best_total = 0;
  for (const auto& [pattern, labels] : counts_) {
    const std::size_t n = std::min(pattern.size(), site.pattern.size());
    std::size_t shared = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_missing(pattern[i].second) || is_missing(site.pattern[i].second))
        continue;
      if (pattern[i].second == site.pattern[i].second) ++shared;
    }
    if (shared == 0) continue;
    int total = 0;
    for (const auto& [label, count] : labels) total += count;
    if (!best || shared > best_shared ||
        (shared == best_shared && total > best_total)) {
      best = &labels;
      best_shared = shared;
      best_total = total;
    }
  }
  if (best) return majority_label(*best);
  return majority_label(global_);
}

std::vector<Token> reconstruct_form(const LinearModel& model,
                                    const CognateSet& set,
                                    std::span<const std::string> doculects) {
  const Alignment alignment = align_cognate_set(set, false);
  const std::vector<Site> sites =
      extract_prediction_sites(alignment, doculects);
  std::vector<ProtoLabel> labels;
  labels.reserve(sites.size());
  for (const Site& site : sites)
    labels.push_back(parse_label(model.predict(encode_site(site))));
  return assemble_form(labels);
}

}  // namespace fuzzyrec
