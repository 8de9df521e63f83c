#include "fuzzyrec/ensemble.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <future>
#include <set>
#include <thread>

#include "fuzzyrec/alignment.hpp"
#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/prng.hpp"
#include "fuzzyrec/sites.hpp"

namespace fuzzyrec {

std::vector<TrainInstance> training_instances(const Wordlist& wl) {
  if (!wl.proto_doculect)
    throw DataError("wordlist has no proto doculect configured");
  std::vector<TrainInstance> instances;
  for (const CognateSet& set : wl.sets) {
    if (!set.proto) continue;
    const Alignment joint = align_cognate_set(set, true);
    const std::vector<TrainingSite> sites = extract_training_sites(
        set, joint, wl.doculects, *wl.proto_doculect);
    for (const TrainingSite& ts : sites)
      instances.push_back({encode_site(ts.site), render_label(ts.label)});
  }
  if (instances.empty())
    throw DataError("no training material: no cognate set carries a proto form");
  return instances;
}

namespace {

void check_config(const EnsembleConfig& cfg) {
  if (cfg.samples < 1) throw DataError("samples must be positive");
  if (cfg.epochs < 1) throw DataError("epochs must be positive");
  if (!(cfg.dropout >= 0.0 && cfg.dropout < 1.0))
    throw DataError("dropout must lie in [0, 1)");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FUZZYREC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::uint64_t hash_instances(const std::vector<TrainInstance>& data) {
  std::uint64_t h = kFnvOffset;
  for (const TrainInstance& inst : data) {
    h = hash_bytes(inst.label, h);
    for (const Feature& f : inst.features) {
      h = hash_u64(static_cast<std::uint64_t>(f.kind), h);
      h = hash_bytes(f.doculect, h);
      h = hash_bytes(f.token, h);
      h = hash_u64(static_cast<std::uint64_t>(f.position), h);
    }
    h = hash_u64(0x1D, h);
  }
  return h;
}

}  // namespace

std::vector<Wordlist> draw_samples(const Wordlist& wl,
                                   const EnsembleConfig& cfg) {
  check_config(cfg);
  if (!wl.proto_doculect)
    throw DataError("wordlist has no proto doculect configured");

  std::vector<const CognateSet*> training;
  for (const CognateSet& set : wl.sets)
    if (set.proto) training.push_back(&set);
  if (training.empty())
    throw DataError("no training material: no cognate set carries a proto form");

  std::vector<std::pair<std::size_t, std::size_t>> universe;  // set, reflex
  for (std::size_t s = 0; s < training.size(); ++s)
    for (std::size_t r = 0; r < training[s]->reflexes.size(); ++r)
      universe.emplace_back(s, r);

  const std::size_t drop_count = static_cast<std::size_t>(
      std::floor(cfg.dropout * static_cast<double>(universe.size())));

  std::vector<Wordlist> samples;
  samples.reserve(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) {
    SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const std::vector<std::size_t> dropped =
        sample_without_replacement(universe.size(), drop_count, rng);
    std::set<std::pair<std::size_t, std::size_t>> gone;
    for (std::size_t d : dropped) gone.insert(universe[d]);

    Wordlist sample;
    sample.doculects = wl.doculects;
    sample.proto_doculect = wl.proto_doculect;
    for (std::size_t s = 0; s < training.size(); ++s) {
      CognateSet kept;
      kept.cogid = training[s]->cogid;
      kept.gloss = training[s]->gloss;
      kept.proto = training[s]->proto;
      for (std::size_t r = 0; r < training[s]->reflexes.size(); ++r)
        if (!gone.count({s, r})) kept.reflexes.push_back(training[s]->reflexes[r]);
      if (kept.reflexes.size() >= 2) sample.sets.push_back(std::move(kept));
    }
    if (sample.sets.empty())
      throw DataError("dropout left a sample with no usable cognate sets");
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::vector<LinearModel> train_ensemble(const Wordlist& wl,
                                        const EnsembleConfig& cfg) {
  check_config(cfg);
  const std::vector<Wordlist> samples = draw_samples(wl, cfg);

  std::vector<std::vector<TrainInstance>> streams;
  std::vector<std::uint64_t> seeds;
  streams.reserve(samples.size());
  seeds.reserve(samples.size());
  for (const Wordlist& sample : samples) {
    streams.push_back(training_instances(sample));
    seeds.push_back(
        mix_seed(mix_seed(cfg.seed, hash_instances(streams.back())), "train"));
  }

  const int n = static_cast<int>(samples.size());
  const int workers = std::min(resolve_threads(cfg.threads), n);
  std::vector<LinearModel> models(static_cast<std::size_t>(n));
  std::vector<std::future<void>> futures;
  futures.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w]() {
      for (int i = w; i < n; i += workers)
        models[static_cast<std::size_t>(i)] = LinearModel::train(
            streams[static_cast<std::size_t>(i)], cfg.epochs,
            seeds[static_cast<std::size_t>(i)]);
    }));
  }
  for (std::future<void>& f : futures) f.get();
  return models;
}

FuzzyReconstruction fuzzy_reconstruct(std::span<const LinearModel> models,
                                      const CognateSet& set,
                                      std::span<const std::string> doculects) {
  if (models.empty()) throw DataError("no models to predict with");

  const Alignment alignment = align_cognate_set(set, false);
  const std::vector<Site> sites =
      extract_prediction_sites(alignment, doculects);

  FuzzyReconstruction fr;
  fr.cogid = set.cogid;
  fr.gloss = set.gloss;
  fr.reflex_count = set.reflexes.size();
  fr.alignment_width = alignment.width();

  std::vector<FeatureVector> encoded;
  encoded.reserve(sites.size());
  for (const Site& site : sites) encoded.push_back(encode_site(site));

  for (const FeatureVector& fv : encoded) {
    FuzzySegment seg;
    seg.total = static_cast<int>(models.size());
    for (const LinearModel& model : models) seg.options[model.predict(fv)] += 1;
    const bool unanimous_gap =
        seg.options.size() == 1 && seg.options.begin()->first == kGap;
    if (!unanimous_gap) fr.segments.push_back(std::move(seg));
  }
  if (fr.segments.empty())
    throw DataError("models predicted only gaps for cognate set " + set.cogid);

  fr.certain = std::all_of(
      fr.segments.begin(), fr.segments.end(),
      [](const FuzzySegment& seg) { return seg.options.size() == 1; });
  return fr;
}

std::vector<FuzzyReconstruction> reconstruct_all(
    const Wordlist& wl, std::span<const LinearModel> models) {
  std::vector<FuzzyReconstruction> out;
  out.reserve(wl.sets.size());
  for (const CognateSet& set : wl.sets)
    out.push_back(fuzzy_reconstruct(models, set, wl.doculects));
  return out;
}

namespace {

std::vector<std::pair<std::string, int>> ordered_options(
    const FuzzySegment& seg) {
  std::vector<std::pair<std::string, int>> opts(seg.options.begin(),
                                                seg.options.end());
  std::sort(opts.begin(), opts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return opts;
}

}  // namespace

std::string render_fuzzy(const FuzzyReconstruction& fr, bool bare) {
  std::string out;
  for (std::size_t i = 0; i < fr.segments.size(); ++i) {
    if (i > 0) out += ' ';
    const auto opts = ordered_options(fr.segments[i]);
    if (opts.size() == 1) {
      out += opts[0].first;
      continue;
    }
    for (std::size_t j = 0; j < opts.size(); ++j) {
      if (j > 0) out += '|';
      out += opts[j].first;
      if (!bare) {
        out += ':';
        out += std::to_string(opts[j].second);
      }
    }
  }
  return out;
}

std::vector<Token> consensus(const FuzzyReconstruction& fr) {
  std::vector<Token> tokens;
  for (const FuzzySegment& seg : fr.segments) {
    const auto opts = ordered_options(seg);
    const ProtoLabel label = parse_label(opts[0].first);
    tokens.insert(tokens.end(), label.tokens.begin(), label.tokens.end());
  }
  return tokens;
}

FuzzyPattern parse_pattern(const std::string& text) {
  std::vector<std::string> chunks;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) {
        chunks.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) chunks.push_back(current);
  if (chunks.empty()) throw ParseError("empty fuzzy pattern");

  FuzzyPattern pattern;
  for (const std::string& chunk : chunks) {
    PatternSegment segment;
    std::size_t start = 0;
    while (start <= chunk.size()) {
      std::size_t pipe = chunk.find('|', start);
      if (pipe == std::string::npos) pipe = chunk.size();
      std::string option = chunk.substr(start, pipe - start);
      if (option.empty())
        throw ParseError("empty option in fuzzy pattern segment '" + chunk +
                         "'");
      PatternOption po;
      const std::size_t colon = option.rfind(':');
      if (colon != std::string::npos) {
        const std::string digits = option.substr(colon + 1);
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
              return std::isdigit(c) != 0;
            }))
          throw ParseError("malformed count suffix in option '" + option + "'");
        try {
          po.count = std::stoi(digits);
        } catch (const std::exception&) {
          throw ParseError("count out of range in option '" + option + "'");
        }
        if (po.count < 1)
          throw ParseError("count must be positive in option '" + option + "'");
        option.erase(colon);
        if (option.empty())
          throw ParseError("option with count but no label in segment '" +
                           chunk + "'");
      }
      if (option != kGap) {
        ProtoLabel label = parse_label(option);
        po.tokens = std::move(label.tokens);
      }
      segment.options.push_back(std::move(po));
      start = pipe + 1;
      if (pipe == chunk.size()) break;
    }
    pattern.segments.push_back(std::move(segment));
  }
  return pattern;
}

bool matches(const FuzzyPattern& pattern, std::span<const Token> form) {
  std::vector<char> reach(form.size() + 1, 0);
  reach[0] = 1;
  for (const PatternSegment& segment : pattern.segments) {
    std::vector<char> next(form.size() + 1, 0);
    for (std::size_t pos = 0; pos <= form.size(); ++pos) {
      if (!reach[pos]) continue;
      for (const PatternOption& option : segment.options) {
        const std::size_t k = option.tokens.size();
        if (pos + k > form.size()) continue;
        if (std::equal(option.tokens.begin(), option.tokens.end(),
                       form.begin() + static_cast<std::ptrdiff_t>(pos)))
          next[pos + k] = 1;
      }
    }
    reach = std::move(next);
  }
  return reach[form.size()] != 0;
}

bool matches(const std::string& pattern_text, std::span<const Token> form) {
  return matches(parse_pattern(pattern_text), form);
}

unsigned long long expansion_count(const FuzzyPattern& pattern) {
  unsigned long long n = 1;
  for (const PatternSegment& segment : pattern.segments) {
    const unsigned long long m = segment.options.size();
    if (m == 0) return 0;
    if (n > ULLONG_MAX / m) return ULLONG_MAX;
    n *= m;
  }
  return n;
}

unsigned long long expansion_count(const std::string& pattern_text) {
  return expansion_count(parse_pattern(pattern_text));
}

unsigned long long expansion_count(const FuzzyReconstruction& fr) {
  unsigned long long n = 1;
  for (const FuzzySegment& segment : fr.segments) {
    const unsigned long long m = segment.options.size();
    if (m == 0) return 0;
    if (n > ULLONG_MAX / m) return ULLONG_MAX;
    n *= m;
  }
  return n;
}

}  // namespace fuzzyrec
