#include "fuzzyrec/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "fuzzyrec/alignment.hpp"
#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/prng.hpp"
#include "fuzzyrec/sites.hpp"

namespace fuzzyrec {

std::string doculect_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "L%02d", index + 1);
  return buf;
}

namespace {

std::vector<std::string> split_spaces(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) {
        out.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

std::string trim(const std::string& text) {
  std::size_t a = text.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = text.find_last_not_of(" \t\r");
  return text.substr(a, b - a + 1);
}

long long parse_int(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("synth spec: bad integer for '" + key + "': '" + value +
                     "'");
  }
}

void validate_spec(const SynthSpec& spec) {
  if (spec.inventory.empty())
    throw ParseError("synth spec: inventory is empty");
  std::set<Token> seen;
  for (const Token& t : spec.inventory) {
    if (is_reserved(t))
      throw ParseError("synth spec: inventory contains reserved token '" + t +
                       "'");
    if (t.find_first_of("+|: \t") != std::string::npos)
      throw ParseError("synth spec: inventory token '" + t +
                       "' contains a notation character");
    if (!seen.insert(t).second)
      throw ParseError("synth spec: duplicate inventory token '" + t + "'");
  }
  if (spec.n_doculects < 2)
    throw ParseError("synth spec: need at least 2 doculects");
  if (spec.n_cognate_sets < 1)
    throw ParseError("synth spec: need at least 1 cognate set");
  if (spec.min_form_length < 1 ||
      spec.max_form_length < spec.min_form_length)
    throw ParseError("synth spec: bad form length range");
  if (spec.noise.n_corrupted_reflexes < 0 || spec.noise.n_dropped_reflexes < 0)
    throw ParseError("synth spec: negative noise counts");
  if (spec.min_attestation < 0)
    throw ParseError("synth spec: negative attestation floor");
  if (spec.proto_name.empty())
    throw ParseError("synth spec: empty proto name");
  std::set<std::string> names;
  for (int d = 0; d < spec.n_doculects; ++d) names.insert(doculect_name(d));
  if (names.count(spec.proto_name))
    throw ParseError("synth spec: proto name collides with a doculect name");
  std::set<Token> tokens(spec.inventory.begin(), spec.inventory.end());
  for (const ChangeRule& rule : spec.rules) {
    if (!names.count(rule.doculect))
      throw ParseError("synth spec: rule for unknown doculect '" +
                       rule.doculect + "'");
    if (!tokens.count(rule.source))
      throw ParseError("synth spec: rule source '" + rule.source +
                       "' not in inventory");
    if (!is_gap(rule.target) && rule.target.find_first_of("+|: \t") !=
                                    std::string::npos)
      throw ParseError("synth spec: rule target '" + rule.target +
                       "' contains a notation character");
    if (is_missing(rule.target))
      throw ParseError("synth spec: rule target cannot be the missing marker");
  }
}

}  // namespace

SynthSpec parse_synth_spec(std::istream& in) {
  SynthSpec spec;
  spec.min_attestation = 0;
  std::string line;
  int line_no = 0;
  bool saw_min_len = false;
  bool saw_max_len = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("synth spec line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("synth spec line " + std::to_string(line_no) +
                       ": empty key or value");
    if (key == "inventory") {
      for (const std::string& t : split_spaces(value))
        spec.inventory.push_back(t);
    } else if (key == "doculects") {
      spec.n_doculects = static_cast<int>(parse_int(value, key));
    } else if (key == "sets") {
      spec.n_cognate_sets = static_cast<int>(parse_int(value, key));
    } else if (key == "min_len") {
      spec.min_form_length = static_cast<int>(parse_int(value, key));
      saw_min_len = true;
    } else if (key == "max_len") {
      spec.max_form_length = static_cast<int>(parse_int(value, key));
      saw_max_len = true;
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "corrupted") {
      spec.noise.n_corrupted_reflexes = static_cast<int>(parse_int(value, key));
    } else if (key == "dropped") {
      spec.noise.n_dropped_reflexes = static_cast<int>(parse_int(value, key));
    } else if (key == "min_attestation") {
      spec.min_attestation = static_cast<int>(parse_int(value, key));
    } else if (key == "proto_name") {
      spec.proto_name = value;
    } else if (key == "rule") {
      const std::vector<std::string> parts = split_spaces(value);
      if (parts.size() != 4)
        throw ParseError("synth spec line " + std::to_string(line_no) +
                         ": rule needs DOCULECT SOURCE TARGET CONTEXT");
      ChangeRule rule;
      rule.doculect = parts[0];
      rule.source = parts[1];
      rule.target = parts[2];
      if (parts[3] == "ANY")
        rule.context = RuleContext::Any;
      else if (parts[3] == "INITIAL")
        rule.context = RuleContext::Initial;
      else if (parts[3] == "FINAL")
        rule.context = RuleContext::Final;
      else
        throw ParseError("synth spec line " + std::to_string(line_no) +
                         ": context must be ANY, INITIAL, or FINAL");
      spec.rules.push_back(std::move(rule));
    } else {
      throw ParseError("synth spec line " + std::to_string(line_no) +
                       ": unknown key '" + key + "'");
    }
  }
  if (!saw_min_len && !saw_max_len) {
    spec.min_form_length = 3;
    spec.max_form_length = 5;
  } else if (!saw_max_len) {
    spec.max_form_length = spec.min_form_length;
  } else if (!saw_min_len) {
    spec.min_form_length = 1;
  }
  validate_spec(spec);
  return spec;
}

SynthSpec parse_synth_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read synth spec: " + path);
  return parse_synth_spec(in);
}

namespace {

// Reflex of one proto segment in one doculect: the surviving token, or kGap
// when a rule deletes it.
Token apply_rules(const std::vector<const ChangeRule*>& rules,
                  const Token& token, bool initial, bool final_pos) {
  for (const ChangeRule* rule : rules) {
    if (rule->source != token) continue;
    if (rule->context == RuleContext::Initial && !initial) continue;
    if (rule->context == RuleContext::Final && !final_pos) continue;
    return rule->target;
  }
  return token;
}

struct Deriver {
  std::vector<std::string> doculects;  // generation order L01..Ln
  std::vector<std::vector<const ChangeRule*>> rules_by_doculect;

  explicit Deriver(const SynthSpec& spec) {
    doculects.reserve(static_cast<std::size_t>(spec.n_doculects));
    for (int d = 0; d < spec.n_doculects; ++d)
      doculects.push_back(doculect_name(d));
    rules_by_doculect.resize(doculects.size());
    for (std::size_t d = 0; d < doculects.size(); ++d)
      for (const ChangeRule& rule : spec.rules)
        if (rule.doculect == doculects[d])
          rules_by_doculect[d].push_back(&rule);
  }

  // Frame of the reflex: one entry per proto segment, kGap for deletions.
  std::vector<Token> frame(std::size_t d,
                           const std::vector<Token>& proto) const {
    std::vector<Token> out;
    out.reserve(proto.size());
    for (std::size_t i = 0; i < proto.size(); ++i)
      out.push_back(apply_rules(rules_by_doculect[d], proto[i], i == 0,
                                i + 1 == proto.size()));
    return out;
  }
};

std::vector<Token> strip_gaps(const std::vector<Token>& frame) {
  std::vector<Token> out;
  for (const Token& t : frame)
    if (!is_gap(t)) out.push_back(t);
  return out;
}

// Position-class id: 0 medial, 1 initial, 2 final, 3 both.
int position_class(std::size_t i, std::size_t len) {
  int c = 0;
  if (i == 0) c |= 1;
  if (i + 1 == len) c |= 2;
  return c;
}

std::string render_pattern(const std::vector<Token>& column) {
  std::string out;
  for (const Token& t : column) {
    out += t;
    out += '\x1f';
  }
  return out;
}

}  // namespace

SynthResult generate(const SynthSpec& spec) {
  validate_spec(spec);
  const Deriver deriver(spec);
  SplitMix64 rng(spec.seed);

  // Column of frame tokens a proto token produces at a position class.
  auto column_for = [&](const Token& token, int cls) {
    std::vector<Token> column;
    column.reserve(deriver.doculects.size());
    const bool initial = (cls & 1) != 0;
    const bool final_pos = (cls & 2) != 0;
    for (std::size_t d = 0; d < deriver.doculects.size(); ++d)
      column.push_back(apply_rules(deriver.rules_by_doculect[d], token,
                                   initial, final_pos));
    return column;
  };

  // Proto-forms, retrying draws that delete a whole reflex away.
  std::vector<std::vector<Token>> protos;
  protos.reserve(static_cast<std::size_t>(spec.n_cognate_sets));
  const std::size_t span =
      static_cast<std::size_t>(spec.max_form_length - spec.min_form_length) +
      1;
  for (int s = 0; s < spec.n_cognate_sets; ++s) {
    bool placed = false;
    for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
      const std::size_t len =
          static_cast<std::size_t>(spec.min_form_length) + rng.below(span);
      std::vector<Token> proto;
      proto.reserve(len);
      for (std::size_t i = 0; i < len; ++i)
        proto.push_back(spec.inventory[rng.below(spec.inventory.size())]);
      bool viable = true;
      for (std::size_t d = 0; d < deriver.doculects.size() && viable; ++d)
        if (strip_gaps(deriver.frame(d, proto)).empty()) viable = false;
      if (viable) {
        protos.push_back(std::move(proto));
        placed = true;
      }
    }
    if (!placed)
      throw DataError(
          "synth: could not draw a proto-form whose reflexes all survive");
  }

  // Attestation floor: retarget occurrences of under-attested patterns to
  // the best-attested donor token of the same position class.
  if (spec.min_attestation > 0) {
    for (int round = 0; round < 32; ++round) {
      std::map<std::string, int> pattern_count;
      std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>
          occurrences;
      std::map<std::string, std::pair<Token, int>> pattern_source;
      for (std::size_t s = 0; s < protos.size(); ++s) {
        for (std::size_t i = 0; i < protos[s].size(); ++i) {
          const int cls = position_class(i, protos[s].size());
          const std::string key =
              std::to_string(cls) + '\x1e' +
              render_pattern(column_for(protos[s][i], cls));
          pattern_count[key] += 1;
          occurrences[key].emplace_back(s, i);
          pattern_source[key] = {protos[s][i], cls};
        }
      }
      std::map<int, std::pair<int, Token>> donors;  // class -> (count, token)
      for (const auto& [key, count] : pattern_count) {
        if (count < spec.min_attestation) continue;
        const auto& [token, cls] = pattern_source[key];
        auto it = donors.find(cls);
        if (it == donors.end() || count > it->second.first ||
            (count == it->second.first && token < it->second.second))
          donors[cls] = {count, token};
      }
      bool changed = false;
      for (const auto& [key, count] : pattern_count) {
        if (count >= spec.min_attestation) continue;
        const auto& [token, cls] = pattern_source[key];
        auto donor = donors.find(cls);
        if (donor == donors.end() || donor->second.second == token)
          throw DataError(
              "synth: attestation floor unsatisfiable for position class " +
              std::to_string(cls));
        for (const auto& [s, i] : occurrences[key])
          protos[s][i] = donor->second.second;
        changed = true;
      }
      if (!changed) break;
      if (round == 31)
        throw DataError("synth: attestation floor did not converge");
    }
  }

  // Materialize reflexes.
  struct Row {
    std::vector<Token> tokens;
    std::vector<Token> frame;
    bool present = true;
  };
  std::vector<std::vector<Row>> rows(protos.size());
  for (std::size_t s = 0; s < protos.size(); ++s) {
    rows[s].resize(deriver.doculects.size());
    for (std::size_t d = 0; d < deriver.doculects.size(); ++d) {
      rows[s][d].frame = deriver.frame(d, protos[s]);
      rows[s][d].tokens = strip_gaps(rows[s][d].frame);
    }
  }

  SynthResult result;

  // Corruption: one substituted token per chosen set, aimed at the most
  // confusable alternative (minimal column distance to another proto token).
  if (spec.noise.n_corrupted_reflexes > 0) {
    if (spec.noise.n_corrupted_reflexes > spec.n_cognate_sets)
      throw DataError("synth: more corrupted reflexes than cognate sets");

    auto column_distance = [&](const Token& a, const Token& b, int cls) {
      const std::vector<Token> ca = column_for(a, cls);
      const std::vector<Token> cb = column_for(b, cls);
      std::size_t dist = 0;
      for (std::size_t d = 0; d < ca.size(); ++d)
        if (ca[d] != cb[d]) ++dist;
      return dist;
    };
    auto min_distance = [&](const Token& token, int cls) {
      std::size_t best = deriver.doculects.size() + 1;
      for (const Token& other : spec.inventory)
        if (other != token)
          best = std::min(best, column_distance(token, other, cls));
      return best;
    };

    std::size_t global_min = deriver.doculects.size() + 1;
    std::map<std::pair<Token, int>, std::size_t> min_cache;
    for (const Token& token : spec.inventory)
      for (int cls = 0; cls < 4; ++cls) {
        const std::size_t m = min_distance(token, cls);
        min_cache[{token, cls}] = m;
        global_min = std::min(global_min, m);
      }

    std::vector<std::size_t> order(protos.size());
    for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
    shuffle(order, rng);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t s) {
      for (std::size_t i = 0; i < protos[s].size(); ++i)
        if (min_cache[{protos[s][i],
                       position_class(i, protos[s].size())}] == global_min)
          return true;
      return false;
    });

    int corrupted = 0;
    for (std::size_t oi = 0;
         oi < order.size() && corrupted < spec.noise.n_corrupted_reflexes;
         ++oi) {
      const std::size_t s = order[oi];
      const std::vector<Token>& proto = protos[s];

      std::size_t best_pos_dist = deriver.doculects.size() + 1;
      for (std::size_t i = 0; i < proto.size(); ++i)
        best_pos_dist =
            std::min(best_pos_dist,
                     min_cache[{proto[i], position_class(i, proto.size())}]);
      std::vector<std::size_t> positions;
      for (std::size_t i = 0; i < proto.size(); ++i)
        if (min_cache[{proto[i], position_class(i, proto.size())}] ==
            best_pos_dist)
          positions.push_back(i);
      if (positions.empty()) continue;
      const std::size_t pos = positions[rng.below(positions.size())];
      const int cls = position_class(pos, proto.size());
      const std::vector<Token> own = column_for(proto[pos], cls);

      // Candidate (doculect, replacement) slots: swap in what the doculect
      // would show for the most confusable other proto token.
      std::vector<std::pair<std::size_t, Token>> candidates;
      for (const Token& other : spec.inventory) {
        if (other == proto[pos]) continue;
        if (column_distance(proto[pos], other, cls) != best_pos_dist) continue;
        const std::vector<Token> theirs = column_for(other, cls);
        for (std::size_t d = 0; d < own.size(); ++d)
          if (own[d] != theirs[d] && !is_gap(own[d]) && !is_gap(theirs[d]))
            candidates.emplace_back(d, theirs[d]);
      }
      if (candidates.empty()) {
        for (std::size_t d = 0; d < own.size(); ++d) {
          if (is_gap(own[d])) continue;
          for (const Token& other : spec.inventory)
            if (other != own[d]) candidates.emplace_back(d, other);
        }
      }
      if (candidates.empty()) continue;
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
      const auto& [d, replacement] = candidates[rng.below(candidates.size())];

      Row& row = rows[s][d];
      std::size_t token_index = 0;
      for (std::size_t i = 0; i < pos; ++i)
        if (!is_gap(row.frame[i])) ++token_index;
      Corruption corruption;
      corruption.cogid = std::to_string(s + 1);
      corruption.doculect = deriver.doculects[d];
      corruption.position = pos;
      corruption.original = row.frame[pos];
      corruption.replacement = replacement;
      row.frame[pos] = replacement;
      row.tokens[token_index] = replacement;
      result.corruptions.push_back(std::move(corruption));
      ++corrupted;
    }
    if (corrupted < spec.noise.n_corrupted_reflexes)
      throw DataError("synth: could not place the requested corruptions");
  }

  // Drops: remove whole reflexes, never below two per set, never a
  // corrupted one.
  if (spec.noise.n_dropped_reflexes > 0) {
    std::set<std::pair<std::string, std::string>> corrupted_slots;
    for (const Corruption& c : result.corruptions)
      corrupted_slots.insert({c.cogid, c.doculect});
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t s = 0; s < rows.size(); ++s)
      for (std::size_t d = 0; d < rows[s].size(); ++d)
        if (!corrupted_slots.count(
                {std::to_string(s + 1), deriver.doculects[d]}))
          slots.emplace_back(s, d);
    shuffle(slots, rng);
    std::vector<std::size_t> remaining(rows.size(), deriver.doculects.size());
    int dropped = 0;
    for (const auto& [s, d] : slots) {
      if (dropped == spec.noise.n_dropped_reflexes) break;
      if (remaining[s] <= 2) continue;
      rows[s][d].present = false;
      remaining[s] -= 1;
      ++dropped;
    }
    if (dropped < spec.noise.n_dropped_reflexes)
      throw DataError("synth: could not drop the requested reflex count");
    for (std::size_t s = 0; s < rows.size(); ++s)
      for (std::size_t d = 0; d < rows[s].size(); ++d)
        if (!rows[s][d].present)
          result.drops.push_back(
              {std::to_string(s + 1), deriver.doculects[d]});
  }

  // Assemble the wordlist.
  Wordlist& wl = result.wordlist;
  wl.doculects = deriver.doculects;
  std::sort(wl.doculects.begin(), wl.doculects.end());
  wl.proto_doculect = spec.proto_name;
  int next_id = 1;
  for (std::size_t s = 0; s < protos.size(); ++s) {
    CognateSet set;
    set.cogid = std::to_string(s + 1);
    char gloss_buf[16];
    std::snprintf(gloss_buf, sizeof(gloss_buf), "c%04zu", s + 1);
    set.gloss = gloss_buf;
    for (std::size_t d = 0; d < deriver.doculects.size(); ++d) {
      if (!rows[s][d].present) continue;
      Form form;
      form.id = "S" + std::to_string(next_id++);
      form.doculect = deriver.doculects[d];
      form.gloss = set.gloss;
      form.tokens = rows[s][d].tokens;
      form.alignment = rows[s][d].frame;
      set.reflexes.push_back(std::move(form));
    }
    Form proto;
    proto.id = "S" + std::to_string(next_id++);
    proto.doculect = spec.proto_name;
    proto.gloss = set.gloss;
    proto.tokens = protos[s];
    proto.alignment = protos[s];
    set.proto = std::move(proto);
    wl.sets.push_back(std::move(set));
  }
  return result;
}

std::string demo_spec_text(int n_corrupted) {
  std::string text =
      "# Demonstration family: eight doculects, regular changes, one\n"
      "# engineered near-merger (b and d split only by L07 and L08).\n"
      "inventory = p t k b d g m n s l a e i o u\n"
      "doculects = 8\n"
      "sets = 300\n"
      "min_len = 3\n"
      "max_len = 5\n"
      "seed = 91\n"
      "min_attestation = 3\n"
      "proto_name = Proto\n"
      "rule = L01 b d ANY\n"
      "rule = L02 b d ANY\n"
      "rule = L03 b d ANY\n"
      "rule = L04 b d ANY\n"
      "rule = L05 b d ANY\n"
      "rule = L06 b d ANY\n"
      "rule = L02 p f ANY\n"
      "rule = L02 k x ANY\n"
      "rule = L02 s h ANY\n"
      "rule = L03 g k FINAL\n"
      "rule = L04 o u ANY\n"
      "rule = L05 n m INITIAL\n"
      "rule = L06 l r ANY\n"
      "rule = L07 s z ANY\n";
  if (n_corrupted > 0)
    text += "corrupted = " + std::to_string(n_corrupted) + "\n";
  return text;
}

SynthSpec demo_spec(int n_corrupted) {
  std::istringstream in(demo_spec_text(n_corrupted));
  return parse_synth_spec(in);
}

bool is_conflict_free(const Wordlist& wl, std::string* offending) {
  if (!wl.proto_doculect) throw DataError("wordlist has no proto doculect");
  std::map<std::string, std::string> seen;  // pattern -> label
  for (const CognateSet& set : wl.sets) {
    if (!set.proto) continue;
    const Alignment joint = align_cognate_set(set, true);
    const std::vector<TrainingSite> sites = extract_training_sites(
        set, joint, wl.doculects, *wl.proto_doculect);
    for (const TrainingSite& ts : sites) {
      std::string key;
      for (const auto& [doculect, token] : ts.site.pattern) {
        key += token;
        key += '\x1f';
      }
      const std::string label = render_label(ts.label);
      auto [it, inserted] = seen.emplace(key, label);
      if (!inserted && it->second != label) {
        if (offending)
          *offending = "pattern in set " + set.cogid + " maps to both '" +
                       it->second + "' and '" + label + "'";
        return false;
      }
    }
  }
  return true;
}

namespace {

std::set<std::string> prediction_patterns(const CognateSet& set,
                                          const Wordlist& wl) {
  const Alignment alignment = align_cognate_set(set, false);
  const std::vector<Site> sites =
      extract_prediction_sites(alignment, wl.doculects);
  std::set<std::string> patterns;
  for (const Site& site : sites) {
    std::string key;
    for (const auto& [doculect, token] : site.pattern) {
      key += token;
      key += '\x1f';
    }
    patterns.insert(key);
  }
  return patterns;
}

}  // namespace

OracleReport oracle_check(const SynthResult& synth,
                          std::span<const FuzzyReconstruction> frs) {
  const Wordlist& wl = synth.wordlist;
  OracleReport report;
  report.passed = true;
  auto fail = [&](std::string line) {
    report.passed = false;
    report.lines.push_back("FAIL " + std::move(line));
  };
  auto note = [&](std::string line) {
    report.lines.push_back("ok   " + std::move(line));
  };

  std::map<std::string, const FuzzyReconstruction*> by_cogid;
  for (const FuzzyReconstruction& fr : frs) by_cogid[fr.cogid] = &fr;

  int missing = 0;
  for (const CognateSet& set : wl.sets)
    if (!by_cogid.count(set.cogid)) ++missing;
  if (missing > 0)
    fail(std::to_string(missing) + " cognate sets have no reconstruction");
  else
    note("every cognate set has a reconstruction");

  if (synth.corruptions.empty()) {
    int certain = 0;
    int matching = 0;
    int scored = 0;
    for (const CognateSet& set : wl.sets) {
      auto it = by_cogid.find(set.cogid);
      if (it == by_cogid.end() || !set.proto) continue;
      ++scored;
      const FuzzyReconstruction& fr = *it->second;
      if (fr.certain) ++certain;
      if (consensus(fr) == set.proto->tokens) ++matching;
    }
    if (certain == scored)
      note("clean data: " + std::to_string(certain) + "/" +
           std::to_string(scored) + " reconstructions certain");
    else
      fail("clean data: only " + std::to_string(certain) + "/" +
           std::to_string(scored) + " reconstructions certain");
    if (matching == scored)
      note("clean data: " + std::to_string(matching) + "/" +
           std::to_string(scored) + " consensus forms equal gold");
    else
      fail("clean data: only " + std::to_string(matching) + "/" +
           std::to_string(scored) + " consensus forms equal gold");
    return report;
  }

  std::set<std::string> corrupted_cogids;
  for (const Corruption& c : synth.corruptions) corrupted_cogids.insert(c.cogid);

  std::map<std::string, std::set<std::string>> patterns;
  for (const CognateSet& set : wl.sets)
    patterns[set.cogid] = prediction_patterns(set, wl);

  std::set<std::string> corrupted_pool;
  for (const std::string& cogid : corrupted_cogids)
    for (const std::string& p : patterns[cogid]) corrupted_pool.insert(p);

  auto shares_pattern = [&](const std::string& cogid) {
    for (const std::string& p : patterns[cogid])
      if (corrupted_pool.count(p)) return true;
    return false;
  };

  int uncertain_total = 0;
  int unattributable = 0;
  for (const CognateSet& set : wl.sets) {
    auto it = by_cogid.find(set.cogid);
    if (it == by_cogid.end()) continue;
    if (it->second->certain) continue;
    ++uncertain_total;
    if (!corrupted_cogids.count(set.cogid) && !shares_pattern(set.cogid))
      ++unattributable;
  }
  if (unattributable == 0)
    note("noise: every set sharing no pattern with corrupted sets is certain");
  else
    fail("noise: " + std::to_string(unattributable) +
         " sets with no corrupted-pattern overlap are uncertain");
  if (uncertain_total >= 1)
    note("noise: " + std::to_string(uncertain_total) +
         " uncertain sets detected");
  else
    fail("noise: corruption produced no uncertain sets");
  if (unattributable == 0)
    note("noise: all uncertainty attributable to corrupted patterns");
  else
    fail("noise: " + std::to_string(unattributable) +
         " uncertain sets lack any corrupted-pattern overlap");
  return report;
}

}  // namespace fuzzyrec
