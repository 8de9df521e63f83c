#include "fuzzyrec/sites.hpp"

#include <algorithm>

#include "fuzzyrec/errors.hpp"

namespace fuzzyrec {

std::string render_label(const ProtoLabel& label) {
  if (label.is_gap_label()) return std::string(kGap);
  std::string out;
  for (std::size_t i = 0; i < label.tokens.size(); ++i) {
    if (i > 0) out += '+';
    out += label.tokens[i];
  }
  return out;
}

ProtoLabel parse_label(const std::string& rendered) {
  ProtoLabel label;
  if (rendered.empty()) throw ParseError("empty proto label");
  if (rendered == kGap) return label;
  std::size_t start = 0;
  while (start <= rendered.size()) {
    std::size_t plus = rendered.find('+', start);
    if (plus == std::string::npos) plus = rendered.size();
    if (plus == start) throw ParseError("empty component in proto label '" + rendered + "'");
    label.tokens.push_back(rendered.substr(start, plus - start));
    start = plus + 1;
    if (plus == rendered.size()) break;
  }
  return label;
}

namespace {

Site make_site(const Alignment& alignment, std::size_t column,
               std::span<const std::string> doculects,
               const std::string* exclude) {
  Site site;
  site.pattern.reserve(doculects.size());
  for (const std::string& d : doculects) {
    if (exclude && d == *exclude) continue;
    const std::vector<Token>* row = alignment.row(d);
    site.pattern.emplace_back(d, row ? (*row)[column] : Token(kMissing));
  }
  return site;
}

void set_position(Site& s, std::size_t i, std::size_t n) {
  s.index = i;
  s.is_initial = (i == 0);
  s.is_final = (i + 1 == n);
}

}  // namespace

std::vector<TrainingSite> extract_training_sites(
    const CognateSet& set, const Alignment& joint,
    std::span<const std::string> doculects,
    const std::string& proto_doculect) {
  const std::vector<Token>* proto_row = joint.row(proto_doculect);
  if (!proto_row)
    throw DataError("cognate set " + set.cogid + " has no proto row");

  std::vector<TrainingSite> sites;
  std::vector<Token> pending;  // proto tokens seen before the first site
  for (std::size_t c = 0; c < joint.width(); ++c) {
    bool has_reflex_token = false;
    for (std::size_t r = 0; r < joint.rows.size(); ++r) {
      if (joint.doculects[r] == proto_doculect) continue;
      if (!is_gap(joint.rows[r][c])) {
        has_reflex_token = true;
        break;
      }
    }
    const Token& proto_tok = (*proto_row)[c];
    if (!has_reflex_token) {
      // Degenerate column: no daughter evidence. Fold the proto token into
      // the previous site's label, or hold it for the first site.
      if (is_gap(proto_tok)) continue;
      if (sites.empty())
        pending.push_back(proto_tok);
      else
        sites.back().label.tokens.push_back(proto_tok);
      continue;
    }
    TrainingSite ts;
    ts.site = make_site(joint, c, doculects, &proto_doculect);
    if (!pending.empty()) {
      ts.label.tokens = std::move(pending);
      pending.clear();
    }
    if (!is_gap(proto_tok)) ts.label.tokens.push_back(proto_tok);
    sites.push_back(std::move(ts));
  }
  if (sites.empty())
    throw DataError("cognate set " + set.cogid +
                    " has no alignment columns with reflex material");
  for (std::size_t i = 0; i < sites.size(); ++i)
    set_position(sites[i].site, i, sites.size());
  return sites;
}

std::vector<Site> extract_prediction_sites(
    const Alignment& reflex_alignment,
    std::span<const std::string> doculects) {
  std::vector<Site> sites;
  sites.reserve(reflex_alignment.width());
  for (std::size_t c = 0; c < reflex_alignment.width(); ++c)
    sites.push_back(make_site(reflex_alignment, c, doculects, nullptr));
  for (std::size_t i = 0; i < sites.size(); ++i)
    set_position(sites[i], i, sites.size());
  return sites;
}

std::vector<Token> assemble_form(std::span<const ProtoLabel> labels) {
  std::vector<Token> tokens;
  for (const ProtoLabel& label : labels)
    tokens.insert(tokens.end(), label.tokens.begin(), label.tokens.end());
  if (tokens.empty()) throw DataError("assembled form is empty");
  return tokens;
}

}  // namespace fuzzyrec
