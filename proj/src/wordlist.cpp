#include "fuzzyrec/wordlist.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "fuzzyrec/errors.hpp"

namespace fuzzyrec {

namespace {

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<Token> split_spaces(std::string_view cell) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < cell.size()) {
    while (i < cell.size() && cell[i] == ' ') ++i;
    std::size_t j = i;
    while (j < cell.size() && cell[j] != ' ') ++j;
    if (j > i) out.emplace_back(cell.substr(i, j - i));
    i = j;
  }
  return out;
}

// Gap-stripped alignment row must reproduce the form's tokens.
bool alignment_matches(const std::vector<Token>& alignment,
                       const std::vector<Token>& tokens) {
  std::vector<Token> stripped;
  for (const auto& t : alignment)
    if (!is_gap(t)) stripped.push_back(t);
  return stripped == tokens;
}

}  // namespace

const CognateSet* Wordlist::find(const std::string& cogid) const {
  for (const auto& s : sets)
    if (s.cogid == cogid) return &s;
  return nullptr;
}

std::size_t Wordlist::total_reflexes() const {
  std::size_t n = 0;
  for (const auto& s : sets) n += s.reflexes.size();
  return n;
}

bool Wordlist::has_training_sets() const {
  return std::any_of(sets.begin(), sets.end(),
                     [](const CognateSet& s) { return s.proto.has_value(); });
}

std::vector<Token> tokenize(std::string_view cell) {
  std::vector<Token> out = split_spaces(cell);
  for (const auto& t : out)
    if (is_reserved(t))
      throw ParseError("tokenize: reserved segment \"" + t +
                       "\" not allowed in TOKENS");
  return out;
}

ParseReport parse_wordlist(std::istream& in,
                           const std::optional<std::string>& proto_doculect) {
  ParseReport report;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("parse_wordlist: empty input, no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

  const std::vector<std::string> header = split_tab(line);
  auto column = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int col_id = column("ID");
  const int col_doculect = column("DOCULECT");
  const int col_concept = column("CONCEPT");
  const int col_tokens = column("TOKENS");
  const int col_cogid = column("COGID");
  const int col_alignment = column("ALIGNMENT");

  std::string missing;
  for (auto [col, name] :
       {std::pair{col_id, "ID"}, {col_doculect, "DOCULECT"},
        {col_concept, "CONCEPT"}, {col_tokens, "TOKENS"},
        {col_cogid, "COGID"}}) {
    if (col < 0) missing += missing.empty() ? name : std::string(", ") + name;
  }
  if (!missing.empty())
    throw ParseError("parse_wordlist: header is missing required columns: " +
                     missing);

  struct PendingSet {
    CognateSet set;
    std::size_t order;
  };
  std::map<std::string, PendingSet> pending;
  std::set<std::string> seen_ids;
  std::size_t order = 0;
  std::size_t lineno = 1;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_tab(line);
    fields.resize(std::max(fields.size(), header.size()));

    auto cell = [&](int col) -> const std::string& {
      return fields[static_cast<std::size_t>(col)];
    };

    const std::string& id = cell(col_id);
    if (!seen_ids.insert(id).second)
      throw ParseError("parse_wordlist: duplicate ID \"" + id + "\" at line " +
                       std::to_string(lineno));

    const std::string& cogid = cell(col_cogid);
    if (cogid.empty()) continue;

    const std::string& doculect = cell(col_doculect);
    if (doculect.empty()) {
      report.warnings.push_back("line " + std::to_string(lineno) +
                                ": empty DOCULECT, row skipped");
      ++report.skipped_rows;
      continue;
    }

    Form form;
    form.id = id;
    form.doculect = doculect;
    form.gloss = cell(col_concept);
    form.tokens = tokenize(cell(col_tokens));
    if (form.tokens.empty()) {
      report.warnings.push_back("line " + std::to_string(lineno) +
                                ": empty TOKENS, row skipped");
      ++report.skipped_rows;
      continue;
    }
    if (col_alignment >= 0) {
      std::vector<Token> aln = split_spaces(cell(col_alignment));
      bool valid = !aln.empty();
      for (const auto& t : aln)
        if (is_missing(t)) valid = false;
      if (valid && !alignment_matches(aln, form.tokens)) {
        report.warnings.push_back("line " + std::to_string(lineno) +
                                  ": ALIGNMENT does not match TOKENS, ignored");
        valid = false;
      }
      if (valid) form.alignment = std::move(aln);
    }

    auto [it, inserted] = pending.try_emplace(cogid);
    PendingSet& ps = it->second;
    if (inserted) {
      ps.set.cogid = cogid;
      ps.set.gloss = form.gloss;
      ps.order = order++;
    }

    if (proto_doculect && doculect == *proto_doculect) {
      if (ps.set.proto) {
        report.warnings.push_back("line " + std::to_string(lineno) +
                                  ": duplicate proto row for cognate set " +
                                  cogid + ", keeping first");
        ++report.duplicate_reflexes;
      } else {
        ps.set.proto = std::move(form);
      }
      continue;
    }

    bool duplicate = false;
    for (const auto& r : ps.set.reflexes)
      if (r.doculect == doculect) duplicate = true;
    if (duplicate) {
      report.warnings.push_back("line " + std::to_string(lineno) +
                                ": duplicate doculect \"" + doculect +
                                "\" in cognate set " + cogid +
                                ", keeping first");
      ++report.duplicate_reflexes;
      continue;
    }
    ps.set.reflexes.push_back(std::move(form));
  }

  std::vector<const PendingSet*> ordered;
  ordered.reserve(pending.size());
  for (const auto& [cogid, ps] : pending) ordered.push_back(&ps);
  std::sort(ordered.begin(), ordered.end(),
            [](const PendingSet* a, const PendingSet* b) {
              return a->order < b->order;
            });

  Wordlist& wl = report.wordlist;
  wl.proto_doculect = proto_doculect;
  std::set<std::string> doculects;
  for (const PendingSet* ps : ordered) {
    if (ps->set.reflexes.size() < 2) {
      report.warnings.push_back("cognate set " + ps->set.cogid +
                                " has fewer than 2 reflexes, dropped");
      ++report.dropped_sets;
      continue;
    }
    // A set with precomputed alignments must be aligned as a whole: every
    // row (proto included) carries one and all widths agree, else they are
    // discarded and the set is realigned downstream.
    CognateSet set = ps->set;
    bool any_aln = set.proto && !set.proto->alignment.empty();
    bool all_aln = !set.proto || !set.proto->alignment.empty();
    std::size_t width = set.proto ? set.proto->alignment.size() : 0;
    for (const auto& r : set.reflexes) {
      any_aln = any_aln || !r.alignment.empty();
      all_aln = all_aln && !r.alignment.empty();
      if (width == 0) width = r.alignment.size();
      if (r.alignment.size() != width) all_aln = false;
    }
    if (any_aln && !all_aln) {
      report.warnings.push_back("cognate set " + set.cogid +
                                ": incomplete or inconsistent ALIGNMENT rows, "
                                "ignored");
      for (auto& r : set.reflexes) r.alignment.clear();
      if (set.proto) set.proto->alignment.clear();
    }
    for (const auto& r : set.reflexes) doculects.insert(r.doculect);
    wl.sets.push_back(std::move(set));
  }
  wl.doculects.assign(doculects.begin(), doculects.end());
  return report;
}

ParseReport parse_wordlist_file(
    const std::string& path, const std::optional<std::string>& proto_doculect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path);
  return parse_wordlist(in, proto_doculect);
}

std::string to_tsv(const Wordlist& wl) {
  bool any_alignment = false;
  for (const auto& s : wl.sets) {
    for (const auto& r : s.reflexes) any_alignment |= !r.alignment.empty();
    if (s.proto) any_alignment |= !s.proto->alignment.empty();
  }

  std::ostringstream out;
  out << "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID";
  if (any_alignment) out << "\tALIGNMENT";
  out << '\n';

  auto join = [](const std::vector<Token>& tokens) {
    std::string s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) s += ' ';
      s += tokens[i];
    }
    return s;
  };
  auto emit = [&](const Form& f, const std::string& cogid) {
    out << f.id << '\t' << f.doculect << '\t' << f.gloss << '\t'
        << join(f.tokens) << '\t' << cogid;
    if (any_alignment) out << '\t' << join(f.alignment);
    out << '\n';
  };
  for (const auto& s : wl.sets) {
    for (const auto& r : s.reflexes) emit(r, s.cogid);
    if (s.proto) emit(*s.proto, s.cogid);
  }
  return out.str();
}

}  // namespace fuzzyrec
