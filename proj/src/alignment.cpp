#include "fuzzyrec/alignment.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/utf8.hpp"

namespace fuzzyrec {

namespace {

bool in_ranges(char32_t c,
               std::initializer_list<std::pair<char32_t, char32_t>> ranges) {
  for (auto [lo, hi] : ranges)
    if (c >= lo && c <= hi) return true;
  return false;
}

bool is_combining_mark(char32_t c) {
  return in_ranges(c, {{0x0300, 0x036F},
                       {0x1AB0, 0x1AFF},
                       {0x1DC0, 0x1DFF},
                       {0x20D0, 0x20FF},
                       {0xFE20, 0xFE2F}});
}

// Aspiration and pre-glottalization written as spacing modifier letters;
// stripped when locating the base character ("ʰk" classifies as k).
bool is_stripped_modifier(char32_t c) {
  return c == 0x02B0 || c == 0x02B1 || c == 0x02BC || c == 0x02C0 ||
         c == 0x02C1;
}

bool is_superscript_digit(char32_t c) {
  return c == 0x00B9 || c == 0x00B2 || c == 0x00B3 ||
         (c >= 0x2070 && c <= 0x2079);
}

bool is_chao_letter(char32_t c) { return c >= 0x02E5 && c <= 0x02E9; }

const std::unordered_set<char32_t>& vowel_set() {
  static const std::unordered_set<char32_t> v = {
      U'a', U'e', U'i', U'o', U'u', U'y',
      0x00E6 /* æ */, 0x00F8 /* ø */, 0x0153 /* œ */, 0x0276 /* ɶ */,
      0x0251 /* ɑ */, 0x0252 /* ɒ */, 0x0250 /* ɐ */, 0x0259 /* ə */,
      0x025A /* ɚ */, 0x025B /* ɛ */, 0x025C /* ɜ */, 0x025D /* ɝ */,
      0x025E /* ɞ */, 0x0258 /* ɘ */, 0x0264 /* ɤ */, 0x0268 /* ɨ */,
      0x026A /* ɪ */, 0x026F /* ɯ */, 0x0275 /* ɵ */, 0x0254 /* ɔ */,
      0x028A /* ʊ */, 0x0289 /* ʉ */, 0x028C /* ʌ */, 0x028F /* ʏ */,
      0x027F /* ɿ */, 0x0285 /* ʅ */, 0x02AE /* ʮ */, 0x02AF /* ʯ */,
      // common precomposed vowels with diacritics
      0x00E0, 0x00E1, 0x00E2, 0x00E3, 0x00E4, 0x00E5, 0x00E8, 0x00E9,
      0x00EA, 0x00EB, 0x00EC, 0x00ED, 0x00EE, 0x00EF, 0x00F2, 0x00F3,
      0x00F4, 0x00F5, 0x00F6, 0x00F9, 0x00FA, 0x00FB, 0x00FC, 0x00FD,
      0x00FF, 0x0101 /* ā */, 0x0113 /* ē */, 0x012B /* ī */,
      0x014D /* ō */, 0x016B /* ū */};
  return v;
}

const std::unordered_map<char32_t, SoundClass>& consonant_table() {
  static const std::unordered_map<char32_t, SoundClass> t = [] {
    std::unordered_map<char32_t, SoundClass> m;
    auto add = [&](std::initializer_list<char32_t> cps, SoundClass c) {
      for (char32_t cp : cps) m.emplace(cp, c);
    };
    add({U'p', U'b', U't', U'd', 0x0288, 0x0256, U'c', 0x025F, U'k', U'g',
         0x0261, U'q', 0x0262, 0x02A1, 0x0253, 0x0257, 0x0284, 0x0260,
         0x029B},
        SoundClass::Stop);
    add({U'm', 0x0271, U'n', 0x0273, 0x0272, 0x014B, 0x0274, 0x00F1},
        SoundClass::Nasal);
    add({U'f', U'v', 0x03B8, 0x00F0, U's', U'z', 0x0283, 0x0292, 0x0282,
         0x0290, 0x00E7, 0x029D, U'x', 0x0263, 0x03C7, 0x0281, 0x0127,
         0x0295, 0x0278, 0x03B2, 0x0255, 0x0291, 0x026C, 0x026E, 0x029C,
         0x02A2, 0x0267},
        SoundClass::Fricative);
    add({0x02A6, 0x02A3, 0x02A7, 0x02A4, 0x02A8, 0x02A5},
        SoundClass::Affricate);
    add({U'l', 0x026B, 0x026D, 0x028E, 0x029F, U'r', 0x027E, 0x027D, 0x0280,
         0x0299, 0x0279, 0x027B, 0x027A},
        SoundClass::Liquid);
    add({U'j', U'w', 0x0270, 0x028B, 0x0265, 0x028D}, SoundClass::Glide);
    return m;
  }();
  return t;
}

// Token-level overrides, consulted before any base-character logic.
const std::unordered_map<std::string, SoundClass>& override_table() {
  static const std::unordered_map<std::string, SoundClass> t = {
      {"ts", SoundClass::Affricate},   {"dz", SoundClass::Affricate},
      {"tʃ", SoundClass::Affricate},   {"dʒ", SoundClass::Affricate},
      {"tɕ", SoundClass::Affricate},   {"dʑ", SoundClass::Affricate},
      {"tʂ", SoundClass::Affricate},   {"dʐ", SoundClass::Affricate},
      {"pf", SoundClass::Affricate},   {"bv", SoundClass::Affricate},
      {"kx", SoundClass::Affricate},   {"tɬ", SoundClass::Affricate},
      {"dɮ", SoundClass::Affricate},   {"t͡ʃ", SoundClass::Affricate},
      {"d͡ʒ", SoundClass::Affricate},  {"t͡s", SoundClass::Affricate},
      {"d͡z", SoundClass::Affricate},  {"t͡ɕ", SoundClass::Affricate},
      {"d͡ʑ", SoundClass::Affricate},  {"t͡ʂ", SoundClass::Affricate},
      {"d͡ʐ", SoundClass::Affricate},
  };
  return t;
}

}  // namespace

const char* to_string(SoundClass c) {
  switch (c) {
    case SoundClass::Vowel: return "VOWEL";
    case SoundClass::Stop: return "STOP";
    case SoundClass::Fricative: return "FRICATIVE";
    case SoundClass::Affricate: return "AFFRICATE";
    case SoundClass::Nasal: return "NASAL";
    case SoundClass::Liquid: return "LIQUID";
    case SoundClass::Glide: return "GLIDE";
    case SoundClass::Tone: return "TONE";
    case SoundClass::Laryngeal: return "LARYNGEAL";
    case SoundClass::Other: return "OTHER";
  }
  return "OTHER";
}

SoundClass classify(const Token& token) {
  if (auto it = override_table().find(token); it != override_table().end())
    return it->second;

  const std::vector<char32_t> scalars = utf8_decode(token);
  if (scalars.empty()) return SoundClass::Other;
  char32_t base = scalars[0];
  for (char32_t c : scalars) {
    if (is_combining_mark(c) || is_stripped_modifier(c)) continue;
    base = c;
    break;
  }

  if (is_superscript_digit(base) || is_chao_letter(base) ||
      (base >= U'0' && base <= U'9'))
    return SoundClass::Tone;
  if (vowel_set().count(base)) return SoundClass::Vowel;
  if (base == 0x0294 /* ʔ */ || base == U'h' || base == 0x0266 /* ɦ */)
    return SoundClass::Laryngeal;
  if (auto it = consonant_table().find(base); it != consonant_table().end())
    return it->second;
  return SoundClass::Other;
}

int score(const Token& a, const Token& b) {
  const bool ga = is_gap(a), gb = is_gap(b);
  if (ga && gb) return 0;
  if (ga || gb) return -1;
  if (a == b) return 2;
  return classify(a) == classify(b) ? 1 : -1;
}

const std::vector<Token>* Alignment::row(const std::string& doculect) const {
  for (std::size_t i = 0; i < doculects.size(); ++i)
    if (doculects[i] == doculect) return &rows[i];
  return nullptr;
}

namespace {

// Shared Needleman-Wunsch core. The first dimension is a profile (one or
// more gap-padded rows), the second a plain token sequence. Column-vs-token
// score is the mean pairwise score against the column's non-gap entries.
// Traceback prefers diagonal over up (gap in the new row) over left (new
// all-gap column), which pins down one optimum.
struct ProfileView {
  const std::vector<std::vector<Token>>* rows;
  std::size_t width;
};

double column_score(const ProfileView& p, std::size_t col, const Token& t) {
  double sum = 0;
  int n = 0;
  for (const auto& row : *p.rows) {
    const Token& e = row[col];
    if (is_gap(e)) continue;
    sum += score(e, t);
    ++n;
  }
  if (n == 0) return is_gap(t) ? 0.0 : -1.0;
  return sum / n;
}

enum class Move : unsigned char { Diag, Up, Left };

std::vector<Move> needleman_wunsch(const ProfileView& profile,
                                   const std::vector<Token>& seq) {
  const std::size_t n = profile.width, m = seq.size();
  std::vector<double> dp((n + 1) * (m + 1));
  std::vector<Move> from((n + 1) * (m + 1), Move::Diag);
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };

  for (std::size_t i = 1; i <= n; ++i) {
    dp[at(i, 0)] = dp[at(i - 1, 0)] - 1.0;
    from[at(i, 0)] = Move::Up;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    dp[at(0, j)] = dp[at(0, j - 1)] - 1.0;
    from[at(0, j)] = Move::Left;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double diag =
          dp[at(i - 1, j - 1)] + column_score(profile, i - 1, seq[j - 1]);
      const double up = dp[at(i - 1, j)] - 1.0;
      const double left = dp[at(i, j - 1)] - 1.0;
      double best = diag;
      Move mv = Move::Diag;
      if (up > best) best = up, mv = Move::Up;
      if (left > best) best = left, mv = Move::Left;
      dp[at(i, j)] = best;
      from[at(i, j)] = mv;
    }
  }

  std::vector<Move> moves;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    Move mv = from[at(i, j)];
    moves.push_back(mv);
    if (mv == Move::Diag)
      --i, --j;
    else if (mv == Move::Up)
      --i;
    else
      --j;
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

// Extend a gap-padded profile with one more sequence.
Alignment merge(const Alignment& profile, const std::string& doculect,
                const std::vector<Token>& seq) {
  ProfileView view{&profile.rows, profile.width()};
  const std::vector<Move> moves = needleman_wunsch(view, seq);

  Alignment out;
  out.doculects = profile.doculects;
  out.doculects.push_back(doculect);
  out.rows.assign(out.doculects.size(), {});

  std::size_t col = 0, pos = 0;
  for (Move mv : moves) {
    for (std::size_t r = 0; r < profile.rows.size(); ++r)
      out.rows[r].push_back(mv == Move::Left ? Token(kGap)
                                             : profile.rows[r][col]);
    out.rows.back().push_back(mv == Move::Up ? Token(kGap) : seq[pos]);
    if (mv != Move::Left) ++col;
    if (mv != Move::Up) ++pos;
  }
  return out;
}

Alignment single_row(const std::string& doculect,
                     const std::vector<Token>& tokens) {
  Alignment a;
  a.doculects.push_back(doculect);
  a.rows.push_back(tokens);
  return a;
}

// Keep only the given stored rows, discarding columns that end up all-gap.
Alignment from_precomputed(const std::vector<const Form*>& forms) {
  Alignment a;
  const std::size_t width = forms[0]->alignment.size();
  std::vector<bool> keep(width, false);
  for (const Form* f : forms)
    for (std::size_t c = 0; c < width; ++c)
      if (!is_gap(f->alignment[c])) keep[c] = true;
  for (const Form* f : forms) {
    a.doculects.push_back(f->doculect);
    std::vector<Token> row;
    for (std::size_t c = 0; c < width; ++c)
      if (keep[c]) row.push_back(f->alignment[c]);
    a.rows.push_back(std::move(row));
  }
  return a;
}

}  // namespace

Alignment align_pair(const Form& x, const Form& y) {
  return merge(single_row(x.doculect, x.tokens), y.doculect, y.tokens);
}

Alignment align_cognate_set(const CognateSet& set, bool include_proto) {
  std::vector<const Form*> forms;
  for (const auto& r : set.reflexes) forms.push_back(&r);
  if (include_proto) {
    if (!set.proto)
      throw DataError("align_cognate_set: cognate set " + set.cogid +
                      " has no proto-form");
    forms.push_back(&*set.proto);
  }
  if (forms.empty())
    throw DataError("align_cognate_set: cognate set " + set.cogid +
                    " is empty");

  const bool precomputed =
      std::all_of(forms.begin(), forms.end(), [&](const Form* f) {
        return !f->alignment.empty() &&
               f->alignment.size() == forms[0]->alignment.size();
      });
  if (precomputed) return from_precomputed(forms);

  std::sort(forms.begin(), forms.end(), [](const Form* a, const Form* b) {
    if (a->tokens.size() != b->tokens.size())
      return a->tokens.size() > b->tokens.size();
    return a->doculect < b->doculect;
  });

  Alignment profile = single_row(forms[0]->doculect, forms[0]->tokens);
  for (std::size_t i = 1; i < forms.size(); ++i)
    profile = merge(profile, forms[i]->doculect, forms[i]->tokens);
  return profile;
}

}  // namespace fuzzyrec
