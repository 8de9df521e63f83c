#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "fuzzyrec/alignment.hpp"
#include "fuzzyrec/errors.hpp"

using namespace fuzzyrec;

namespace {

Form make_form(const std::string& doculect, std::vector<Token> tokens) {
  Form f;
  f.doculect = doculect;
  f.tokens = std::move(tokens);
  return f;
}

int achieved_score(const Alignment& a) {
  int total = 0;
  for (std::size_t c = 0; c < a.width(); ++c)
    total += score(a.rows[0][c], a.rows[1][c]);
  return total;
}

// Plain pairwise Needleman-Wunsch optimum, no traceback.
int optimal_score(const std::vector<Token>& x, const std::vector<Token>& y) {
  const std::size_t n = x.size(), m = y.size();
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 1; i <= n; ++i) dp[i][0] = dp[i - 1][0] - 1;
  for (std::size_t j = 1; j <= m; ++j) dp[0][j] = dp[0][j - 1] - 1;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      dp[i][j] = std::max({dp[i - 1][j - 1] + score(x[i - 1], y[j - 1]),
                           dp[i - 1][j] - 1, dp[i][j - 1] - 1});
  return dp[n][m];
}

std::vector<Token> strip_gaps(const std::vector<Token>& row) {
  std::vector<Token> out;
  for (const Token& t : row)
    if (!is_gap(t)) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("classify covers the sound classes") {
  CHECK(classify("a") == SoundClass::Vowel);
  CHECK(classify("\xc9\x99") == SoundClass::Vowel);         // ə
  CHECK(classify("\xc3\xa1") == SoundClass::Vowel);         // á
  CHECK(classify("p") == SoundClass::Stop);
  CHECK(classify("\xca\xb0k") == SoundClass::Stop);         // ʰk
  CHECK(classify("s") == SoundClass::Fricative);
  CHECK(classify("t\xca\x83") == SoundClass::Affricate);    // tʃ
  CHECK(classify("ts") == SoundClass::Affricate);
  CHECK(classify("m") == SoundClass::Nasal);
  CHECK(classify("\xc5\x8b") == SoundClass::Nasal);         // ŋ
  CHECK(classify("l") == SoundClass::Liquid);
  CHECK(classify("r") == SoundClass::Liquid);
  CHECK(classify("j") == SoundClass::Glide);
  CHECK(classify("w") == SoundClass::Glide);
  CHECK(classify("\xe2\x81\xb5\xe2\x81\xb5") == SoundClass::Tone);  // ⁵⁵
  CHECK(classify("\xc2\xb9") == SoundClass::Tone);                  // ¹
  CHECK(classify("55") == SoundClass::Tone);
  CHECK(classify("\xca\x94") == SoundClass::Laryngeal);     // ʔ
  CHECK(classify("h") == SoundClass::Laryngeal);
  CHECK(classify("%") == SoundClass::Other);
}

TEST_CASE("score rewards identity, then class, and penalizes gaps") {
  CHECK(score("p", "p") == 2);
  CHECK(score("p", "b") == 1);
  CHECK(score("p", "a") == -1);
  CHECK(score("p", "-") == -1);
  CHECK(score("-", "a") == -1);
  CHECK(score("-", "-") == 0);
}

TEST_CASE("align_pair pads the shorter form with gaps") {
  const Alignment a = align_pair(make_form("A", {"p", "a", "t"}),
                                 make_form("B", {"p", "a"}));
  REQUIRE(a.width() == 3);
  CHECK(a.doculects == std::vector<std::string>{"A", "B"});
  CHECK(a.rows[0] == std::vector<Token>{"p", "a", "t"});
  CHECK(a.rows[1] == std::vector<Token>{"p", "a", "-"});
  CHECK(*a.row("B") == a.rows[1]);
  CHECK(a.row("C") == nullptr);
}

TEST_CASE("align_pair is optimal for every short token pair") {
  const std::vector<Token> inventory = {"p", "b", "a"};
  std::vector<std::vector<Token>> forms;
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      std::vector<Token> f;
      for (std::size_t i : idx) f.push_back(inventory[i]);
      forms.push_back(std::move(f));
      std::size_t k = 0;
      while (k < len && ++idx[k] == inventory.size()) idx[k++] = 0;
      if (k == len) break;
    }
  }
  REQUIRE(forms.size() == 3 + 9 + 27 + 81);

  for (const auto& x : forms) {
    for (const auto& y : forms) {
      const Alignment a = align_pair(make_form("A", x), make_form("B", y));
      CAPTURE(x);
      CAPTURE(y);
      REQUIRE(achieved_score(a) == optimal_score(x, y));
      REQUIRE(strip_gaps(a.rows[0]) == x);
      REQUIRE(strip_gaps(a.rows[1]) == y);
    }
  }
}

TEST_CASE("align_cognate_set is rectangular and lossless") {
  CognateSet set;
  set.cogid = "1";
  set.reflexes.push_back(make_form("A", {"p", "a", "t", "a"}));
  set.reflexes.push_back(make_form("B", {"p", "a"}));
  set.reflexes.push_back(make_form("C", {"b", "a", "t"}));

  const Alignment a = align_cognate_set(set, false);
  REQUIRE(a.rows.size() == 3);
  for (const auto& row : a.rows) CHECK(row.size() == a.width());
  for (const Form& r : set.reflexes) CHECK(strip_gaps(*a.row(r.doculect)) == r.tokens);

  const Alignment again = align_cognate_set(set, false);
  CHECK(again.rows == a.rows);
  CHECK(again.doculects == a.doculects);

  CHECK_THROWS_AS(align_cognate_set(set, true), DataError);
}

TEST_CASE("consistent precomputed rows pass through verbatim") {
  CognateSet set;
  set.cogid = "1";
  Form a = make_form("A", {"p", "t"});
  a.alignment = {"p", "-", "t"};
  Form b = make_form("B", {"b", "a", "t"});
  b.alignment = {"b", "a", "t"};
  set.reflexes = {a, b};

  const Alignment aln = align_cognate_set(set, false);
  REQUIRE(aln.width() == 3);
  CHECK(*aln.row("A") == std::vector<Token>{"p", "-", "t"});
  CHECK(*aln.row("B") == std::vector<Token>{"b", "a", "t"});
}

TEST_CASE("all-gap columns of precomputed rows are discarded") {
  CognateSet set;
  set.cogid = "1";
  Form a = make_form("A", {"p", "t"});
  a.alignment = {"p", "-", "t"};
  Form b = make_form("B", {"b", "t"});
  b.alignment = {"b", "-", "t"};
  set.reflexes = {a, b};

  const Alignment aln = align_cognate_set(set, false);
  REQUIRE(aln.width() == 2);
  CHECK(*aln.row("A") == std::vector<Token>{"p", "t"});
}

TEST_CASE("mixed precomputed and missing rows fall back to realignment") {
  CognateSet set;
  set.cogid = "1";
  Form a = make_form("A", {"p", "a", "t"});
  a.alignment = {"p", "a", "t"};
  Form b = make_form("B", {"p", "a"});  // no stored row
  set.reflexes = {a, b};

  const Alignment aln = align_cognate_set(set, false);
  REQUIRE(aln.width() == 3);
  CHECK(*aln.row("B") == std::vector<Token>{"p", "a", "-"});
}
