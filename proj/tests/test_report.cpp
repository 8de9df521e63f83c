#include <doctest.h>

#include <string>
#include <vector>

#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/report.hpp"
#include "fuzzyrec/synth.hpp"

using namespace fuzzyrec;

namespace {

FuzzySegment segment(std::vector<std::pair<std::string, int>> options) {
  FuzzySegment seg;
  for (const auto& [label, count] : options) {
    seg.options[label] = count;
    seg.total += count;
  }
  return seg;
}

int cells_of(const QuintileColumn& col, const std::string& label) {
  int n = 0;
  for (const std::string& cell : col)
    if (cell == label) ++n;
  return n;
}

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("a unanimous segment fills all five rows") {
  const QuintileColumn col = to_quintiles(segment({{"a", 10}}));
  for (const std::string& cell : col) CHECK(cell == "a");
}

TEST_CASE("a nine-to-one split gives four rows and one row") {
  const QuintileColumn col = to_quintiles(segment({{"i", 9}, {"e", 1}}));
  CHECK(col == QuintileColumn{"i", "i", "i", "i", "e"});
}

TEST_CASE("a six-to-four split honours the larger remainder") {
  const QuintileColumn col = to_quintiles(segment({{"a", 6}, {"-", 4}}));
  CHECK(col == QuintileColumn{"a", "a", "a", "-", "-"});
}

TEST_CASE("ties in count and remainder resolve lexicographically") {
  const QuintileColumn col = to_quintiles(segment({{"b", 5}, {"a", 5}}));
  CHECK(col == QuintileColumn{"a", "a", "a", "b", "b"});
}

TEST_CASE("every 2-option split of ten reconstructs within one") {
  for (int a = 1; a <= 9; ++a) {
    const QuintileColumn col =
        to_quintiles(segment({{"x", a}, {"y", 10 - a}}));
    const int cx = cells_of(col, "x");
    const int cy = cells_of(col, "y");
    CAPTURE(a);
    CHECK(cx + cy == 5);
    CHECK(std::abs(cx * 2 - a) <= 1);
    CHECK(std::abs(cy * 2 - (10 - a)) <= 1);
  }
}

TEST_CASE("every 3-option split of ten reconstructs within one") {
  for (int a = 1; a <= 8; ++a) {
    for (int b = 1; a + b <= 9; ++b) {
      const int c = 10 - a - b;
      const QuintileColumn col =
          to_quintiles(segment({{"x", a}, {"y", b}, {"z", c}}));
      CAPTURE(a);
      CAPTURE(b);
      const int cx = cells_of(col, "x");
      const int cy = cells_of(col, "y");
      const int cz = cells_of(col, "z");
      CHECK(cx + cy + cz == 5);
      CHECK(std::abs(cx * 2 - a) <= 1);
      CHECK(std::abs(cy * 2 - b) <= 1);
      CHECK(std::abs(cz * 2 - c) <= 1);
    }
  }
}

TEST_CASE("more options than rows still fill exactly five cells") {
  const QuintileColumn col = to_quintiles(segment(
      {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}, {"f", 1}}));
  int filled = 0;
  for (const std::string& cell : col) filled += cell.empty() ? 0 : 1;
  CHECK(filled == 5);
}

TEST_CASE("quintiles reject degenerate segments") {
  CHECK_THROWS_AS(to_quintiles(FuzzySegment{}), DataError);
  CHECK_THROWS_AS(to_quintiles(segment({{"a", 0}})), DataError);
}

TEST_CASE("html_escape neutralizes markup characters") {
  CHECK(html_escape("a<b>&\"c'") == "a&lt;b&gt;&amp;&quot;c&#39;");
  CHECK(html_escape("plain") == "plain");
}

TEST_CASE("emit_report renders one section per reconstruction") {
  const SynthResult synth = generate(demo_spec());
  Wordlist wl = synth.wordlist;
  wl.sets.resize(4);

  std::vector<FuzzyReconstruction> frs;
  for (const CognateSet& set : wl.sets) {
    FuzzyReconstruction fr;
    fr.cogid = set.cogid;
    fr.gloss = set.gloss;
    for (const Token& t : set.proto->tokens) {
      FuzzySegment seg;
      seg.options[t] = 10;
      seg.total = 10;
      fr.segments.push_back(std::move(seg));
    }
    fr.certain = true;
    frs.push_back(std::move(fr));
  }
  // Make the second reconstruction uncertain at its first position.
  frs[1].segments[0].options = {{"b", 9}, {"d", 1}};
  frs[1].certain = false;

  const std::string html = emit_report(wl, frs, "Demo <Family>");
  CHECK(count_occurrences(html, "<section>") == 4);
  CHECK(count_occurrences(html, "</section>") == 4);
  CHECK(count_occurrences(html, "<table") == count_occurrences(html, "</table>"));
  CHECK(html.find("Demo &lt;Family&gt;") != std::string::npos);
  CHECK(html.find("class=\"flag\"") != std::string::npos);
  CHECK(html.find("b:9|d:1") != std::string::npos);
  CHECK(count_occurrences(html, "class=\"uncertain\"") == 5);

  CHECK(emit_report(wl, frs, "Demo <Family>") == html);
}

TEST_CASE("emit_report survives an empty reconstruction list") {
  Wordlist wl;
  const std::string html =
      emit_report(wl, std::vector<FuzzyReconstruction>{}, "Empty");
  CHECK(html.find("No reconstructions to display.") != std::string::npos);
}
