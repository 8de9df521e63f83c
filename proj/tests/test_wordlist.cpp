#include <doctest.h>

#include <sstream>

#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/prng.hpp"
#include "fuzzyrec/wordlist.hpp"

using namespace fuzzyrec;

namespace {

ParseReport parse_text(const std::string& text,
                       const std::optional<std::string>& proto = std::nullopt) {
  std::istringstream in(text);
  return parse_wordlist(in, proto);
}

const std::string kBasic =
    "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
    "1\tWest\thand\tp a t\t7\n"
    "2\tEast\thand\tb a t\t7\n"
    "3\tProto\thand\tp a t\t7\n"
    "4\tWest\tfoot\tk o\t9\n"
    "5\tEast\tfoot\tg o\t9\n";

}  // namespace

TEST_CASE("tokenize splits on space runs") {
  CHECK(tokenize("p a t") == std::vector<Token>{"p", "a", "t"});
  CHECK(tokenize("t\xca\x83 a \xe2\x81\xb5\xe2\x81\xb5") ==
        std::vector<Token>{"t\xca\x83", "a", "\xe2\x81\xb5\xe2\x81\xb5"});
  CHECK(tokenize("p  a") == std::vector<Token>{"p", "a"});
  CHECK(tokenize("  p a  ") == std::vector<Token>{"p", "a"});
  CHECK(tokenize("").empty());
  CHECK_THROWS_AS(tokenize("p - t"), ParseError);
  CHECK_THROWS_AS(tokenize("\xc3\x98 a"), ParseError);
}

TEST_CASE("parse_wordlist builds sets and captures the proto row") {
  ParseReport report = parse_text(kBasic, "Proto");
  const Wordlist& wl = report.wordlist;
  CHECK(wl.doculects == std::vector<std::string>{"East", "West"});
  CHECK(wl.proto_doculect == "Proto");
  REQUIRE(wl.sets.size() == 2);
  CHECK(wl.sets[0].cogid == "7");
  CHECK(wl.sets[0].gloss == "hand");
  REQUIRE(wl.sets[0].proto.has_value());
  CHECK(wl.sets[0].proto->tokens == std::vector<Token>{"p", "a", "t"});
  CHECK(wl.sets[0].reflexes.size() == 2);
  CHECK_FALSE(wl.sets[1].proto.has_value());
  CHECK(wl.total_reflexes() == 4);
  CHECK(wl.has_training_sets());
  CHECK(wl.find("9") == &wl.sets[1]);
  CHECK(wl.find("nope") == nullptr);
  CHECK(report.warnings.empty());
}

TEST_CASE("proto rows are reflexes when no proto doculect is configured") {
  ParseReport report = parse_text(kBasic);
  CHECK(report.wordlist.doculects ==
        std::vector<std::string>{"East", "Proto", "West"});
  CHECK_FALSE(report.wordlist.has_training_sets());
  CHECK(report.wordlist.total_reflexes() == 5);
}

TEST_CASE("parse_wordlist rejects broken headers and duplicate ids") {
  CHECK_THROWS_WITH_AS(parse_text(""), "parse_wordlist: empty input, no header row",
                       ParseError);
  CHECK_THROWS_WITH_AS(
      parse_text("ID\tDOCULECT\tTOKENS\n"),
      "parse_wordlist: header is missing required columns: CONCEPT, COGID",
      ParseError);
  CHECK_THROWS_AS(parse_text("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
                             "1\tA\tx\tp\t1\n"
                             "1\tB\tx\tp\t1\n"),
                  ParseError);
}

TEST_CASE("parse_wordlist skips unusable rows with warnings") {
  ParseReport report = parse_text(
      "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
      "1\tWest\thand\tp a\t7\n"
      "2\t\thand\tb a\t7\n"     // empty doculect
      "3\tEast\thand\t\t7\n"    // empty tokens
      "4\tEast\thand\tb a\t\n"  // empty cogid: silently ignored
      "5\tEast\thand\tb a\t7\n"
      "6\tNorth\thand\tp o\t8\n");  // lone reflex
  CHECK(report.skipped_rows == 2);
  CHECK(report.dropped_sets == 1);
  CHECK(report.warnings.size() == 3);
  REQUIRE(report.wordlist.sets.size() == 1);
  CHECK(report.wordlist.sets[0].reflexes.size() == 2);
}

TEST_CASE("duplicate doculect rows within a set keep the first") {
  ParseReport report = parse_text(
      "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
      "1\tWest\thand\tp a\t7\n"
      "2\tWest\thand\tb a\t7\n"
      "3\tEast\thand\tb a\t7\n"
      "4\tProto\thand\tp a\t7\n"
      "5\tProto\thand\tb a\t7\n",
      "Proto");
  CHECK(report.duplicate_reflexes == 2);
  const CognateSet& set = report.wordlist.sets.at(0);
  REQUIRE(set.reflexes.size() == 2);
  CHECK(set.reflexes[0].tokens == std::vector<Token>{"p", "a"});
  CHECK(set.proto->tokens == std::vector<Token>{"p", "a"});
}

TEST_CASE("crlf line endings and a UTF-8 BOM are tolerated") {
  ParseReport report = parse_text(
      "\xEF\xBB\xBFID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\r\n"
      "1\tWest\thand\tp a\t7\r\n"
      "2\tEast\thand\tb a\t7\r\n");
  CHECK(report.wordlist.sets.size() == 1);
}

TEST_CASE("alignment rows must cover the whole set consistently") {
  SUBCASE("consistent rows are kept") {
    ParseReport report = parse_text(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tWest\thand\tp a t\t7\tp a t\n"
        "2\tEast\thand\tb a\t7\tb a -\n",
        std::nullopt);
    const CognateSet& set = report.wordlist.sets.at(0);
    CHECK(set.reflexes[1].alignment == std::vector<Token>{"b", "a", "-"});
    CHECK(report.warnings.empty());
  }
  SUBCASE("a mismatching row invalidates itself, then the whole set") {
    ParseReport report = parse_text(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tWest\thand\tp a t\t7\tp a t\n"
        "2\tEast\thand\tb a\t7\tb o -\n",
        std::nullopt);
    CHECK(report.warnings.size() == 2);
    const CognateSet& set = report.wordlist.sets.at(0);
    CHECK(set.reflexes[0].alignment.empty());
    CHECK(set.reflexes[1].alignment.empty());
  }
  SUBCASE("width disagreement discards the set's rows") {
    ParseReport report = parse_text(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tWest\thand\tp a t\t7\tp a t\n"
        "2\tEast\thand\tb a\t7\tb a\n",
        std::nullopt);
    CHECK(report.warnings.size() == 1);
    const CognateSet& set = report.wordlist.sets.at(0);
    CHECK(set.reflexes[0].alignment.empty());
  }
}

TEST_CASE("to_tsv and parse_wordlist round-trip") {
  ParseReport first = parse_text(kBasic, "Proto");
  const std::string emitted = to_tsv(first.wordlist);
  std::istringstream in(emitted);
  ParseReport second = parse_wordlist(in, std::optional<std::string>("Proto"));
  CHECK(second.wordlist == first.wordlist);
  CHECK(second.warnings.empty());
}

TEST_CASE("randomized wordlists survive the round-trip") {
  SplitMix64 rng(2024);
  const char* inventory[] = {"p", "t", "k", "a", "i", "u", "t\xca\x83"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text = "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n";
    int id = 1;
    const int n_sets = 1 + static_cast<int>(rng.below(5));
    for (int s = 0; s < n_sets; ++s) {
      const int n_rows = 2 + static_cast<int>(rng.below(3));
      const bool with_proto = rng.below(2) == 0;
      for (int r = 0; r < n_rows + (with_proto ? 1 : 0); ++r) {
        const bool proto_row = with_proto && r == n_rows;
        text += std::to_string(id++);
        text += proto_row ? "\tProto\tg" : "\tL" + std::to_string(r) + "\tg";
        text += std::to_string(s);
        text += '\t';
        const int len = 1 + static_cast<int>(rng.below(4));
        for (int t = 0; t < len; ++t) {
          if (t) text += ' ';
          text += inventory[rng.below(7)];
        }
        text += '\t';
        text += std::to_string(s + 1);
        text += '\n';
      }
    }
    ParseReport first = parse_text(text, "Proto");
    std::istringstream in(to_tsv(first.wordlist));
    ParseReport second = parse_wordlist(in, std::optional<std::string>("Proto"));
    REQUIRE(second.wordlist == first.wordlist);
  }
}
