#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyrec/classifier.hpp"
#include "fuzzyrec/ensemble.hpp"
#include "fuzzyrec/errors.hpp"
#include "fuzzyrec/synth.hpp"

using namespace fuzzyrec;

namespace {

Site site_of(std::vector<std::pair<std::string, Token>> pattern,
             std::size_t index = 0, bool initial = true, bool final = false) {
  Site s;
  s.pattern = std::move(pattern);
  s.index = index;
  s.is_initial = initial;
  s.is_final = final;
  return s;
}

TrainInstance instance(const Site& site, const std::string& label) {
  return {encode_site(site), label};
}

}  // namespace

TEST_CASE("encode_site emits correspondence, position, and edge features") {
  const Site s = site_of({{"A", "p"}, {"B", "\xc3\x98"}}, 0, true, false);
  const FeatureVector fv = encode_site(s);
  REQUIRE(fv.size() == 4);  // 2 corr + index + initial
  CHECK(std::is_sorted(fv.begin(), fv.end()));
  int corr = 0, index = 0, initial = 0, final_ = 0;
  for (const Feature& f : fv) {
    switch (f.kind) {
      case Feature::Kind::Corr: ++corr; break;
      case Feature::Kind::Index: ++index; CHECK(f.position == 0); break;
      case Feature::Kind::Initial: ++initial; break;
      case Feature::Kind::Final: ++final_; break;
    }
  }
  CHECK(corr == 2);
  CHECK(index == 1);
  CHECK(initial == 1);
  CHECK(final_ == 0);
}

TEST_CASE("encode_site caps the position feature at nine") {
  const Site s = site_of({{"A", "p"}}, 14, false, true);
  const FeatureVector fv = encode_site(s);
  for (const Feature& f : fv)
    if (f.kind == Feature::Kind::Index) CHECK(f.position == 9);
}

TEST_CASE("a separable problem trains to perfect recall") {
  const Site sp = site_of({{"A", "p"}, {"B", "p"}});
  const Site sb = site_of({{"A", "b"}, {"B", "b"}});
  const std::vector<TrainInstance> data = {instance(sp, "p"), instance(sb, "b")};
  const LinearModel model = LinearModel::train(data, 10, 1);
  CHECK(model.predict(encode_site(sp)) == "p");
  CHECK(model.predict(encode_site(sb)) == "b");
  CHECK(model.classes() == std::vector<std::string>{"b", "p"});
}

TEST_CASE("a single-class problem predicts that class with zero weights") {
  const std::vector<TrainInstance> data = {
      instance(site_of({{"A", "p"}}), "p"),
      instance(site_of({{"A", "b"}}), "p")};
  const LinearModel model = LinearModel::train(data, 5, 7);
  CHECK(model.predict(encode_site(site_of({{"A", "x"}}))) == "p");
}

TEST_CASE("all-zero scores fall back to the first class in sorted order") {
  const Site sp = site_of({{"A", "p"}, {"B", "p"}});
  const Site sb = site_of({{"A", "b"}, {"B", "b"}});
  const LinearModel model = LinearModel::train(
      std::vector<TrainInstance>{instance(sp, "z"), instance(sb, "q")}, 10, 1);
  // A site sharing no feature with the training data scores 0 everywhere
  // except the position features, which the two classes saw symmetrically.
  const Site unseen = site_of({{"A", "m"}, {"B", "m"}}, 5, false, false);
  CHECK(model.predict(encode_site(unseen)) == "q");
}

TEST_CASE("training twice with one seed is bitwise reproducible") {
  std::vector<TrainInstance> data;
  const char* tokens[] = {"p", "b", "t", "d", "a"};
  for (int i = 0; i < 25; ++i) {
    const Site s = site_of({{"A", tokens[i % 5]}, {"B", tokens[(i * 2) % 5]}},
                           static_cast<std::size_t>(i % 4), i % 4 == 0,
                           i % 4 == 3);
    data.push_back(instance(s, tokens[(i * 3) % 5]));
  }
  const LinearModel m1 = LinearModel::train(data, 7, 99);
  const LinearModel m2 = LinearModel::train(data, 7, 99);
  CHECK(m1 == m2);
  std::ostringstream s1, s2;
  m1.save(s1);
  m2.save(s2);
  CHECK(s1.str() == s2.str());
}

TEST_CASE("training rejects empty data and non-positive epochs") {
  CHECK_THROWS_AS(LinearModel::train({}, 5, 1), DataError);
  const std::vector<TrainInstance> data = {instance(site_of({{"A", "p"}}), "p")};
  CHECK_THROWS_AS(LinearModel::train(data, 0, 1), DataError);
}

TEST_CASE("the demo family is linearly separable within default epochs") {
  const SynthResult synth = generate(demo_spec());
  const std::vector<TrainInstance> data = training_instances(synth.wordlist);
  const LinearModel model = LinearModel::train(data, 20, 42);
  for (const TrainInstance& inst : data)
    REQUIRE(model.predict(inst.features) == inst.label);
}

TEST_CASE("model save and load round-trip through streams and files") {
  const Site sp = site_of({{"A", "p"}, {"B", "p"}});
  const Site sb = site_of({{"A", "b"}, {"B", "b"}}, 3, false, true);
  const LinearModel model = LinearModel::train(
      std::vector<TrainInstance>{instance(sp, "p"), instance(sb, "b"),
                                 instance(site_of({{"A", "p"}, {"B", "b"}}), "p")},
      9, 1234567890123456789ULL);

  std::stringstream buffer;
  model.save(buffer);
  const LinearModel loaded = LinearModel::load(buffer);
  CHECK(loaded == model);
  CHECK(loaded.epochs() == 9);
  CHECK(loaded.seed() == 1234567890123456789ULL);
  CHECK(loaded.predict(encode_site(sb)) == model.predict(encode_site(sb)));

  const std::string path = "roundtrip.model";
  save_model_file(model, path);
  CHECK(load_model_file(path) == model);
  std::remove(path.c_str());
}

TEST_CASE("model loading rejects malformed input") {
  auto load_text = [](const std::string& text) {
    std::istringstream in(text);
    return LinearModel::load(in);
  };
  CHECK_THROWS_AS(load_text(""), ParseError);
  CHECK_THROWS_AS(load_text("not-a-model\tv1\n"), ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv9\n"), ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\nepochs\t5\n"), ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\n"
                            "epochs\tfive\n"),
                  ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\n"
                            "epochs\t5\nseed\t1\nclasses\t2\n"
                            "class\tz\nclass\ta\n"),  // unsorted
                  ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\n"
                            "epochs\t5\nseed\t1\nclasses\t1\nclass\ta\n"
                            "weights\t1\n"
                            "w\tb\tinitial\t1.5\nend\n"),  // unknown class
                  ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\n"
                            "epochs\t5\nseed\t1\nclasses\t1\nclass\ta\n"
                            "weights\t1\n"
                            "w\ta\twibble\t1.5\nend\n"),  // unknown kind
                  ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\n"
                            "epochs\t5\nseed\t1\nclasses\t1\nclass\ta\n"
                            "weights\t1\n"
                            "w\ta\tinitial\tNaNopes\nend\n"),  // bad value
                  ParseError);
  CHECK_THROWS_AS(load_text("fuzzyrec-model\tv1\n"
                            "epochs\t5\nseed\t1\nclasses\t1\nclass\ta\n"
                            "weights\t0\n"),  // missing end
                  ParseError);
}

TEST_CASE("pattern memory answers exact, partial, then global") {
  PatternMemory memory;
  CHECK(memory.empty());
  CHECK_THROWS_AS(memory.predict(site_of({{"A", "p"}})), DataError);

  const Site spp = site_of({{"A", "p"}, {"B", "p"}});
  const Site sbb = site_of({{"A", "b"}, {"B", "b"}});
  memory.add(spp, "p");
  memory.add(spp, "p");
  memory.add(spp, "b");
  memory.add(sbb, "b");
  CHECK_FALSE(memory.empty());

  // Exact match: majority of {p:2, b:1}.
  CHECK(memory.predict(spp) == "p");
  // Partial match: shares A=b with the sbb pattern only.
  CHECK(memory.predict(site_of({{"A", "b"}, {"B", "x"}})) == "b");
  // No overlap at all: global majority {p:2, b:2} ties to "b" (lex order).
  CHECK(memory.predict(site_of({{"A", "x"}, {"B", "x"}})) == "b");
}

TEST_CASE("pattern memory ignores missing entries when counting overlap") {
  PatternMemory memory;
  memory.add(site_of({{"A", "p"}, {"B", "\xc3\x98"}}), "p");
  memory.add(site_of({{"A", "k"}, {"B", "k"}}), "k");
  // Ø never counts as shared; the probe overlaps only the second pattern.
  CHECK(memory.predict(site_of({{"A", "x"}, {"B", "k"}})) == "k");
}

TEST_CASE("reconstruct_form predicts one label per aligned column") {
  CognateSet set;
  set.cogid = "1";
  Form a;
  a.doculect = "A";
  a.tokens = {"p", "a"};
  Form b;
  b.doculect = "B";
  b.tokens = {"b", "a"};
  set.reflexes = {a, b};

  const std::vector<std::string> doculects = {"A", "B"};
  const std::vector<TrainInstance> data = {
      instance(site_of({{"A", "p"}, {"B", "b"}}, 0, true, false), "p"),
      instance(site_of({{"A", "a"}, {"B", "a"}}, 1, false, true), "a")};
  const LinearModel model = LinearModel::train(data, 10, 5);
  CHECK(reconstruct_form(model, set, doculects) ==
        std::vector<Token>{"p", "a"});
}
