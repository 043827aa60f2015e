// Copyright 2026 The Freegen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <map>
#include <string>

#include "doctest.h"
#include "freegen/benchmarks.h"
#include "freegen/free_gen.h"
#include "freegen/interp.h"
#include "test_util.h"

namespace freegen {
namespace {

const Value kLeaf = Value::Of(Tree::Leaf());
const Value kNodeTrue = Value::Of(Tree::Node(Value::Bool(true), Tree(), Tree()));
const Value kNodeFalse =
    Value::Of(Tree::Node(Value::Bool(false), Tree(), Tree()));

FreeGen NestedSelect() {
  return Select({{'a', Pure(Value::Int(1))},
                 {'b', Select({{'c', Pure(Value::Int(2))},
                               {'d', Pure(Value::Int(3))}})}});
}

TEST_CASE("Parse examples") {
  ParseResult r = Parse(BoolTreeGen(5), "ntll");
  REQUIRE(r.complete());
  CHECK(*r.value == kNodeTrue);
  CHECK(r.value->ToString() == "Node True Leaf Leaf");

  ParseResult p = Parse(Pure(Value::Int(4)), "xyz");
  CHECK(p == ParseResult::Success(Value::Int(4), "xyz"));
  CHECK_FALSE(Parse(BoolTreeGen(5), "x").ok());
  CHECK_FALSE(Parse(BoolTreeGen(5), "").ok());
  CHECK_FALSE(Parse(Void(), "l").ok());

  // Every node spells its own n, so the right child is "n6ll".
  ParseResult bst = Parse(BstGen(5), "n5ln6ll");
  REQUIRE(bst.complete());
  CHECK(bst.value->ToString() == "Node 5 Leaf (Node 6 Leaf Leaf)");

  ParseResult rest = Parse(BstGen(5), "lzz");
  CHECK(rest == ParseResult::Success(kLeaf, "zz"));
}

TEST_CASE("ParseResult rendering") {
  CHECK(ParseResult::Failure().ToString() == "Failure");
  CHECK(ParseResult::Success(Value::Int(1), "ab").ToString() ==
        "Success(1, \"ab\")");
}

TEST_CASE("Parsing a member followed by any suffix leaves the suffix") {
  Rng rng(3);
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_int_distribution<int> sym(0, 25);
  for (const FreeGen& g : {BstGen(2), SortedGen(3), BoolTreeGen(3), StlcGen(1),
                           AvlGen(1)}) {
    for (const auto& s : Lang(g)) {
      std::string t;
      for (int i = len(rng); i > 0; --i) t += static_cast<char>('a' + sym(rng));
      ParseResult r = Parse(g, s + t);
      REQUIRE(r.ok());
      CHECK(r.remainder == t);
    }
  }
}

TEST_CASE("Samplers") {
  Rng rng(1);
  CHECK(SampleValue(Pure(kLeaf), rng) == kLeaf);
  CHECK(SampleChoices(Pure(kLeaf), rng).empty());
  CHECK_THROWS_AS(SampleValue(Void(), rng), std::invalid_argument);
  CHECK_THROWS_AS(SampleChoices(Void(), rng), std::invalid_argument);

  const Language lang = Lang(BstGen(2));
  ChoiceSampler cs(BstGen(2), 5);
  for (int i = 0; i < 500; ++i) CHECK(lang.contains(cs.Draw()));

  ChoiceSeq trace;
  Value v = SampleTraced(BstGen(3), rng, &trace);
  CHECK(Parse(BstGen(3), trace) == ParseResult::Success(v, ""));

  ValueSampler a(BstGen(4), 99), b(BstGen(4), 99);
  for (int i = 0; i < 50; ++i) CHECK(a.Draw() == b.Draw());
}

TEST_CASE("Exact choice distribution") {
  ChoicePmf pmf = ExactChoicePmf(NestedSelect());
  REQUIRE(pmf.size() == 3);
  CHECK(pmf.Mass("a") == Rational(1, 2));
  CHECK(pmf.Mass("bc") == Rational(1, 4));
  CHECK(pmf.Mass("bd") == Rational(1, 4));
  CHECK(pmf.Mass("zz") == 0);

  ChoicePmf pure = ExactChoicePmf(Pure(kLeaf));
  REQUIRE(pure.size() == 1);
  CHECK(pure.Mass("") == 1);

  for (const FreeGen& g : {BstGen(2), SortedGen(3), StlcGen(1)}) {
    ChoicePmf p = ExactChoicePmf(g);
    CHECK(p.Total() == 1);
    std::vector<ChoiceSeq> support;
    for (const auto& [s, m] : p) {
      CHECK(m > 0);
      support.push_back(s);
    }
    CHECK(Language(support) == Lang(g));
  }
  CHECK_THROWS_AS(ExactChoicePmf(BstGen(3), 1000), ResourceError);
  CHECK_THROWS_AS(ExactChoicePmf(Void()), std::invalid_argument);
}

TEST_CASE("Exact value distribution") {
  ValuePmf pure = ExactValuePmf(Pure(kLeaf));
  REQUIRE(pure.size() == 1);
  CHECK(pure.Mass(kLeaf) == 1);

  ValuePmf bt = ExactValuePmf(BoolTreeGen(1));
  REQUIRE(bt.size() == 3);
  CHECK(bt.Mass(kLeaf) == Rational(1, 2));
  CHECK(bt.Mass(kNodeTrue) == Rational(1, 4));
  CHECK(bt.Mass(kNodeFalse) == Rational(1, 4));
}

TEST_CASE("Factoring on small generators, including the applicative fragment") {
  Rng rng(21);
  std::vector<FreeGen> gens = {BoolTreeGen(2), BstGen(2), SortedGen(3),
                               StlcGen(1), AvlGen(1), NestedSelect()};
  for (int i = 0; i < 300; ++i) {
    FreeGen g = testing::RandomSmartGen(rng, 5);
    if (!g.is_void() && LanguageSize(g) < 5000) gens.push_back(g);
  }
  for (const FreeGen& g : gens) {
    auto parsed = ParsePushforward(g, ExactChoicePmf(g));
    auto direct = ExactValuePmf(g).Pushforward(
        [](const Value& v) { return ParseResult::Success(v, ""); });
    CHECK(parsed == direct);
  }
}

TEST_CASE("Value sampler frequencies match the exact distribution") {
  const FreeGen g = BstGen(2);
  const ValuePmf pmf = ExactValuePmf(g);
  std::map<Value, uint64_t> counts;
  ValueSampler s(g, 1234);
  const uint64_t n = 20000;
  for (uint64_t i = 0; i < n; ++i) ++counts[s.Draw()];
  for (const auto& [v, p] : pmf) {
    CHECK(testing::WithinBinomial(counts[v], n, testing::ToDouble(p), 4.5));
  }
}

TEST_CASE("PMF JSON golden") {
  nlohmann::json j = PmfToJson(ExactChoicePmf(NestedSelect()));
  CHECK(j.dump() ==
        R"([{"den":2,"num":1,"outcome":"a"},{"den":4,"num":1,"outcome":"bc"},)"
        R"({"den":4,"num":1,"outcome":"bd"}])");
  auto back = PmfFromJson(j);
  REQUIRE(back.size() == 3);
  CHECK(back[0].first == "a");
  CHECK(back[0].second == Rational(1, 2));

  nlohmann::json v = PmfToJson(ExactValuePmf(BoolTreeGen(1)));
  CHECK(v[0]["outcome"] == "Leaf");
  CHECK(v[0]["num"] == 1);
  CHECK(v[0]["den"] == 2);
}

ExternalDist Scripted(std::string script) {
  ExternalDist d;
  d.next = [script](std::string_view history, Rng&) -> std::optional<Choice> {
    if (history.size() >= script.size()) return std::nullopt;
    return script[history.size()];
  };
  return d;
}

TEST_CASE("External distributions") {
  Rng rng(0);
  auto v = SampleWithExternalDist(Scripted("ntll"), BoolTreeGen(5), rng);
  REQUIRE(v.has_value());
  CHECK(*v == kNodeTrue);

  CHECK(SampleWithExternalDist(Scripted(""), Pure(Value::Int(3)), rng) ==
        Value::Int(3));
  CHECK_FALSE(SampleWithExternalDist(Scripted(""), BoolTreeGen(2), rng));
  // A remainder counts as failure.
  CHECK_FALSE(SampleWithExternalDist(Scripted("lll"), BoolTreeGen(2), rng));

  // Only the symbols emitted after the current history are parsed.
  ExternalDist d = Scripted("nxtll");
  d.history = "nx";
  ChoiceSeq emitted;
  auto w = SampleWithExternalDist(d, Select({{'t', Pure(Value::Int(1))}}),
                                  rng, &emitted);
  CHECK(emitted == "tll");
  CHECK_FALSE(w.has_value());

  ExternalDist u = UniformExternalDist({'l', 'n', 't', 'f'}, 0.3);
  const Language lang = Lang(BoolTreeGen(2));
  int ok = 0;
  for (int i = 0; i < 2000; ++i) {
    ChoiceSeq s;
    auto r = SampleWithExternalDist(u, BoolTreeGen(2), rng, &s);
    if (r) {
      ++ok;
      CHECK(lang.contains(s));
      CHECK(Parse(BoolTreeGen(2), s).value == r);
    }
  }
  CHECK(ok > 0);
}

}  // namespace
}  // namespace freegen
