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

#include <array>
#include <set>
#include <string>

#include "doctest.h"
#include "freegen/benchmarks.h"
#include "freegen/deriv.h"
#include "freegen/free_gen.h"
#include "freegen/interp.h"
#include "freegen/search.h"
#include "test_util.h"

namespace freegen {
namespace {

const Value kLeaf = Value::Of(Tree::Leaf());
const ValidityPredicate kAll = [](const Value&) { return true; };
const ValidityPredicate kNone = [](const Value&) { return false; };

// Every value satisfies the predicate and its witness parses back to it.
void CheckSound(const SearchOutcome& out, const FreeGen& root,
                const ValidityPredicate& valid) {
  for (const auto& [v, found] : out.values) {
    CHECK(valid(v));
    CHECK(Parse(root, found.witness) == ParseResult::Success(v, ""));
  }
}

TEST_CASE("WeightedIndex") {
  Rng rng(8);
  std::array<uint64_t, 2> w{2, 1};
  int first = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) first += WeightedIndex(w, rng) == 0;
  CHECK(testing::WithinBinomial(first, n, 2.0 / 3, 4));

  std::array<uint64_t, 1> one{1};
  CHECK(WeightedIndex(one, rng) == 0);
  std::array<uint64_t, 2> zero_first{0, 3};
  for (int i = 0; i < 100; ++i) CHECK(WeightedIndex(zero_first, rng) == 1);
  std::array<uint64_t, 2> zeros{0, 0};
  CHECK_THROWS_AS(WeightedIndex(zeros, rng), std::invalid_argument);
  CHECK_THROWS_AS(WeightedIndex(std::span<const uint64_t>(), rng),
                  std::invalid_argument);

  std::array<std::pair<uint64_t, std::string>, 2> items{
      std::pair<uint64_t, std::string>{0, "x"}, {5, "y"}};
  CHECK(WeightedChoice<std::string>(items, rng) == "y");
}

TEST_CASE("CGS episode on the Boolean tree") {
  const FreeGen root = BoolTreeGen(1);
  const Language lang = Lang(root);
  const std::set<Value> reachable = {
      kLeaf, Value::Of(Tree::Node(Value::Bool(true), Tree(), Tree())),
      Value::Of(Tree::Node(Value::Bool(false), Tree(), Tree()))};
  SearchConfig cfg;
  cfg.sample_rate = 5;
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    SearchOutcome out = CgsEpisode(root, cfg, kAll, rng);
    CHECK(lang.contains(out.path));
    for (const auto& [v, f] : out.values) {
      CHECK(reachable.count(v) == 1);
      CHECK(lang.contains(f.witness));
    }
    CheckSound(out, root, kAll);
  }

  const ValidityPredicate is_leaf = [](const Value& v) { return v == kLeaf; };
  for (int i = 0; i < 50; ++i) {
    SearchOutcome out = CgsEpisode(root, cfg, is_leaf, rng);
    for (const auto& [v, f] : out.values) CHECK(v == kLeaf);
  }
}

TEST_CASE("CGS with an unsatisfiable predicate") {
  SearchConfig cfg;
  cfg.sample_rate = 5;
  cfg.restart_limit = 10'000;
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    SearchOutcome out = CgsEpisode(BstGen(3), cfg, kNone, rng);
    CHECK(out.values.empty());
  }
  // An alphabet with no live symbol forces restarts until the limit.
  cfg.alphabet = std::set<Choice>{'z'};
  cfg.restart_limit = 100;
  CHECK_THROWS_AS(CgsEpisode(BstGen(3), cfg, kAll, rng), RestartLimitExceeded);
}

TEST_CASE("CGS rejects bad roots") {
  SearchConfig cfg;
  Rng rng(0);
  CHECK_THROWS_AS(CgsEpisode(Void(), cfg, kAll, rng), std::invalid_argument);
  FreeGen raw = FreeGen::RawPair(Pure(kLeaf), BstGen(1));
  CHECK_THROWS_AS(CgsEpisode(raw, cfg, kAll, rng), std::invalid_argument);
}

TEST_CASE("CGS harvests every distinct valid sample it sees") {
  SearchConfig cfg;
  cfg.sample_rate = 20;
  Rng rng(6);
  SearchOutcome out = CgsEpisode(BstGen(3), cfg, kAll, rng);
  // With an always-true predicate the first step alone samples 20 values
  // from each live derivative.
  CHECK(out.stats.valid_samples == out.stats.predicate_calls);
  CHECK(out.size() > 1);
  CheckSound(out, BstGen(3), kAll);
}

TEST_CASE("Fallback lets CGS reach every word") {
  // With an always-false predicate every step uses the uniform fallback, so
  // descent paths cover the whole language.
  const FreeGen root = BstGen(1);
  SearchConfig cfg;
  cfg.sample_rate = 1;
  Rng rng(10);
  std::set<ChoiceSeq> paths;
  for (int i = 0; i < 3000; ++i) paths.insert(CgsEpisode(root, cfg, kNone, rng).path);
  CHECK(paths.size() == Lang(root).size());
}

TEST_CASE("CGS collect") {
  const BenchmarkSetup b = MakeBenchmark(Benchmark::kBst, 4);
  SearchConfig cfg;
  cfg.sample_rate = 10;
  cfg.seed = 17;
  SearchOutcome none = CgsCollect(b.gen, cfg, b.valid, Budget::Seconds(0));
  CHECK(none.size() == 0);
  CHECK(none.stats.episodes == 0);

  SearchOutcome a = CgsCollect(b.gen, cfg, b.valid, Budget::Episodes(30));
  SearchOutcome c = CgsCollect(b.gen, cfg, b.valid, Budget::Episodes(30));
  CHECK(a.stats.episodes == 30);
  // Wall time is the only field outside the seeded computation.
  a.stats.wall_ms = c.stats.wall_ms = 0;
  CHECK(a.ToJson() == c.ToJson());
  CHECK(a.size() > 0);
  CheckSound(a, b.gen, b.valid);

  SearchOutcome timed = CgsCollect(b.gen, cfg, b.valid, Budget::Seconds(0.2));
  CHECK(timed.stats.episodes > 0);
  CheckSound(timed, b.gen, b.valid);
}

TEST_CASE("CGS with an external distribution") {
  const FreeGen root = BstGen(2);
  const ValidityPredicate valid = ValidityFor(Benchmark::kBst);
  ExternalDist d0 = UniformExternalDist(AlphabetOf(root), 0.2);
  SearchConfig cfg;
  cfg.sample_rate = 10;
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    SearchOutcome out = CgsEpisodeWithDist(root, d0, cfg, valid, rng);
    CheckSound(out, root, valid);
    CHECK(Parse(root, out.path).ok());
  }
}

TEST_CASE("Rejection sampling") {
  const FreeGen root = BstGen(3);
  SearchOutcome all = RejectionCollect(root, 1, kAll, Budget::Episodes(200));
  CHECK(all.stats.valid_samples == 200);
  CHECK(all.stats.samples == 200);
  SearchOutcome none = RejectionCollect(root, 1, kNone, Budget::Episodes(200));
  CHECK(none.size() == 0);
  CheckSound(all, root, kAll);

  // Kept fraction matches the exact valid mass.
  const FreeGen g = BstGen(2);
  const ValidityPredicate valid = ValidityFor(Benchmark::kBst);
  Rational mass = 0;
  for (const auto& [v, p] : ExactValuePmf(g)) {
    if (valid(v)) mass += p;
  }
  const uint64_t n = 10000;
  SearchOutcome out = RejectionCollect(g, 77, valid, Budget::Episodes(n));
  CHECK(testing::WithinBinomial(out.stats.valid_samples, n,
                                testing::ToDouble(mass), 4));
}

TEST_CASE("SearchOutcome dedups and serializes") {
  SearchOutcome out;
  CHECK(out.Insert(Value::Int(1), "a"));
  CHECK_FALSE(out.Insert(Value::Int(1), "b"));
  CHECK(out.values.at(Value::Int(1)).witness == "a");
  CHECK(out.size() == 1);
  nlohmann::json j = out.ToJson();
  CHECK(j["values"][0]["witness"] == "a");
  CHECK(j["stats"]["episodes"] == 0);
}

TEST_CASE("DeriveSeed separates streams") {
  std::set<uint64_t> seeds;
  for (uint64_t k = 0; k < 1000; ++k) seeds.insert(DeriveSeed(42, k));
  CHECK(seeds.size() == 1000);
  CHECK(DeriveSeed(1, 2) == DeriveSeed(1, 2));
}

}  // namespace
}  // namespace freegen
