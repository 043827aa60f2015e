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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "freegen/benchmarks.h"
#include "freegen/metrics.h"
#include "freegen/search.h"
#include "test_util.h"

namespace freegen {
namespace {

std::vector<ChoiceSeq> RandomSeqs(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> len(0, 12), sym(0, 3);
  std::vector<ChoiceSeq> out;
  for (size_t i = 0; i < n; ++i) {
    ChoiceSeq s;
    for (int k = len(rng); k > 0; --k) s += static_cast<char>('a' + sym(rng));
    out.push_back(s);
  }
  return out;
}

double BruteMean(const std::vector<ChoiceSeq>& s) {
  double sum = 0;
  size_t n = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    for (size_t j = i + 1; j < s.size(); ++j) {
      sum += Levenshtein(s[i], s[j]);
      ++n;
    }
  }
  return sum / n;
}

TEST_CASE("Levenshtein") {
  CHECK(Levenshtein("abc", "abc") == 0);
  CHECK(Levenshtein("", "abc") == 3);
  CHECK(Levenshtein("abc", "") == 3);
  CHECK(Levenshtein("kitten", "sitting") == 3);
  CHECK(Levenshtein("flaw", "lawn") == 2);
}

TEST_CASE("Diversity estimate") {
  DiversityEstimate two = EstimateDiversity({"aaaa", "bbbb"});
  CHECK(two.mean == 4.0);
  CHECK(two.std == 0.0);
  CHECK(two.exact);
  CHECK_THROWS_AS(EstimateDiversity({"a"}), std::invalid_argument);

  for (size_t n : {3, 20, 77}) {
    auto seqs = RandomSeqs(n, n);
    DiversityEstimate e = EstimateDiversity(seqs);
    CHECK(e.exact);
    CHECK(e.mean == doctest::Approx(BruteMean(seqs)).epsilon(1e-12));
  }

  auto eighty = RandomSeqs(80, 80);
  DiversityEstimate all = EstimateDiversity(eighty, 80 * 79 / 2);
  CHECK(all.exact);
  CHECK(all.mean == doctest::Approx(BruteMean(eighty)).epsilon(1e-12));

  auto big = RandomSeqs(500, 9);
  DiversityEstimate e = EstimateDiversity(big, kDiversityPairs, 3);
  CHECK_FALSE(e.exact);
  CHECK(e.pairs == kDiversityPairs);
  const double se = e.std / std::sqrt(static_cast<double>(e.pairs));
  CHECK(std::abs(e.mean - BruteMean(big)) <= 3 * se);
}

ExperimentSpec SmallSpec(Algorithm a) {
  ExperimentSpec spec = ExperimentSpec::Defaults(Benchmark::kBst, a);
  spec.depth = 3;
  spec.sample_rate = 10;
  spec.budget_episodes = 40;
  spec.trials = 3;
  spec.seed = 5;
  return spec;
}

TEST_CASE("Experiment defaults") {
  ExperimentSpec s = ExperimentSpec::Defaults(Benchmark::kAvl, Algorithm::kCgs);
  CHECK(s.sample_rate == 500);
  CHECK(s.depth == 5);
  CHECK(ExperimentSpec::Defaults(Benchmark::kSorted, Algorithm::kCgs).depth ==
        20);
}

TEST_CASE("Zero budget gives zero counts") {
  ExperimentSpec spec =
      ExperimentSpec::Defaults(Benchmark::kBst, Algorithm::kCgs);
  spec.budget_seconds = 0;
  Report r = RunExperiment(spec);
  CHECK(r.unique_valid_count() == 0);
  CHECK(r.unique_mean == 0);
  const TrialReport& t = *r.first_trial();
  CHECK_FALSE(t.diversity_mean);
  nlohmann::json j = ReportToJson(r);
  CHECK(j["unique_valid_count"] == 0);
  CHECK(j["diversity_mean"].is_null());
}

TEST_CASE("Reports are sound, monotone and aggregated") {
  for (Algorithm a : {Algorithm::kCgs, Algorithm::kRejection}) {
    Report r = RunExperiment(SmallSpec(a));
    CHECK(r.clock == "episodes");
    REQUIRE(r.per_trial.size() == 3);
    double sum = 0;
    for (const TrialReport& t : r.per_trial) {
      CHECK(t.unique_valid_count > 0);
      int64_t prev = 0;
      for (const auto& [tick, n] : t.count_over_time) {
        CHECK(n >= prev);
        prev = n;
      }
      CHECK(t.count_over_time.back().second == t.unique_valid_count);
      int64_t hist = 0;
      for (const auto& [size, n] : t.size_histogram) hist += n;
      CHECK(hist == t.unique_valid_count);
      sum += t.unique_valid_count;
    }
    const double mean = sum / 3;
    double ss = 0;
    for (const TrialReport& t : r.per_trial) {
      ss += (t.unique_valid_count - mean) * (t.unique_valid_count - mean);
    }
    CHECK(r.unique_mean == mean);
    CHECK(r.unique_std == std::sqrt(ss / 2));
  }
}

TEST_CASE("Long rejection runs approach the valid support") {
  const FreeGen g = BstGen(2);
  size_t valid_support = 0;
  for (const auto& [v, p] : ExactValuePmf(g)) {
    valid_support += IsBst(v.AsTree());
  }
  ExperimentSpec spec =
      ExperimentSpec::Defaults(Benchmark::kBst, Algorithm::kRejection);
  spec.depth = 2;
  spec.budget_episodes = 200000;
  Report r = RunExperiment(spec);
  CHECK(r.unique_valid_count() <= static_cast<int64_t>(valid_support));
  CHECK(r.unique_valid_count() >= static_cast<int64_t>(valid_support * 95 / 100));
}

TEST_CASE("Episode-budget runs are reproducible") {
  Report a = RunExperiment(SmallSpec(Algorithm::kCgs));
  Report b = RunExperiment(SmallSpec(Algorithm::kCgs));
  CHECK(a == b);
  CHECK(ReportToJson(a).dump() == ReportToJson(b).dump());
}

TEST_CASE("JSON round trip") {
  Report r = RunExperiment(SmallSpec(Algorithm::kRejection));
  CHECK(ReportFromJson(ReportToJson(r)) == r);
  Report empty;
  Aggregate(&empty);
  CHECK(ReportFromJson(ReportToJson(empty)) == empty);
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("Report emission") {
  Report r = RunExperiment(SmallSpec(Algorithm::kCgs));
  CHECK(CountsCsv(r).starts_with("episode,unique_count\n"));
  CHECK(SizesCsv(r).starts_with("size,count\n"));
  CHECK(SummaryCsv(r).starts_with(
      "trial,seed,unique_valid_count,diversity_mean,diversity_std\n"));

  ExperimentSpec wall = SmallSpec(Algorithm::kCgs);
  wall.budget_episodes.reset();
  wall.budget_seconds = 0;
  wall.trials = 1;
  CHECK(CountsCsv(RunExperiment(wall)).starts_with("elapsed_ms,unique_count\n"));

  const auto dir = std::filesystem::temp_directory_path() / "freegen_emit_test";
  std::filesystem::create_directories(dir);
  EmitReport(r, ReportFormat::kJson, dir / "r.json");
  CHECK(Slurp(dir / "r.json") == ReportToJson(r).dump(2) + "\n");
  EmitReport(r, ReportFormat::kCsv, dir / "r.csv");
  CHECK(Slurp(dir / "r_counts.csv") == CountsCsv(r));
  CHECK(Slurp(dir / "r_sizes.csv") == SizesCsv(r));
  CHECK(Slurp(dir / "r_summary.csv") == SummaryCsv(r));
  CHECK_THROWS_AS(EmitReport(r, ReportFormat::kJson, dir / "missing" / "r.json"),
                  std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("Every counted value is valid") {
  for (Benchmark b : kAllBenchmarks) {
    const BenchmarkSetup s = MakeBenchmark(b, b == Benchmark::kSorted ? 8 : 3);
    SearchConfig cfg;
    cfg.sample_rate = 10;
    SearchOutcome out = CgsCollect(s.gen, cfg, s.valid, Budget::Episodes(10));
    for (const auto& [v, f] : out.values) CHECK(s.valid(v));
  }
}

}  // namespace
}  // namespace freegen
