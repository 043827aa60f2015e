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

// Experiment runner and metrics: unique valid counts over time, size
// histograms, and Levenshtein diversity of witness choice sequences.

#ifndef FREEGEN_METRICS_H_
#define FREEGEN_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freegen/benchmarks.h"
#include "freegen/search.h"
#include "json.hpp"

namespace freegen {

// Edit distance with unit-cost insertion, deletion and substitution.
size_t Levenshtein(std::string_view a, std::string_view b);

struct DiversityEstimate {
  double mean = 0;
  double std = 0;  // sample standard deviation of the pairwise distances
  size_t pairs = 0;
  bool exact = false;
};

inline constexpr size_t kDiversityPairs = 3000;

// Mean pairwise Levenshtein distance. Uses every unordered pair when there
// are at most `pairs` of them, otherwise `pairs` uniformly random pairs of
// distinct elements (with replacement). Throws std::invalid_argument for
// fewer than two sequences.
DiversityEstimate EstimateDiversity(const std::vector<ChoiceSeq>& seqs,
                                    size_t pairs = kDiversityPairs,
                                    uint64_t seed = 0);

enum class Algorithm { kRejection, kCgs };
std::string_view AlgorithmName(Algorithm a);
std::optional<Algorithm> AlgorithmFromName(std::string_view name);

struct ExperimentSpec {
  Benchmark benchmark = Benchmark::kBst;
  Algorithm algorithm = Algorithm::kCgs;
  double budget_seconds = 10;
  // When set, the budget is this many episodes (draws for rejection) and
  // the report uses a logical clock, which makes it reproducible.
  std::optional<uint64_t> budget_episodes;
  int sample_rate = 50;
  int depth = 5;
  uint64_t seed = 42;
  int trials = 1;

  // Table defaults for N and depth.
  static ExperimentSpec Defaults(Benchmark b, Algorithm a);

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct TrialReport {
  uint64_t seed = 0;
  int64_t unique_valid_count = 0;
  // (tick, cumulative unique count); ticks are ms or episodes.
  std::vector<std::pair<uint64_t, int64_t>> count_over_time;
  std::map<int64_t, int64_t> size_histogram;
  std::optional<double> diversity_mean;
  std::optional<double> diversity_std;
  SearchStats stats;

  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

struct Report {
  ExperimentSpec spec;
  // "wall_ms" or "episodes".
  std::string clock = "wall_ms";
  std::vector<TrialReport> per_trial;
  int64_t failed_trials = 0;

  // Mean and sample standard deviation across trials.
  double unique_mean = 0;
  double unique_std = 0;
  std::optional<double> diversity_mean_mean;
  std::optional<double> diversity_mean_std;

  // The headline fields mirror the first trial.
  int64_t unique_valid_count() const;
  const TrialReport* first_trial() const;

  friend bool operator==(const Report&, const Report&) = default;
};

// Resolution of the wall-clock count series.
inline constexpr uint64_t kSeriesStepMs = 100;

// Builds a trial report from a search outcome.
TrialReport SummarizeTrial(const SearchOutcome& outcome, uint64_t seed,
                           bool episode_clock, uint64_t horizon);

// Recomputes the cross-trial aggregates from per_trial.
void Aggregate(Report* r);

// Called with each completed trial's raw outcome.
using TrialObserver =
    std::function<void(const BenchmarkSetup&, const SearchOutcome&)>;

Report RunExperiment(const ExperimentSpec& spec,
                     const TrialObserver& observe = nullptr);

nlohmann::json ReportToJson(const Report& r);
Report ReportFromJson(const nlohmann::json& j);

enum class ReportFormat { kJson, kCsv };

// JSON writes one document to `path`. CSV writes <stem>_counts.csv,
// <stem>_sizes.csv and <stem>_summary.csv next to `path`, for the stem of
// `path` without a .csv extension. Throws std::runtime_error with the path
// on I/O failure.
void EmitReport(const Report& r, ReportFormat format,
                const std::filesystem::path& path);

// CSV bodies, exposed for tests.
std::string CountsCsv(const Report& r);
std::string SizesCsv(const Report& r);
std::string SummaryCsv(const Report& r);

}  // namespace freegen

#endif  // FREEGEN_METRICS_H_
