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

// freegen: runs the valid-generation experiments and prints small
// generator walkthroughs.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "freegen/benchmarks.h"
#include "freegen/deriv.h"
#include "freegen/free_gen.h"
#include "freegen/interp.h"
#include "freegen/metrics.h"

namespace {

using namespace freegen;

int RunBench(const std::string& benchmark, const std::string& algorithm,
             double budget_secs, std::optional<uint64_t> episodes,
             std::optional<int> sample_rate, std::optional<int> depth,
             uint64_t seed, int trials, const std::string& format,
             const std::string& out) {
  auto b = BenchmarkFromName(benchmark);
  auto a = AlgorithmFromName(algorithm);
  if (!b) throw std::invalid_argument("unknown benchmark: " + benchmark);
  if (!a) throw std::invalid_argument("unknown algorithm: " + algorithm);

  ExperimentSpec spec = ExperimentSpec::Defaults(*b, *a);
  spec.budget_seconds = budget_secs;
  spec.budget_episodes = episodes;
  if (sample_rate) spec.sample_rate = *sample_rate;
  if (depth) spec.depth = *depth;
  spec.seed = seed;
  if (const char* env = std::getenv("FREEGEN_SEED")) {
    spec.seed = std::stoull(env);
  }
  spec.trials = trials;

  Report r = RunExperiment(spec);
  if (out.empty()) {
    std::cout << ReportToJson(r).dump(2) << "\n";
  } else {
    EmitReport(r, format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson,
               out);
    std::cerr << BenchmarkName(spec.benchmark) << "/"
              << AlgorithmName(spec.algorithm) << ": " << r.unique_mean
              << " unique valid values (mean of " << r.per_trial.size()
              << " trials)\n";
  }
  return 0;
}

int RunDemo(const std::string& benchmark, int depth, const std::string& word) {
  FreeGen g;
  if (benchmark == "booltree") {
    g = BoolTreeGen(depth);
  } else if (auto b = BenchmarkFromName(benchmark)) {
    g = MakeBenchmark(*b, depth).gen;
  } else {
    throw std::invalid_argument("unknown benchmark: " + benchmark);
  }
  std::cout << "generator:\n  " << g.ToString() << "\n";
  std::cout << "alphabet: ";
  for (Choice c : AlphabetOf(g)) std::cout << c;
  std::cout << "\n";

  const size_t n = LanguageSize(g);
  std::cout << "language size: " << n << "\n";
  if (n <= 32) {
    for (const auto& s : Lang(g)) {
      std::cout << "  \"" << s << "\" -> " << Parse(g, s).value->ToString()
                << "\n";
    }
  }

  std::cout << "derivatives along \"" << word << "\":\n";
  FreeGen cur = g;
  for (Choice c : word) {
    cur = Derivative(c, cur);
    std::cout << "  d/" << c << " -> " << cur.ToString() << "\n";
    if (auto v = Nullable(cur)) {
      std::cout << "  nullable: " << v->ToString() << "\n";
    }
    if (cur.is_void()) break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free generators, derivatives and choice gradient sampling"};
  app.require_subcommand(1);

  auto* bench = app.add_subcommand("bench", "Run a timed generation experiment");
  std::string benchmark = "bst";
  std::string algorithm = "cgs";
  double budget_secs = 10;
  std::optional<uint64_t> episodes;
  std::optional<int> sample_rate;
  std::optional<int> depth;
  uint64_t seed = 42;
  int trials = 1;
  std::string format = "json";
  std::string out;
  bench->add_option("--benchmark", benchmark, "bst | sorted | avl | stlc")
      ->check(CLI::IsMember({"bst", "sorted", "avl", "stlc"}));
  bench->add_option("--algorithm", algorithm, "cgs | rejection")
      ->check(CLI::IsMember({"cgs", "rejection"}));
  bench->add_option("--budget-secs", budget_secs, "Wall-clock budget per trial")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--episodes", episodes,
                    "Episode budget (draws for rejection); deterministic");
  bench->add_option("--sample-rate", sample_rate, "Samples per derivative (N)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--depth", depth, "Generator depth")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", seed, "Base seed (FREEGEN_SEED overrides)");
  bench->add_option("--trials", trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("--out", out, "Output path (stdout JSON when omitted)");

  auto* demo = app.add_subcommand("demo", "Show a generator, its language, and derivatives");
  std::string demo_benchmark = "booltree";
  int demo_depth = 1;
  std::string word = "nt";
  demo->add_option("--benchmark", demo_benchmark,
                   "booltree | bst | sorted | avl | stlc");
  demo->add_option("--depth", demo_depth)->check(CLI::NonNegativeNumber);
  demo->add_option("--word", word, "Choices to differentiate by");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      return RunBench(benchmark, algorithm, budget_secs, episodes, sample_rate,
                      depth, seed, trials, format, out);
    }
    return RunDemo(demo_benchmark, demo_depth, word);
  } catch (const std::exception& e) {
    std::cerr << "freegen: " << e.what() << "\n";
    return 1;
  }
}
