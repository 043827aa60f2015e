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

#include "freegen/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace freegen {

size_t Levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), size_t{0});
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      const size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

std::pair<double, double> MeanAndSampleStd(const std::vector<double>& xs) {
  if (xs.empty()) return {0, 0};
  const double mean =
      std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

DiversityEstimate EstimateDiversity(const std::vector<ChoiceSeq>& seqs,
                                    size_t pairs, uint64_t seed) {
  const size_t n = seqs.size();
  if (n < 2) {
    throw std::invalid_argument("diversity needs at least two sequences");
  }
  std::vector<double> d;
  DiversityEstimate out;
  const double total_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2;
  if (total_pairs <= static_cast<double>(pairs)) {
    d.reserve(static_cast<size_t>(total_pairs));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        d.push_back(static_cast<double>(Levenshtein(seqs[i], seqs[j])));
      }
    }
    out.exact = true;
  } else {
    Rng rng(seed);
    std::uniform_int_distribution<size_t> first(0, n - 1);
    std::uniform_int_distribution<size_t> other(0, n - 2);
    d.reserve(pairs);
    for (size_t k = 0; k < pairs; ++k) {
      const size_t i = first(rng);
      size_t j = other(rng);
      if (j >= i) ++j;
      d.push_back(static_cast<double>(Levenshtein(seqs[i], seqs[j])));
    }
  }
  std::tie(out.mean, out.std) = MeanAndSampleStd(d);
  out.pairs = d.size();
  return out;
}

std::string_view AlgorithmName(Algorithm a) {
  return a == Algorithm::kCgs ? "cgs" : "rejection";
}

std::optional<Algorithm> AlgorithmFromName(std::string_view name) {
  if (name == "cgs") return Algorithm::kCgs;
  if (name == "rejection") return Algorithm::kRejection;
  return std::nullopt;
}

ExperimentSpec ExperimentSpec::Defaults(Benchmark b, Algorithm a) {
  ExperimentSpec s;
  s.benchmark = b;
  s.algorithm = a;
  s.sample_rate = DefaultSampleRate(b);
  s.depth = DefaultDepth(b);
  return s;
}

int64_t Report::unique_valid_count() const {
  return per_trial.empty() ? 0 : per_trial.front().unique_valid_count;
}

const TrialReport* Report::first_trial() const {
  return per_trial.empty() ? nullptr : &per_trial.front();
}

TrialReport SummarizeTrial(const SearchOutcome& outcome, uint64_t seed,
                           bool episode_clock, uint64_t horizon) {
  TrialReport t;
  t.seed = seed;
  t.unique_valid_count = static_cast<int64_t>(outcome.size());
  t.stats = outcome.stats;
  if (episode_clock) t.stats.wall_ms = 0;

  std::vector<uint64_t> ticks;
  std::vector<ChoiceSeq> witnesses;
  ticks.reserve(outcome.size());
  witnesses.reserve(outcome.size());
  for (const auto& [v, found] : outcome.values) {
    ticks.push_back(found.tick);
    witnesses.push_back(found.witness);
    ++t.size_histogram[SizeOf(v)];
  }
  std::sort(ticks.begin(), ticks.end());

  if (!ticks.empty()) horizon = std::max(horizon, ticks.back());
  const uint64_t step =
      episode_clock ? std::max<uint64_t>(1, horizon / 100) : kSeriesStepMs;
  size_t seen = 0;
  for (uint64_t at = 0; at < horizon; at += step) {
    while (seen < ticks.size() && ticks[seen] <= at) ++seen;
    t.count_over_time.emplace_back(at, static_cast<int64_t>(seen));
  }
  t.count_over_time.emplace_back(horizon, t.unique_valid_count);

  if (witnesses.size() >= 2) {
    auto div = EstimateDiversity(witnesses, kDiversityPairs,
                                 DeriveSeed(seed, 0xd17e));
    t.diversity_mean = div.mean;
    t.diversity_std = div.std;
  }
  return t;
}

void Aggregate(Report* r) {
  std::vector<double> unique;
  std::vector<double> div;
  for (const auto& t : r->per_trial) {
    unique.push_back(static_cast<double>(t.unique_valid_count));
    if (t.diversity_mean) div.push_back(*t.diversity_mean);
  }
  std::tie(r->unique_mean, r->unique_std) = MeanAndSampleStd(unique);
  r->diversity_mean_mean.reset();
  r->diversity_mean_std.reset();
  if (!div.empty()) {
    auto [m, s] = MeanAndSampleStd(div);
    r->diversity_mean_mean = m;
    r->diversity_mean_std = s;
  }
}

Report RunExperiment(const ExperimentSpec& spec,
                     const TrialObserver& observe) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  if (spec.budget_seconds < 0) {
    throw std::invalid_argument("budget must be non-negative");
  }
  Report r;
  r.spec = spec;
  const bool episodes = spec.budget_episodes.has_value();
  r.clock = episodes ? "episodes" : "wall_ms";
  const Budget budget = episodes ? Budget::Episodes(*spec.budget_episodes)
                                 : Budget::Seconds(spec.budget_seconds);
  const uint64_t horizon =
      episodes ? *spec.budget_episodes
               : static_cast<uint64_t>(budget.wall.count());

  BenchmarkSetup setup = MakeBenchmark(spec.benchmark, spec.depth);
  for (int trial = 0; trial < spec.trials; ++trial) {
    const uint64_t seed = DeriveSeed(spec.seed, static_cast<uint64_t>(trial));
    try {
      SearchOutcome out;
      if (spec.algorithm == Algorithm::kCgs) {
        SearchConfig cfg;
        cfg.sample_rate = spec.sample_rate;
        cfg.seed = seed;
        out = CgsCollect(setup.gen, cfg, setup.valid, budget);
      } else {
        out = RejectionCollect(setup.gen, seed, setup.valid, budget);
      }
      r.per_trial.push_back(SummarizeTrial(out, seed, episodes, horizon));
      if (observe) observe(setup, out);
    } catch (const std::exception& e) {
      std::cerr << "warning: trial " << trial << " discarded: " << e.what()
                << "\n";
      ++r.failed_trials;
    }
  }
  Aggregate(&r);
  return r;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::json OptionalToJson(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

std::optional<double> OptionalFromJson(const nlohmann::json& j,
                                       const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

nlohmann::json TrialToJson(const TrialReport& t, bool with_wall) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& [at, n] : t.count_over_time) series.push_back({at, n});
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& [size, n] : t.size_histogram) sizes.push_back({size, n});
  nlohmann::json stats = {{"episodes", t.stats.episodes},
                          {"restarts", t.stats.restarts},
                          {"samples", t.stats.samples},
                          {"predicate_calls", t.stats.predicate_calls},
                          {"valid_samples", t.stats.valid_samples}};
  if (with_wall) stats["wall_ms"] = t.stats.wall_ms;
  nlohmann::json j = {{"seed", t.seed},
                      {"unique_valid_count", t.unique_valid_count},
                      {"count_over_time", std::move(series)},
                      {"size_histogram", std::move(sizes)},
                      {"stats", std::move(stats)}};
  if (t.diversity_mean) {
    j["diversity_mean"] = *t.diversity_mean;
    j["diversity_std"] = *t.diversity_std;
  }
  return j;
}

TrialReport TrialFromJson(const nlohmann::json& j) {
  TrialReport t;
  t.seed = j.at("seed").get<uint64_t>();
  t.unique_valid_count = j.at("unique_valid_count").get<int64_t>();
  for (const auto& p : j.at("count_over_time")) {
    t.count_over_time.emplace_back(p.at(0).get<uint64_t>(),
                                   p.at(1).get<int64_t>());
  }
  for (const auto& p : j.at("size_histogram")) {
    t.size_histogram[p.at(0).get<int64_t>()] = p.at(1).get<int64_t>();
  }
  const auto& s = j.at("stats");
  t.stats.episodes = s.at("episodes").get<uint64_t>();
  t.stats.restarts = s.at("restarts").get<uint64_t>();
  t.stats.samples = s.at("samples").get<uint64_t>();
  t.stats.predicate_calls = s.at("predicate_calls").get<uint64_t>();
  t.stats.valid_samples = s.at("valid_samples").get<uint64_t>();
  t.stats.wall_ms = s.value("wall_ms", uint64_t{0});
  t.diversity_mean = OptionalFromJson(j, "diversity_mean");
  t.diversity_std = OptionalFromJson(j, "diversity_std");
  return t;
}

}  // namespace

nlohmann::json ReportToJson(const Report& r) {
  const bool with_wall = r.clock == "wall_ms";
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.per_trial) trials.push_back(TrialToJson(t, with_wall));

  const TrialReport empty;
  const TrialReport& head = r.per_trial.empty() ? empty : r.per_trial.front();
  nlohmann::json j = TrialToJson(head, with_wall);
  j.erase("seed");
  j.erase("stats");
  j["benchmark"] = BenchmarkName(r.spec.benchmark);
  j["algorithm"] = AlgorithmName(r.spec.algorithm);
  j["budget_seconds"] = r.spec.budget_seconds;
  j["budget_episodes"] = r.spec.budget_episodes
                             ? nlohmann::json(*r.spec.budget_episodes)
                             : nlohmann::json(nullptr);
  j["sample_rate"] = r.spec.sample_rate;
  j["depth"] = r.spec.depth;
  j["seed"] = r.spec.seed;
  j["trials"] = r.spec.trials;
  j["clock"] = r.clock;
  j["failed_trials"] = r.failed_trials;
  j["aggregate"] = {{"unique_valid_count_mean", r.unique_mean},
                    {"unique_valid_count_std", r.unique_std},
                    {"diversity_mean_mean", OptionalToJson(r.diversity_mean_mean)},
                    {"diversity_mean_std", OptionalToJson(r.diversity_mean_std)}};
  j["per_trial"] = std::move(trials);
  return j;
}

Report ReportFromJson(const nlohmann::json& j) {
  Report r;
  auto b = BenchmarkFromName(j.at("benchmark").get<std::string>());
  auto a = AlgorithmFromName(j.at("algorithm").get<std::string>());
  if (!b || !a) throw std::invalid_argument("unknown benchmark or algorithm");
  r.spec.benchmark = *b;
  r.spec.algorithm = *a;
  r.spec.budget_seconds = j.at("budget_seconds").get<double>();
  if (!j.at("budget_episodes").is_null()) {
    r.spec.budget_episodes = j.at("budget_episodes").get<uint64_t>();
  }
  r.spec.sample_rate = j.at("sample_rate").get<int>();
  r.spec.depth = j.at("depth").get<int>();
  r.spec.seed = j.at("seed").get<uint64_t>();
  r.spec.trials = j.at("trials").get<int>();
  r.clock = j.at("clock").get<std::string>();
  r.failed_trials = j.at("failed_trials").get<int64_t>();
  for (const auto& t : j.at("per_trial")) r.per_trial.push_back(TrialFromJson(t));
  const auto& agg = j.at("aggregate");
  r.unique_mean = agg.at("unique_valid_count_mean").get<double>();
  r.unique_std = agg.at("unique_valid_count_std").get<double>();
  r.diversity_mean_mean = OptionalFromJson(agg, "diversity_mean_mean");
  r.diversity_mean_std = OptionalFromJson(agg, "diversity_mean_std");
  return r;
}

std::string CountsCsv(const Report& r) {
  std::ostringstream out;
  out << (r.clock == "episodes" ? "episode" : "elapsed_ms") << ",unique_count\n";
  if (const TrialReport* t = r.first_trial()) {
    for (const auto& [at, n] : t->count_over_time) out << at << "," << n << "\n";
  }
  return out.str();
}

std::string SizesCsv(const Report& r) {
  std::ostringstream out;
  out << "size,count\n";
  if (const TrialReport* t = r.first_trial()) {
    for (const auto& [size, n] : t->size_histogram) {
      out << size << "," << n << "\n";
    }
  }
  return out.str();
}

namespace {

std::string Num(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::string Num(const std::optional<double>& x) { return x ? Num(*x) : ""; }

}  // namespace

std::string SummaryCsv(const Report& r) {
  std::ostringstream out;
  out << "trial,seed,unique_valid_count,diversity_mean,diversity_std\n";
  for (size_t i = 0; i < r.per_trial.size(); ++i) {
    const auto& t = r.per_trial[i];
    out << i << "," << t.seed << "," << t.unique_valid_count << ","
        << Num(t.diversity_mean) << "," << Num(t.diversity_std) << "\n";
  }
  out << "mean,," << Num(r.unique_mean) << "," << Num(r.diversity_mean_mean)
      << ",\n";
  out << "std,," << Num(r.unique_std) << "," << Num(r.diversity_mean_std)
      << ",\n";
  return out.str();
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << body;
  f.close();
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void EmitReport(const Report& r, ReportFormat format,
                const std::filesystem::path& path) {
  if (format == ReportFormat::kJson) {
    WriteFile(path, ReportToJson(r).dump(2) + "\n");
    return;
  }
  std::filesystem::path stem = path;
  if (stem.extension() == ".csv") stem.replace_extension();
  auto with_suffix = [&](const char* suffix) {
    std::filesystem::path p = stem;
    p += suffix;
    return p;
  };
  WriteFile(with_suffix("_counts.csv"), CountsCsv(r));
  WriteFile(with_suffix("_sizes.csv"), SizesCsv(r));
  WriteFile(with_suffix("_summary.csv"), SummaryCsv(r));
}

}  // namespace freegen
