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

#include "freegen/search.h"

#include <algorithm>
#include <string>

namespace freegen {

void SearchStats::Add(const SearchStats& other) {
  episodes += other.episodes;
  restarts += other.restarts;
  samples += other.samples;
  predicate_calls += other.predicate_calls;
  valid_samples += other.valid_samples;
  wall_ms += other.wall_ms;
}

bool SearchOutcome::Insert(const Value& v, const ChoiceSeq& witness,
                           uint64_t tick) {
  return values.try_emplace(v, Found{witness, tick}).second;
}

void SearchOutcome::Merge(const SearchOutcome& other, uint64_t tick) {
  for (const auto& [v, found] : other.values) {
    values.try_emplace(v, Found{found.witness, tick});
  }
  stats.Add(other.stats);
  path = other.path;
}

nlohmann::json SearchOutcome::ToJson() const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& [v, found] : values) {
    vs.push_back({{"value", v.ToString()}, {"witness", found.witness}});
  }
  return {{"values", std::move(vs)},
          {"stats",
           {{"episodes", stats.episodes},
            {"restarts", stats.restarts},
            {"samples", stats.samples},
            {"predicate_calls", stats.predicate_calls},
            {"valid_samples", stats.valid_samples},
            {"wall_ms", stats.wall_ms}}}};
}

size_t WeightedIndex(std::span<const uint64_t> weights, Rng& rng) {
  uint64_t total = 0;
  for (uint64_t w : weights) total += w;
  if (total == 0) {
    throw std::invalid_argument("weighted choice needs a positive weight");
  }
  uint64_t r = std::uniform_int_distribution<uint64_t>(0, total - 1)(rng);
  for (size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) return i;
    r -= weights[i];
  }
  return weights.size() - 1;  // unreachable
}

uint64_t DeriveSeed(uint64_t base, uint64_t stream) {
  // splitmix64 over base and stream
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void CheckRoot(const FreeGen& root, const SearchConfig& cfg) {
  if (root.is_void()) throw std::invalid_argument("search root is void");
  if (!IsSimplified(root)) {
    throw std::invalid_argument("search root is not in simplified form");
  }
  if (cfg.sample_rate < 1) {
    throw std::invalid_argument("sample rate must be at least 1");
  }
}

std::vector<Choice> ResolveAlphabet(const FreeGen& root,
                                    const SearchConfig& cfg) {
  std::set<Choice> a = cfg.alphabet ? *cfg.alphabet : AlphabetOf(root);
  return {a.begin(), a.end()};
}

size_t CountDistinct(std::vector<Value>& vs) {
  std::sort(vs.begin(), vs.end());
  return static_cast<size_t>(
      std::unique(vs.begin(), vs.end()) - vs.begin());
}

// Episode state for plain generators.
struct PlainState {
  FreeGen gen;

  std::optional<Value> nullable() const { return Nullable(gen); }
  bool is_void() const { return gen.is_void(); }
  PlainState Step(Choice c) const { return {Derivative(c, gen)}; }

  // Draws one sample; returns the value and the choices made.
  std::optional<Value> Sample(Rng& rng, ChoiceSeq* trace) const {
    return SampleTraced(gen, rng, trace);
  }
};

struct DistState {
  DistGen dg;

  std::optional<Value> nullable() const { return Nullable(dg); }
  bool is_void() const { return dg.gen.is_void(); }
  DistState Step(Choice c) const {
    return {DerivativeWithDist(dg.dist, dg.gen, c)};
  }
  std::optional<Value> Sample(Rng& rng, ChoiceSeq* trace) const {
    return SampleWithExternalDist(dg.dist, dg.gen, rng, trace);
  }
};

template <typename State>
void RunEpisode(const State& start, const std::vector<Choice>& alphabet,
                const SearchConfig& cfg, const ValidityPredicate& valid,
                Rng& rng, SearchOutcome* out, uint64_t tick) {
  State state = start;
  ChoiceSeq prefix;
  uint64_t restarts = 0;
  auto restart = [&] {
    ++out->stats.restarts;
    if (cfg.restart_limit && ++restarts > *cfg.restart_limit) {
      throw RestartLimitExceeded("CGS exceeded " +
                                 std::to_string(*cfg.restart_limit) +
                                 " restarts");
    }
    state = start;
    prefix.clear();
  };

  std::vector<State> steps;
  std::vector<uint64_t> fitness;
  std::vector<Value> valid_here;
  ChoiceSeq suffix;
  ChoiceSeq witness;
  ++out->stats.episodes;
  while (true) {
    if (auto v = state.nullable()) {
      ++out->stats.predicate_calls;
      if (valid(*v)) {
        ++out->stats.valid_samples;
        out->Insert(*v, prefix, tick);
      }
      out->path = prefix;
      return;
    }
    if (state.is_void()) {
      restart();
      continue;
    }

    steps.clear();
    fitness.clear();
    bool any_live = false;
    for (Choice c : alphabet) {
      steps.push_back(state.Step(c));
      const State& next = steps.back();
      if (next.is_void()) {
        fitness.push_back(0);
        continue;
      }
      any_live = true;
      valid_here.clear();
      for (int i = 0; i < cfg.sample_rate; ++i) {
        suffix.clear();
        std::optional<Value> x = next.Sample(rng, &suffix);
        ++out->stats.samples;
        if (!x) continue;
        ++out->stats.predicate_calls;
        if (!valid(*x)) continue;
        ++out->stats.valid_samples;
        witness.assign(prefix);
        witness.push_back(c);
        witness += suffix;
        out->Insert(*x, witness, tick);
        valid_here.push_back(std::move(*x));
      }
      fitness.push_back(CountDistinct(valid_here));
    }

    if (!any_live) {
      restart();
      continue;
    }
    if (std::all_of(fitness.begin(), fitness.end(),
                    [](uint64_t f) { return f == 0; })) {
      for (size_t i = 0; i < steps.size(); ++i) {
        fitness[i] = steps[i].is_void() ? 0 : 1;
      }
    }
    const size_t pick = WeightedIndex(fitness, rng);
    state = std::move(steps[pick]);
    prefix.push_back(alphabet[pick]);
  }
}

template <typename Clock>
uint64_t ElapsedMs(typename Clock::time_point start) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                            start)
          .count());
}

}  // namespace

SearchOutcome CgsEpisode(const FreeGen& root, const SearchConfig& cfg,
                         const ValidityPredicate& valid) {
  Rng rng(cfg.seed);
  return CgsEpisode(root, cfg, valid, rng);
}

SearchOutcome CgsEpisode(const FreeGen& root, const SearchConfig& cfg,
                         const ValidityPredicate& valid, Rng& rng) {
  CheckRoot(root, cfg);
  SearchOutcome out;
  RunEpisode(PlainState{root}, ResolveAlphabet(root, cfg), cfg, valid, rng,
             &out, 0);
  return out;
}

SearchOutcome CgsEpisodeWithDist(const FreeGen& root, const ExternalDist& d0,
                                 const SearchConfig& cfg,
                                 const ValidityPredicate& valid, Rng& rng) {
  CheckRoot(root, cfg);
  SearchOutcome out;
  RunEpisode(DistState{DistGen{d0, root}}, ResolveAlphabet(root, cfg), cfg,
             valid, rng, &out, 0);
  return out;
}

SearchOutcome CgsCollect(const FreeGen& root, const SearchConfig& cfg,
                         const ValidityPredicate& valid, const Budget& budget) {
  CheckRoot(root, cfg);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::vector<Choice> alphabet = ResolveAlphabet(root, cfg);
  SearchOutcome out;
  for (uint64_t k = 0;; ++k) {
    uint64_t tick;
    if (budget.mode == Budget::Mode::kEpisodes) {
      if (k >= budget.episodes) break;
      tick = k;
    } else {
      tick = ElapsedMs<Clock>(start);
      if (std::chrono::milliseconds(tick) >= budget.wall) break;
    }
    Rng rng(DeriveSeed(cfg.seed, k));
    RunEpisode(PlainState{root}, alphabet, cfg, valid, rng, &out, tick);
  }
  out.stats.wall_ms = ElapsedMs<Clock>(start);
  return out;
}

SearchOutcome RejectionCollect(const FreeGen& root, uint64_t seed,
                               const ValidityPredicate& valid,
                               const Budget& budget) {
  if (root.is_void()) throw std::invalid_argument("search root is void");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Rng rng(seed);
  SearchOutcome out;
  for (uint64_t k = 0;; ++k) {
    uint64_t tick;
    if (budget.mode == Budget::Mode::kEpisodes) {
      if (k >= budget.episodes) break;
      tick = k;
    } else {
      tick = ElapsedMs<Clock>(start);
      if (std::chrono::milliseconds(tick) >= budget.wall) break;
    }
    ChoiceSeq s = SampleChoices(root, rng);
    ParseResult r = Parse(root, s);
    ++out.stats.samples;
    if (!r.complete()) {
      throw std::logic_error("sampled choice sequence did not parse: " + s);
    }
    ++out.stats.predicate_calls;
    if (valid(*r.value)) {
      ++out.stats.valid_samples;
      out.Insert(*r.value, s, tick);
    }
  }
  out.stats.episodes = out.stats.samples;
  out.stats.wall_ms = ElapsedMs<Clock>(start);
  return out;
}

}  // namespace freegen
