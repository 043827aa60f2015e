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

// Choice Gradient Sampling: a search over a free generator's choices that
// uses derivatives to estimate which next choice leads to valid values, and
// the rejection-sampling baseline it is measured against.

#ifndef FREEGEN_SEARCH_H_
#define FREEGEN_SEARCH_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "freegen/deriv.h"
#include "freegen/free_gen.h"
#include "freegen/interp.h"
#include "json.hpp"

namespace freegen {

using ValidityPredicate = std::function<bool(const Value&)>;

struct SearchConfig {
  // Samples drawn from each non-void derivative per step (N).
  int sample_rate = 50;
  // Choices to differentiate by; AlphabetOf(root) when unset.
  std::optional<std::set<Choice>> alphabet;
  uint64_t seed = 0;
  // Maximum restarts per episode; unlimited when unset.
  std::optional<uint64_t> restart_limit;
};

class RestartLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchStats {
  uint64_t episodes = 0;
  uint64_t restarts = 0;
  uint64_t samples = 0;
  uint64_t predicate_calls = 0;
  // Samples that passed the predicate, duplicates included.
  uint64_t valid_samples = 0;
  uint64_t wall_ms = 0;

  void Add(const SearchStats& other);

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

// A valid value with the choice sequence that produced it.
struct Found {
  ChoiceSeq witness;
  // Discovery time: elapsed milliseconds or episode index, depending on the
  // collector's budget mode.
  uint64_t tick = 0;
};

struct SearchOutcome {
  std::map<Value, Found> values;
  SearchStats stats;
  // Descent word of the most recent CGS episode.
  ChoiceSeq path;

  // Keeps the first witness for a value. Returns true if the value is new.
  bool Insert(const Value& v, const ChoiceSeq& witness, uint64_t tick = 0);
  // Unions values (first occurrence wins) and adds stats.
  void Merge(const SearchOutcome& other, uint64_t tick);

  size_t size() const { return values.size(); }

  // {"values": [{"value", "witness"}...], "stats": {...}}
  nlohmann::json ToJson() const;
};

// Picks index i with probability weights[i] / sum(weights). Throws
// std::invalid_argument when every weight is zero or the span is empty.
size_t WeightedIndex(std::span<const uint64_t> weights, Rng& rng);

template <typename T>
const T& WeightedChoice(std::span<const std::pair<uint64_t, T>> weighted,
                        Rng& rng) {
  std::vector<uint64_t> w;
  w.reserve(weighted.size());
  for (const auto& [weight, item] : weighted) w.push_back(weight);
  return weighted[WeightedIndex(w, rng)].second;
}

// Stream `stream` of the seed family rooted at `base`.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);

// One CGS episode: descend from `root` until a Pure node is reached. At each
// step every non-void derivative is sampled cfg.sample_rate times; valid
// samples are kept and their count weights the next choice. When no
// derivative yields a valid sample, non-void derivatives are weighted
// equally. Returned values all satisfy `valid`.
//
// Throws std::invalid_argument if root is void or not simplified, and
// RestartLimitExceeded when cfg.restart_limit is hit.
SearchOutcome CgsEpisode(const FreeGen& root, const SearchConfig& cfg,
                         const ValidityPredicate& valid);
SearchOutcome CgsEpisode(const FreeGen& root, const SearchConfig& cfg,
                         const ValidityPredicate& valid, Rng& rng);

// CGS over a generator paired with an external distribution. Derivative
// fitness is estimated with SampleWithExternalDist.
SearchOutcome CgsEpisodeWithDist(const FreeGen& root, const ExternalDist& d0,
                                 const SearchConfig& cfg,
                                 const ValidityPredicate& valid, Rng& rng);

// Either a wall-clock duration or a fixed number of episodes (draws, for
// rejection sampling).
struct Budget {
  enum class Mode { kWallClock, kEpisodes };

  Mode mode = Mode::kEpisodes;
  std::chrono::milliseconds wall{0};
  uint64_t episodes = 0;

  static Budget WallClock(std::chrono::milliseconds d) {
    return {Mode::kWallClock, d, 0};
  }
  static Budget Seconds(double s) {
    return WallClock(std::chrono::milliseconds(static_cast<int64_t>(s * 1000)));
  }
  static Budget Episodes(uint64_t n) { return {Mode::kEpisodes, {}, n}; }
};

// Runs CGS episodes until the budget is spent. Episode k draws from the RNG
// stream DeriveSeed(cfg.seed, k).
SearchOutcome CgsCollect(const FreeGen& root, const SearchConfig& cfg,
                         const ValidityPredicate& valid, const Budget& budget);

// Samples choice sequences from root, parses them, and keeps valid values.
SearchOutcome RejectionCollect(const FreeGen& root, uint64_t seed,
                               const ValidityPredicate& valid,
                               const Budget& budget);

}  // namespace freegen

#endif  // FREEGEN_SEARCH_H_
