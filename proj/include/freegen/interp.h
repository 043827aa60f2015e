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

// Interpretations of a free generator: as a random generator of values, as a
// parser of choice sequences, as a random generator of choice sequences, and
// as a parser driven by an external next-choice distribution. Exact
// (rational) distributions are provided for finite generators.

#ifndef FREEGEN_INTERP_H_
#define FREEGEN_INTERP_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freegen/free_gen.h"
#include "json.hpp"

namespace freegen {

using Rng = std::mt19937_64;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Parsing

// Failure, or Success(value, remainder) where remainder is a suffix of the
// parsed input.
struct ParseResult {
  std::optional<Value> value;
  ChoiceSeq remainder;

  static ParseResult Failure() { return {}; }
  static ParseResult Success(Value v, ChoiceSeq rest) {
    return {std::move(v), std::move(rest)};
  }
  bool ok() const { return value.has_value(); }
  // Succeeded and consumed the whole input.
  bool complete() const { return ok() && remainder.empty(); }

  std::string ToString() const;
};

int Compare(const ParseResult& a, const ParseResult& b);
inline bool operator==(const ParseResult& a, const ParseResult& b) {
  return Compare(a, b) == 0;
}
inline bool operator<(const ParseResult& a, const ParseResult& b) {
  return Compare(a, b) < 0;
}

ParseResult Parse(const FreeGen& g, std::string_view input);

// Parses a prefix of `input` starting at `*pos`, advancing `*pos` past the
// consumed choices. Returns nullopt on failure (`*pos` is then unspecified).
std::optional<Value> ParsePrefix(const FreeGen& g, std::string_view input,
                                 size_t* pos);

// ---------------------------------------------------------------------------
// Sampling. Select nodes choose uniformly among their branches. Sampling Void
// throws std::invalid_argument.

Value SampleValue(const FreeGen& g, Rng& rng);
ChoiceSeq SampleChoices(const FreeGen& g, Rng& rng);
// Samples a value and appends the choices made to `*trace`.
Value SampleTraced(const FreeGen& g, Rng& rng, ChoiceSeq* trace);

// Owns its generator and pseudorandom source.
class ValueSampler {
 public:
  ValueSampler(FreeGen g, uint64_t seed);
  Value Draw() { return SampleValue(gen_, rng_); }

 private:
  FreeGen gen_;
  Rng rng_;
};

class ChoiceSampler {
 public:
  ChoiceSampler(FreeGen g, uint64_t seed);
  ChoiceSeq Draw() { return SampleChoices(gen_, rng_); }

 private:
  FreeGen gen_;
  Rng rng_;
};

// ---------------------------------------------------------------------------
// Exact distributions

inline std::string OutcomeKey(const ChoiceSeq& s) { return s; }
inline std::string OutcomeKey(const Value& v) { return v.ToString(); }
inline std::string OutcomeKey(const ParseResult& r) { return r.ToString(); }

namespace internal {
inline bool KeyLess(const ChoiceSeq& a, const ChoiceSeq& b) { return a < b; }
inline bool KeyLess(const Value& a, const Value& b) { return a < b; }
inline bool KeyLess(const ParseResult& a, const ParseResult& b) {
  return a < b;
}
}  // namespace internal

// Finite map from outcomes to exact probabilities, sorted by outcome.
template <typename Key>
class ExactPmf {
 public:
  using Entry = std::pair<Key, Rational>;

  ExactPmf() = default;

  // Sorts the entries and merges equal outcomes by summing their mass.
  static ExactPmf FromUnmerged(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) {
                return internal::KeyLess(a.first, b.first);
              });
    ExactPmf out;
    for (auto& e : entries) {
      if (!out.entries_.empty() &&
          !internal::KeyLess(out.entries_.back().first, e.first)) {
        out.entries_.back().second += e.second;
      } else {
        out.entries_.push_back(std::move(e));
      }
    }
    return out;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Rational Mass(const Key& k) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const Entry& e, const Key& key) {
                                 return internal::KeyLess(e.first, key);
                               });
    if (it == entries_.end() || internal::KeyLess(k, it->first)) return 0;
    return it->second;
  }

  Rational Total() const {
    Rational t = 0;
    for (const auto& e : entries_) t += e.second;
    return t;
  }

  template <typename F>
  auto Pushforward(F&& f) const {
    using Out = std::decay_t<decltype(f(std::declval<const Key&>()))>;
    std::vector<typename ExactPmf<Out>::Entry> mapped;
    mapped.reserve(entries_.size());
    for (const auto& [k, p] : entries_) mapped.emplace_back(f(k), p);
    return ExactPmf<Out>::FromUnmerged(std::move(mapped));
  }

  friend bool operator==(const ExactPmf& a, const ExactPmf& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (size_t i = 0; i < a.entries_.size(); ++i) {
      const auto& [ka, pa] = a.entries_[i];
      const auto& [kb, pb] = b.entries_[i];
      if (internal::KeyLess(ka, kb) || internal::KeyLess(kb, ka) || pa != pb)
        return false;
    }
    return true;
  }

 private:
  std::vector<Entry> entries_;
};

using ChoicePmf = ExactPmf<ChoiceSeq>;
using ValuePmf = ExactPmf<Value>;

// Exact distribution of SampleChoices(g). Throws ResourceError if the
// language of g exceeds `bound`; std::invalid_argument for Void.
ChoicePmf ExactChoicePmf(const FreeGen& g,
                         size_t bound = kDefaultLanguageBound);

// Exact distribution of SampleValue(g), computed by the generator recursion
// (independently of the parser).
ValuePmf ExactValuePmf(const FreeGen& g, size_t bound = kDefaultLanguageBound);

// Distribution of Parse(g, s) for s drawn from `choices`.
ExactPmf<ParseResult> ParsePushforward(const FreeGen& g,
                                       const ChoicePmf& choices);

// Serialized as a list of {"outcome", "num", "den"} objects. Numerators and
// denominators that do not fit in 64 bits are written as decimal strings.
template <typename Key>
nlohmann::json PmfToJson(const ExactPmf<Key>& pmf);
extern template nlohmann::json PmfToJson(const ChoicePmf&);
extern template nlohmann::json PmfToJson(const ValuePmf&);
extern template nlohmann::json PmfToJson(const ExactPmf<ParseResult>&);

// Reads the JSON form back as outcome-string -> probability.
std::vector<std::pair<std::string, Rational>> PmfFromJson(
    const nlohmann::json& j);

// ---------------------------------------------------------------------------
// External distributions

// A next-choice distribution conditioned on the full choice history. `next`
// returns nullopt to stop.
struct ExternalDist {
  using NextFn =
      std::function<std::optional<Choice>(std::string_view history, Rng& rng)>;

  ChoiceSeq history;
  NextFn next;
};

// Uniform next choice over `alphabet`, stopping with `stop_probability`
// before each choice. Ignores the history.
ExternalDist UniformExternalDist(std::set<Choice> alphabet,
                                 double stop_probability);

inline constexpr size_t kDefaultMaxEmitted = 4096;

// Queries `d.next` on the growing history until it stops, then parses the
// choices emitted in this call (not `d.history`) with `g`. Returns nullopt
// if that parse fails or leaves a remainder, or if more than `max_emitted`
// choices are emitted. If `emitted` is non-null it receives the choices.
std::optional<Value> SampleWithExternalDist(
    const ExternalDist& d, const FreeGen& g, Rng& rng,
    ChoiceSeq* emitted = nullptr, size_t max_emitted = kDefaultMaxEmitted);

}  // namespace freegen

#endif  // FREEGEN_INTERP_H_
