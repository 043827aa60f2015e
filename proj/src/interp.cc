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

#include "freegen/interp.h"

#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace freegen {
namespace {

size_t UniformIndex(Rng& rng, size_t k) {
  return std::uniform_int_distribution<size_t>(0, k - 1)(rng);
}

[[noreturn]] void SampleVoid() {
  throw std::invalid_argument("cannot sample from a void generator");
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

std::string ParseResult::ToString() const {
  if (!ok()) return "Failure";
  return "Success(" + value->ToString() + ", \"" + remainder + "\")";
}

int Compare(const ParseResult& a, const ParseResult& b) {
  if (a.ok() != b.ok()) return a.ok() ? 1 : -1;
  if (!a.ok()) return 0;
  if (int c = Compare(*a.value, *b.value)) return c;
  return a.remainder.compare(b.remainder) < 0
             ? -1
             : (a.remainder == b.remainder ? 0 : 1);
}

std::optional<Value> ParsePrefix(const FreeGen& g, std::string_view input,
                                 size_t* pos) {
  switch (g.kind()) {
    case FreeGen::Kind::kVoid:
      return std::nullopt;
    case FreeGen::Kind::kPure:
      return g.value();
    case FreeGen::Kind::kMap: {
      auto v = ParsePrefix(g.inner(), input, pos);
      if (!v) return std::nullopt;
      return (*g.fn())(*v);
    }
    case FreeGen::Kind::kPair: {
      auto a = ParsePrefix(g.left(), input, pos);
      if (!a) return std::nullopt;
      auto b = ParsePrefix(g.right(), input, pos);
      if (!b) return std::nullopt;
      return Value::Pair(std::move(*a), std::move(*b));
    }
    case FreeGen::Kind::kSelect: {
      if (*pos >= input.size()) return std::nullopt;
      const FreeGen* next = g.Find(input[*pos]);
      if (next == nullptr) return std::nullopt;
      ++*pos;
      return ParsePrefix(*next, input, pos);
    }
  }
  return std::nullopt;
}

ParseResult Parse(const FreeGen& g, std::string_view input) {
  size_t pos = 0;
  auto v = ParsePrefix(g, input, &pos);
  if (!v) return ParseResult::Failure();
  return ParseResult::Success(std::move(*v), ChoiceSeq(input.substr(pos)));
}

// ---------------------------------------------------------------------------
// Sampling

Value SampleValue(const FreeGen& g, Rng& rng) {
  switch (g.kind()) {
    case FreeGen::Kind::kVoid:
      SampleVoid();
    case FreeGen::Kind::kPure:
      return g.value();
    case FreeGen::Kind::kMap:
      return (*g.fn())(SampleValue(g.inner(), rng));
    case FreeGen::Kind::kPair: {
      Value a = SampleValue(g.left(), rng);
      return Value::Pair(std::move(a), SampleValue(g.right(), rng));
    }
    case FreeGen::Kind::kSelect: {
      const auto& brs = g.branches();
      return SampleValue(brs[UniformIndex(rng, brs.size())].gen, rng);
    }
  }
  SampleVoid();
}

namespace {

void AppendChoices(const FreeGen& g, Rng& rng, ChoiceSeq* out) {
  switch (g.kind()) {
    case FreeGen::Kind::kVoid:
      SampleVoid();
    case FreeGen::Kind::kPure:
      return;
    case FreeGen::Kind::kMap:
      AppendChoices(g.inner(), rng, out);
      return;
    case FreeGen::Kind::kPair:
      AppendChoices(g.left(), rng, out);
      AppendChoices(g.right(), rng, out);
      return;
    case FreeGen::Kind::kSelect: {
      const auto& br = g.branches()[UniformIndex(rng, g.branches().size())];
      out->push_back(br.choice);
      AppendChoices(br.gen, rng, out);
      return;
    }
  }
}

}  // namespace

ChoiceSeq SampleChoices(const FreeGen& g, Rng& rng) {
  ChoiceSeq out;
  AppendChoices(g, rng, &out);
  return out;
}

Value SampleTraced(const FreeGen& g, Rng& rng, ChoiceSeq* trace) {
  switch (g.kind()) {
    case FreeGen::Kind::kVoid:
      SampleVoid();
    case FreeGen::Kind::kPure:
      return g.value();
    case FreeGen::Kind::kMap:
      return (*g.fn())(SampleTraced(g.inner(), rng, trace));
    case FreeGen::Kind::kPair: {
      Value a = SampleTraced(g.left(), rng, trace);
      return Value::Pair(std::move(a), SampleTraced(g.right(), rng, trace));
    }
    case FreeGen::Kind::kSelect: {
      const auto& br = g.branches()[UniformIndex(rng, g.branches().size())];
      trace->push_back(br.choice);
      return SampleTraced(br.gen, rng, trace);
    }
  }
  SampleVoid();
}

ValueSampler::ValueSampler(FreeGen g, uint64_t seed)
    : gen_(std::move(g)), rng_(seed) {
  if (gen_.is_void()) SampleVoid();
}

ChoiceSampler::ChoiceSampler(FreeGen g, uint64_t seed)
    : gen_(std::move(g)), rng_(seed) {
  if (gen_.is_void()) SampleVoid();
}

// ---------------------------------------------------------------------------
// Exact distributions

namespace {

// Unmerged weighted outcome lists, memoized per node. Both recursions keep
// one entry per choice sequence, so a bound on entries is a bound on the
// language.
template <typename Out>
class WeightedEnumerator {
 public:
  using Entries = std::vector<std::pair<Out, Rational>>;
  using Shared = std::shared_ptr<const Entries>;

  explicit WeightedEnumerator(size_t bound) : bound_(bound) {}

  template <typename Pure, typename MapF, typename PairF, typename Prefix>
  Shared Build(const FreeGen& g, const Pure& pure, const MapF& map,
               const PairF& pair, const Prefix& prefix) {
    if (g.is_void()) SampleVoid();
    if (auto it = memo_.find(g.id()); it != memo_.end()) return it->second;
    auto out = std::make_shared<Entries>();
    switch (g.kind()) {
      case FreeGen::Kind::kVoid:
        SampleVoid();
      case FreeGen::Kind::kPure:
        out->emplace_back(pure(g), Rational(1));
        break;
      case FreeGen::Kind::kMap: {
        Shared xs = Build(g.inner(), pure, map, pair, prefix);
        out->reserve(xs->size());
        for (const auto& [x, p] : *xs) out->emplace_back(map(g, x), p);
        break;
      }
      case FreeGen::Kind::kPair: {
        Shared xs = Build(g.left(), pure, map, pair, prefix);
        Shared ys = Build(g.right(), pure, map, pair, prefix);
        Check(static_cast<double>(xs->size()) * static_cast<double>(ys->size()));
        out->reserve(xs->size() * ys->size());
        for (const auto& [x, p] : *xs) {
          for (const auto& [y, q] : *ys) out->emplace_back(pair(x, y), p * q);
        }
        break;
      }
      case FreeGen::Kind::kSelect: {
        const auto& brs = g.branches();
        const Rational share(1, static_cast<int64_t>(brs.size()));
        std::vector<Shared> parts;
        double total = 0;
        for (const auto& br : brs) {
          parts.push_back(Build(br.gen, pure, map, pair, prefix));
          total += static_cast<double>(parts.back()->size());
        }
        Check(total);
        out->reserve(static_cast<size_t>(total));
        for (size_t i = 0; i < brs.size(); ++i) {
          for (const auto& [x, p] : *parts[i])
            out->emplace_back(prefix(brs[i].choice, x), p * share);
        }
        break;
      }
    }
    Shared shared = std::move(out);
    memo_.emplace(g.id(), shared);
    return shared;
  }

 private:
  void Check(double n) const {
    if (n > static_cast<double>(bound_)) {
      throw ResourceError("distribution support exceeds bound of " +
                          std::to_string(bound_));
    }
  }

  size_t bound_;
  std::unordered_map<const void*, Shared> memo_;
};

}  // namespace

ChoicePmf ExactChoicePmf(const FreeGen& g, size_t bound) {
  WeightedEnumerator<ChoiceSeq> e(bound);
  auto entries = e.Build(
      g, [](const FreeGen&) { return ChoiceSeq(); },
      [](const FreeGen&, const ChoiceSeq& s) { return s; },
      [](const ChoiceSeq& s, const ChoiceSeq& t) { return s + t; },
      [](Choice c, const ChoiceSeq& s) {
        ChoiceSeq out;
        out.reserve(s.size() + 1);
        out.push_back(c);
        return out += s;
      });
  return ChoicePmf::FromUnmerged(*entries);
}

ValuePmf ExactValuePmf(const FreeGen& g, size_t bound) {
  WeightedEnumerator<Value> e(bound);
  auto entries = e.Build(
      g, [](const FreeGen& n) { return n.value(); },
      [](const FreeGen& n, const Value& v) { return (*n.fn())(v); },
      [](const Value& a, const Value& b) { return Value::Pair(a, b); },
      [](Choice, const Value& v) { return v; });
  return ValuePmf::FromUnmerged(*entries);
}

ExactPmf<ParseResult> ParsePushforward(const FreeGen& g,
                                       const ChoicePmf& choices) {
  return choices.Pushforward(
      [&g](const ChoiceSeq& s) { return Parse(g, s); });
}

namespace {

nlohmann::json BigToJson(const boost::multiprecision::cpp_int& n) {
  if (n >= std::numeric_limits<int64_t>::min() &&
      n <= std::numeric_limits<int64_t>::max()) {
    return static_cast<int64_t>(n);
  }
  return n.str();
}

boost::multiprecision::cpp_int BigFromJson(const nlohmann::json& j) {
  if (j.is_string()) return boost::multiprecision::cpp_int(j.get<std::string>());
  return boost::multiprecision::cpp_int(j.get<int64_t>());
}

}  // namespace

template <typename Key>
nlohmann::json PmfToJson(const ExactPmf<Key>& pmf) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, p] : pmf) {
    out.push_back({{"outcome", OutcomeKey(k)},
                   {"num", BigToJson(boost::multiprecision::numerator(p))},
                   {"den", BigToJson(boost::multiprecision::denominator(p))}});
  }
  return out;
}

template nlohmann::json PmfToJson(const ChoicePmf&);
template nlohmann::json PmfToJson(const ValuePmf&);
template nlohmann::json PmfToJson(const ExactPmf<ParseResult>&);

std::vector<std::pair<std::string, Rational>> PmfFromJson(
    const nlohmann::json& j) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& e : j) {
    out.emplace_back(e.at("outcome").get<std::string>(),
                     Rational(BigFromJson(e.at("num")), BigFromJson(e.at("den"))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// External distributions

ExternalDist UniformExternalDist(std::set<Choice> alphabet,
                                 double stop_probability) {
  std::vector<Choice> symbols(alphabet.begin(), alphabet.end());
  if (symbols.empty()) stop_probability = 1.0;
  ExternalDist d;
  d.next = [symbols = std::move(symbols), stop_probability](
               std::string_view, Rng& rng) -> std::optional<Choice> {
    if (std::bernoulli_distribution(stop_probability)(rng)) return std::nullopt;
    return symbols[UniformIndex(rng, symbols.size())];
  };
  return d;
}

std::optional<Value> SampleWithExternalDist(const ExternalDist& d,
                                            const FreeGen& g, Rng& rng,
                                            ChoiceSeq* emitted,
                                            size_t max_emitted) {
  ChoiceSeq history = d.history;
  const size_t start = history.size();
  bool overflow = false;
  while (true) {
    std::optional<Choice> c = d.next(history, rng);
    if (!c) break;
    if (history.size() - start >= max_emitted) {
      overflow = true;
      break;
    }
    history.push_back(*c);
  }
  std::string_view fresh = std::string_view(history).substr(start);
  if (emitted != nullptr) emitted->assign(fresh);
  if (overflow) return std::nullopt;
  ParseResult r = Parse(g, fresh);
  if (!r.complete()) return std::nullopt;
  return std::move(r.value);
}

}  // namespace freegen
