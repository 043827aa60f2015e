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

#ifndef FREEGEN_TESTS_TEST_UTIL_H_
#define FREEGEN_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "freegen/benchmarks.h"
#include "freegen/free_gen.h"
#include "freegen/interp.h"

namespace freegen::testing {

// A generator tree composed by calling smart constructors at random. Leaves
// are Void or small Pure ints; Select labels come from "abcde".
inline FreeGen RandomSmartGen(Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 6);
  std::uniform_int_distribution<int> small(0, 3);
  switch (pick(rng)) {
    case 0:
      return small(rng) == 0 ? Void() : Pure(Value::Int(small(rng)));
    case 1:
      return Pure(Value::Int(small(rng)));
    case 2:
      return Pair(RandomSmartGen(rng, depth - 1), RandomSmartGen(rng, depth - 1));
    case 3:
      return Map([](const Value& v) { return Value::Pair(v, Value::Int(7)); },
                 RandomSmartGen(rng, depth - 1));
    case 4: {
      FreeGen f = Pure(Value::Fn([](const Value& v) { return Value::List({v}); }));
      return Apply(f, RandomSmartGen(rng, depth - 1));
    }
    default: {
      std::string labels = "abcde";
      std::shuffle(labels.begin(), labels.end(), rng);
      std::vector<Branch> branches;
      const int n = 1 + small(rng);
      for (int i = 0; i < n; ++i) {
        branches.push_back({labels[i], RandomSmartGen(rng, depth - 1)});
      }
      try {
        return Select(std::move(branches));
      } catch (const ConstructionError&) {
        return Void();  // every branch was Void
      }
    }
  }
}

// The benchmark generators at small sizes, as used by the exact checks.
struct NamedGen {
  std::string name;
  Benchmark benchmark;
  int depth;
  FreeGen gen;
};

inline std::vector<NamedGen> SmallBenchmarkGens(int max_depth) {
  std::vector<NamedGen> out;
  for (int d = 0; d <= max_depth; ++d) {
    out.push_back({"bst" + std::to_string(d), Benchmark::kBst, d, BstGen(d)});
    out.push_back({"avl" + std::to_string(d), Benchmark::kAvl, d, AvlGen(d)});
    out.push_back({"stlc" + std::to_string(d), Benchmark::kStlc, d, StlcGen(d)});
  }
  for (int len = 0; len <= 3; ++len) {
    out.push_back({"sorted" + std::to_string(len), Benchmark::kSorted, len,
                   SortedGen(len)});
  }
  return out;
}

inline double ToDouble(const Rational& r) { return r.convert_to<double>(); }

// |observed/n - p| within k binomial standard errors. Outcomes with
// p*n < 1 are held to an absolute bound of k/n instead.
inline bool WithinBinomial(uint64_t observed, uint64_t n, double p, double k) {
  const double freq = static_cast<double>(observed) / n;
  const double se = std::sqrt(p * (1 - p) / n);
  return std::abs(freq - p) <= std::max(k * se, k / n);
}

}  // namespace freegen::testing

#endif  // FREEGEN_TESTS_TEST_UTIL_H_
