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

// The benchmark generators and validity predicates: binary search trees,
// sorted lists, AVL trees, and well-typed lambda terms.

#ifndef FREEGEN_BENCHMARKS_H_
#define FREEGEN_BENCHMARKS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freegen/free_gen.h"
#include "freegen/search.h"

namespace freegen {

enum class Benchmark { kBst, kSorted, kAvl, kStlc };

inline constexpr Benchmark kAllBenchmarks[] = {
    Benchmark::kBst, Benchmark::kSorted, Benchmark::kAvl, Benchmark::kStlc};

std::string_view BenchmarkName(Benchmark b);
std::optional<Benchmark> BenchmarkFromName(std::string_view name);

// Select over '0'..'9' yielding the digit as an Int.
FreeGen DigitGen();

// Trees of Booleans: l = Leaf, n = Node, t/f = payload.
FreeGen BoolTreeGen(int depth);

// Trees with digit payloads: l = Leaf, n = Node <digit> <left> <right>.
FreeGen BstGen(int depth);
// Digit lists of length <= max_len: e = nil, c = cons <digit> <tail>.
FreeGen SortedGen(int max_len);
// n <digit value> <digit stored height> <left> <right>.
FreeGen AvlGen(int depth);
// Types: n = Int, f = arrow. Depth 0 is Int only.
FreeGen TypeGen(int depth);
inline constexpr int kStlcTypeDepth = 2;
// Terms: i = Lit, v = Var, p = Plus, l = Lam, a = App. Depth 0 has only
// Lit and Var.
FreeGen StlcGen(int depth);

bool IsBst(const Tree& t);
bool IsSorted(const std::vector<Value>& xs);
// Ordered, heights cached correctly (Leaf = 0), and balanced.
bool IsAvl(const Tree& t);
int64_t Height(const Tree& t);

// Type of a closed term, or nothing when ill-typed.
std::optional<Ty> TypeCheck(const Expr& e);
inline bool IsWellTyped(const Expr& e) { return TypeCheck(e).has_value(); }

// Injective string form for benchmark values, spelled with the benchmark
// choice labels ("n5ln6ll" for Node 5 Leaf (Node 6 Leaf Leaf)). Throws
// std::invalid_argument outside the benchmark domains.
std::string CanonicalSerialize(const Value& v);

// The choice sequence by which the benchmark generator at `depth` produces
// `v`, or nothing if it cannot. Unlike CanonicalSerialize this omits the
// choices that depth-0 generators do not make.
std::optional<ChoiceSeq> ChoicesFor(Benchmark b, int depth, const Value& v);

// Constructor count: Leaf = 1, Node = 1 + children, Nil = 1, Cons = 1 + tail,
// each term node = 1 + subterms.
int64_t SizeOf(const Value& v);

struct BenchmarkSetup {
  Benchmark id;
  int depth;
  int sample_rate;
  FreeGen gen;
  ValidityPredicate valid;
};

int DefaultSampleRate(Benchmark b);
int DefaultDepth(Benchmark b);

BenchmarkSetup MakeBenchmark(Benchmark b, int depth);
ValidityPredicate ValidityFor(Benchmark b);

}  // namespace freegen

#endif  // FREEGEN_BENCHMARKS_H_
