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

// Free generators: choice trees that can be read as random generators, as
// parsers of choice sequences, or as formal languages over choice labels.

#ifndef FREEGEN_FREE_GEN_H_
#define FREEGEN_FREE_GEN_H_

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "freegen/value.h"

namespace freegen {

using Choice = char;
using ChoiceSeq = std::string;

// Raised by Select when the surviving branch list is empty or has duplicate
// labels.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration would exceed its cardinality bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using FunctionHandle = std::shared_ptr<const Function>;

struct Branch;

// An immutable choice tree: Void | Pure | Pair | Map | Select.
//
// Use the smart constructors below (Void, Pure, Pair, Map, Apply, Select) to
// obtain generators in simplified form. The Raw* factories build nodes
// verbatim and exist so that tests can produce non-simplified trees.
class FreeGen {
 public:
  enum class Kind { kVoid, kPure, kPair, kMap, kSelect };

  FreeGen() = default;  // Void

  static FreeGen RawPure(Value v);
  static FreeGen RawPair(FreeGen left, FreeGen right);
  static FreeGen RawMap(FunctionHandle fn, FreeGen inner);
  static FreeGen RawSelect(std::vector<Branch> branches);

  Kind kind() const;
  bool is_void() const { return node_ == nullptr; }
  bool is_pure() const { return kind() == Kind::kPure; }

  const Value& value() const;            // Pure
  const FreeGen& left() const;           // Pair
  const FreeGen& right() const;          // Pair
  const FreeGen& inner() const;          // Map
  const FunctionHandle& fn() const;      // Map
  const std::vector<Branch>& branches() const;  // Select

  // Select only: the branch generator labelled `c`, or nullptr.
  const FreeGen* Find(Choice c) const;

  // Identity of the underlying node; equal ids imply equal generators.
  const void* id() const { return node_.get(); }

  // S-expression rendering for debugging and golden tests.
  std::string ToString() const;

 private:
  struct Node;
  explicit FreeGen(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;  // null encodes Void
};

struct Branch {
  Choice choice;
  FreeGen gen;
};

// Structural equality. Map functions compare by identity.
bool StructurallyEqual(const FreeGen& a, const FreeGen& b);

// Smart constructors.
FreeGen Void();
FreeGen Pure(Value v);
FreeGen Pair(const FreeGen& x, const FreeGen& y);
FreeGen Map(FunctionHandle f, const FreeGen& x);
FreeGen Map(Function f, const FreeGen& x);
// `f` generates function values; the result applies them to `x`'s values.
FreeGen Apply(const FreeGen& f, const FreeGen& x);
FreeGen Select(std::vector<Branch> branches);

// Map over the right-nested pair (a, (b, c, ...)) built from `parts`; this is
// the n-ary lift used by the benchmark generators.
FreeGen Lift(std::function<Value(const std::vector<Value>&)> f,
             const std::vector<FreeGen>& parts);

// A sorted, duplicate-free set of choice sequences.
class Language {
 public:
  Language() = default;
  explicit Language(std::vector<ChoiceSeq> sequences);  // sorts and dedups

  size_t size() const { return sequences_.size(); }
  bool empty() const { return sequences_.empty(); }
  bool contains(std::string_view s) const;
  auto begin() const { return sequences_.begin(); }
  auto end() const { return sequences_.end(); }
  const std::vector<ChoiceSeq>& sequences() const { return sequences_; }

  friend bool operator==(const Language&, const Language&) = default;

 private:
  std::vector<ChoiceSeq> sequences_;
};

inline constexpr size_t kDefaultLanguageBound = 1'000'000;

// The set of choice sequences `g` can make. Throws ResourceError when more
// than `bound` sequences would be produced.
Language Lang(const FreeGen& g, size_t bound = kDefaultLanguageBound);

// Number of sequences in Lang(g), computed without enumeration. Saturates at
// SIZE_MAX.
size_t LanguageSize(const FreeGen& g);

bool IsSimplified(const FreeGen& g);
bool ContainsVoid(const FreeGen& g);

std::set<Choice> AlphabetOf(const FreeGen& g);

// Longest choice sequence in Lang(g); 0 for Pure, and for Void.
size_t MaxChoiceDepth(const FreeGen& g);

}  // namespace freegen

#endif  // FREEGEN_FREE_GEN_H_
