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

#include "freegen/deriv.h"

#include <stdexcept>

namespace freegen {

FreeGen Derivative(Choice c, const FreeGen& g) {
  switch (g.kind()) {
    case FreeGen::Kind::kVoid:
    case FreeGen::Kind::kPure:
      return Void();
    case FreeGen::Kind::kMap:
      return Map(g.fn(), Derivative(c, g.inner()));
    case FreeGen::Kind::kPair:
      return Pair(Derivative(c, g.left()), g.right());
    case FreeGen::Kind::kSelect: {
      const FreeGen* next = g.Find(c);
      return next ? *next : Void();
    }
  }
  return Void();
}

FreeGen Derivative(std::string_view word, const FreeGen& g) {
  FreeGen cur = g;
  for (Choice c : word) {
    cur = Derivative(c, cur);
    if (cur.is_void()) break;
  }
  return cur;
}

std::optional<Value> Nullable(const FreeGen& g) {
  if (g.is_pure()) return g.value();
  return std::nullopt;
}

const FreeGen& Gradient::at(Choice c) const {
  for (const auto& [sym, d] : entries) {
    if (sym == c) return d;
  }
  throw std::out_of_range(std::string("symbol not in gradient: ") + c);
}

Gradient ComputeGradient(const FreeGen& g, const std::set<Choice>& alphabet) {
  Gradient out;
  out.entries.reserve(alphabet.size());
  for (Choice c : alphabet) out.entries.emplace_back(c, Derivative(c, g));
  return out;
}

DistGen DerivativeWithDist(const ExternalDist& d, const FreeGen& g, Choice c) {
  DistGen out{d, Derivative(c, g)};
  out.dist.history.push_back(c);
  return out;
}

}  // namespace freegen
