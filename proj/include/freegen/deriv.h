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

// Brzozowski-style derivatives of free generators.

#ifndef FREEGEN_DERIV_H_
#define FREEGEN_DERIV_H_

#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "freegen/free_gen.h"
#include "freegen/interp.h"

namespace freegen {

// The generator left after committing to choice `c` first. Void when `c`
// cannot be the next choice. Simplified input gives simplified output.
FreeGen Derivative(Choice c, const FreeGen& g);

// Derivative with respect to each symbol of `word` in order.
FreeGen Derivative(std::string_view word, const FreeGen& g);

// The value obtainable without further choices: v for Pure v, else nothing.
std::optional<Value> Nullable(const FreeGen& g);

// One derivative per alphabet symbol, in ascending symbol order.
struct Gradient {
  std::vector<std::pair<Choice, FreeGen>> entries;

  const FreeGen& at(Choice c) const;
};

Gradient ComputeGradient(const FreeGen& g, const std::set<Choice>& alphabet);

// A generator paired with an external distribution. The distribution's
// history records the choices already fixed.
struct DistGen {
  ExternalDist dist;
  FreeGen gen;
};

DistGen DerivativeWithDist(const ExternalDist& d, const FreeGen& g, Choice c);
inline std::optional<Value> Nullable(const DistGen& dg) {
  return Nullable(dg.gen);
}

}  // namespace freegen

#endif  // FREEGEN_DERIV_H_
