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

#include "freegen/free_gen.h"

#include <algorithm>
#include <limits>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace freegen {

struct FreeGen::Node {
  Kind kind;
  Value value;
  FreeGen a;  // Pair left, Map inner
  FreeGen b;  // Pair right
  FunctionHandle fn;
  std::vector<Branch> branches;
};

FreeGen FreeGen::RawPure(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPure;
  n->value = std::move(v);
  return FreeGen(std::move(n));
}

FreeGen FreeGen::RawPair(FreeGen left, FreeGen right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPair;
  n->a = std::move(left);
  n->b = std::move(right);
  return FreeGen(std::move(n));
}

FreeGen FreeGen::RawMap(FunctionHandle fn, FreeGen inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kMap;
  n->fn = std::move(fn);
  n->a = std::move(inner);
  return FreeGen(std::move(n));
}

FreeGen FreeGen::RawSelect(std::vector<Branch> branches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kSelect;
  n->branches = std::move(branches);
  return FreeGen(std::move(n));
}

FreeGen::Kind FreeGen::kind() const {
  return node_ ? node_->kind : Kind::kVoid;
}

const Value& FreeGen::value() const {
  if (kind() != Kind::kPure) throw std::logic_error("not a Pure node");
  return node_->value;
}

const FreeGen& FreeGen::left() const {
  if (kind() != Kind::kPair) throw std::logic_error("not a Pair node");
  return node_->a;
}

const FreeGen& FreeGen::right() const {
  if (kind() != Kind::kPair) throw std::logic_error("not a Pair node");
  return node_->b;
}

const FreeGen& FreeGen::inner() const {
  if (kind() != Kind::kMap) throw std::logic_error("not a Map node");
  return node_->a;
}

const FunctionHandle& FreeGen::fn() const {
  if (kind() != Kind::kMap) throw std::logic_error("not a Map node");
  return node_->fn;
}

const std::vector<Branch>& FreeGen::branches() const {
  if (kind() != Kind::kSelect) throw std::logic_error("not a Select node");
  return node_->branches;
}

const FreeGen* FreeGen::Find(Choice c) const {
  for (const auto& br : branches()) {
    if (br.choice == c) return &br.gen;
  }
  return nullptr;
}

std::string FreeGen::ToString() const {
  switch (kind()) {
    case Kind::kVoid:
      return "(void)";
    case Kind::kPure:
      return "(pure " + value().ToString() + ")";
    case Kind::kPair:
      return "(pair " + left().ToString() + " " + right().ToString() + ")";
    case Kind::kMap:
      return "(map <fn> " + inner().ToString() + ")";
    case Kind::kSelect: {
      std::string out = "(select";
      for (const auto& br : branches()) {
        out += " (";
        out += br.choice;
        out += " " + br.gen.ToString() + ")";
      }
      return out + ")";
    }
  }
  return "";
}

bool StructurallyEqual(const FreeGen& a, const FreeGen& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FreeGen::Kind::kVoid:
      return true;
    case FreeGen::Kind::kPure:
      return a.value() == b.value();
    case FreeGen::Kind::kPair:
      return StructurallyEqual(a.left(), b.left()) &&
             StructurallyEqual(a.right(), b.right());
    case FreeGen::Kind::kMap:
      return a.fn() == b.fn() && StructurallyEqual(a.inner(), b.inner());
    case FreeGen::Kind::kSelect: {
      const auto& xs = a.branches();
      const auto& ys = b.branches();
      if (xs.size() != ys.size()) return false;
      for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].choice != ys[i].choice ||
            !StructurallyEqual(xs[i].gen, ys[i].gen))
          return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Smart constructors

FreeGen Void() { return FreeGen(); }

FreeGen Pure(Value v) { return FreeGen::RawPure(std::move(v)); }

FreeGen Pair(const FreeGen& x, const FreeGen& y) {
  if (x.is_void() || y.is_void()) return Void();
  if (x.is_pure()) {
    Value a = x.value();
    return Map([a](const Value& b) { return Value::Pair(a, b); }, y);
  }
  if (y.is_pure()) {
    Value b = y.value();
    return Map([b](const Value& a) { return Value::Pair(a, b); }, x);
  }
  return FreeGen::RawPair(x, y);
}

FreeGen Map(FunctionHandle f, const FreeGen& x) {
  if (x.is_void()) return Void();
  if (x.is_pure()) return Pure((*f)(x.value()));
  return FreeGen::RawMap(std::move(f), x);
}

FreeGen Map(Function f, const FreeGen& x) {
  return Map(std::make_shared<const Function>(std::move(f)), x);
}

FreeGen Apply(const FreeGen& f, const FreeGen& x) {
  static const FunctionHandle kApplyPair = std::make_shared<const Function>(
      [](const Value& p) { return p.first().Apply(p.second()); });
  return Map(kApplyPair, Pair(f, x));
}

FreeGen Select(std::vector<Branch> branches) {
  std::erase_if(branches, [](const Branch& b) { return b.gen.is_void(); });
  if (branches.empty()) {
    throw ConstructionError("select: no non-void branches");
  }
  std::set<Choice> seen;
  for (const auto& b : branches) {
    if (!seen.insert(b.choice).second) {
      throw ConstructionError(std::string("select: duplicate choice label '") +
                              b.choice + "'");
    }
  }
  return FreeGen::RawSelect(std::move(branches));
}

FreeGen Lift(std::function<Value(const std::vector<Value>&)> f,
             const std::vector<FreeGen>& parts) {
  if (parts.empty()) return Pure(f({}));
  const size_t arity = parts.size();
  FreeGen nested = parts.back();
  for (size_t i = arity - 1; i-- > 0;) nested = Pair(parts[i], nested);
  return Map(
      [f = std::move(f), arity](const Value& v) {
        std::vector<Value> args;
        args.reserve(arity);
        const Value* cur = &v;
        for (size_t i = 0; i + 1 < arity; ++i) {
          args.push_back(cur->first());
          cur = &cur->second();
        }
        args.push_back(*cur);
        return f(args);
      },
      nested);
}

// ---------------------------------------------------------------------------
// Language

Language::Language(std::vector<ChoiceSeq> sequences)
    : sequences_(std::move(sequences)) {
  std::sort(sequences_.begin(), sequences_.end());
  sequences_.erase(std::unique(sequences_.begin(), sequences_.end()),
                   sequences_.end());
}

bool Language::contains(std::string_view s) const {
  return std::binary_search(sequences_.begin(), sequences_.end(), s);
}

namespace {

using SeqList = std::shared_ptr<const std::vector<ChoiceSeq>>;

class LangBuilder {
 public:
  explicit LangBuilder(size_t bound) : bound_(bound) {}

  SeqList Build(const FreeGen& g) {
    if (g.is_void()) return Empty();
    if (auto it = memo_.find(g.id()); it != memo_.end()) return it->second;
    SeqList out;
    switch (g.kind()) {
      case FreeGen::Kind::kVoid:
        out = Empty();
        break;
      case FreeGen::Kind::kPure:
        out = std::make_shared<const std::vector<ChoiceSeq>>(1, ChoiceSeq());
        break;
      case FreeGen::Kind::kMap:
        out = Build(g.inner());
        break;
      case FreeGen::Kind::kPair: {
        SeqList xs = Build(g.left());
        SeqList ys = Build(g.right());
        Check(static_cast<double>(xs->size()) * static_cast<double>(ys->size()));
        std::vector<ChoiceSeq> v;
        v.reserve(xs->size() * ys->size());
        for (const auto& s : *xs) {
          for (const auto& t : *ys) v.push_back(s + t);
        }
        out = std::make_shared<const std::vector<ChoiceSeq>>(std::move(v));
        break;
      }
      case FreeGen::Kind::kSelect: {
        std::vector<SeqList> parts;
        double total = 0;
        for (const auto& br : g.branches()) {
          parts.push_back(Build(br.gen));
          total += static_cast<double>(parts.back()->size());
        }
        Check(total);
        std::vector<ChoiceSeq> v;
        v.reserve(static_cast<size_t>(total));
        for (size_t i = 0; i < parts.size(); ++i) {
          const Choice c = g.branches()[i].choice;
          for (const auto& s : *parts[i]) {
            ChoiceSeq seq;
            seq.reserve(s.size() + 1);
            seq.push_back(c);
            seq += s;
            v.push_back(std::move(seq));
          }
        }
        out = std::make_shared<const std::vector<ChoiceSeq>>(std::move(v));
        break;
      }
    }
    memo_.emplace(g.id(), out);
    return out;
  }

 private:
  static SeqList Empty() {
    static const SeqList kEmpty = std::make_shared<const std::vector<ChoiceSeq>>();
    return kEmpty;
  }

  void Check(double n) const {
    if (n > static_cast<double>(bound_)) {
      throw ResourceError("language exceeds bound of " + std::to_string(bound_) +
                          " sequences");
    }
  }

  size_t bound_;
  std::unordered_map<const void*, SeqList> memo_;
};

size_t SatMul(size_t a, size_t b) {
  if (a != 0 && b > std::numeric_limits<size_t>::max() / a)
    return std::numeric_limits<size_t>::max();
  return a * b;
}

size_t SatAdd(size_t a, size_t b) {
  return b > std::numeric_limits<size_t>::max() - a
             ? std::numeric_limits<size_t>::max()
             : a + b;
}

template <typename T, typename F>
T Memoized(const FreeGen& g, std::unordered_map<const void*, T>& memo, F&& f) {
  if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
  T out = f();
  memo.emplace(g.id(), out);
  return out;
}

}  // namespace

Language Lang(const FreeGen& g, size_t bound) {
  LangBuilder builder(bound);
  SeqList seqs = builder.Build(g);
  return Language(*seqs);
}

size_t LanguageSize(const FreeGen& g) {
  std::unordered_map<const void*, size_t> memo;
  std::function<size_t(const FreeGen&)> go = [&](const FreeGen& n) -> size_t {
    if (n.is_void()) return 0;
    return Memoized(n, memo, [&]() -> size_t {
      switch (n.kind()) {
        case FreeGen::Kind::kVoid:
          return 0;
        case FreeGen::Kind::kPure:
          return 1;
        case FreeGen::Kind::kMap:
          return go(n.inner());
        case FreeGen::Kind::kPair:
          return SatMul(go(n.left()), go(n.right()));
        case FreeGen::Kind::kSelect: {
          size_t total = 0;
          for (const auto& br : n.branches()) total = SatAdd(total, go(br.gen));
          return total;
        }
      }
      return 0;
    });
  };
  return go(g);
}

bool IsSimplified(const FreeGen& g) {
  std::unordered_map<const void*, bool> memo;
  std::function<bool(const FreeGen&, bool)> go = [&](const FreeGen& n,
                                                     bool top) -> bool {
    if (n.is_void()) return top;
    return Memoized(n, memo, [&]() -> bool {
      switch (n.kind()) {
        case FreeGen::Kind::kVoid:
          return false;
        case FreeGen::Kind::kPure:
          return true;
        case FreeGen::Kind::kPair: {
          const auto& l = n.left();
          const auto& r = n.right();
          if (l.is_void() || l.is_pure() || r.is_void() || r.is_pure())
            return false;
          return go(l, false) && go(r, false);
        }
        case FreeGen::Kind::kMap: {
          const auto& x = n.inner();
          if (x.is_void() || x.is_pure()) return false;
          return go(x, false);
        }
        case FreeGen::Kind::kSelect: {
          const auto& brs = n.branches();
          if (brs.empty()) return false;
          std::set<Choice> seen;
          for (const auto& br : brs) {
            if (br.gen.is_void() || !seen.insert(br.choice).second) return false;
            if (!go(br.gen, false)) return false;
          }
          return true;
        }
      }
      return false;
    });
  };
  return go(g, true);
}

bool ContainsVoid(const FreeGen& g) {
  std::unordered_map<const void*, bool> memo;
  std::function<bool(const FreeGen&)> go = [&](const FreeGen& n) -> bool {
    if (n.is_void()) return true;
    return Memoized(n, memo, [&]() -> bool {
      switch (n.kind()) {
        case FreeGen::Kind::kVoid:
          return true;
        case FreeGen::Kind::kPure:
          return false;
        case FreeGen::Kind::kPair:
          return go(n.left()) || go(n.right());
        case FreeGen::Kind::kMap:
          return go(n.inner());
        case FreeGen::Kind::kSelect:
          for (const auto& br : n.branches()) {
            if (go(br.gen)) return true;
          }
          return false;
      }
      return false;
    });
  };
  return go(g);
}

std::set<Choice> AlphabetOf(const FreeGen& g) {
  std::set<Choice> out;
  std::unordered_set<const void*> seen;
  std::function<void(const FreeGen&)> go = [&](const FreeGen& n) {
    if (n.is_void() || !seen.insert(n.id()).second) return;
    switch (n.kind()) {
      case FreeGen::Kind::kPair:
        go(n.left());
        go(n.right());
        break;
      case FreeGen::Kind::kMap:
        go(n.inner());
        break;
      case FreeGen::Kind::kSelect:
        for (const auto& br : n.branches()) {
          out.insert(br.choice);
          go(br.gen);
        }
        break;
      default:
        break;
    }
  };
  go(g);
  return out;
}

size_t MaxChoiceDepth(const FreeGen& g) {
  std::unordered_map<const void*, size_t> memo;
  std::function<size_t(const FreeGen&)> go = [&](const FreeGen& n) -> size_t {
    if (n.is_void()) return 0;
    return Memoized(n, memo, [&]() -> size_t {
      switch (n.kind()) {
        case FreeGen::Kind::kPair:
          return go(n.left()) + go(n.right());
        case FreeGen::Kind::kMap:
          return go(n.inner());
        case FreeGen::Kind::kSelect: {
          size_t best = 0;
          for (const auto& br : n.branches()) best = std::max(best, go(br.gen));
          return best + 1;
        }
        default:
          return 0;
      }
    });
  };
  return go(g);
}

}  // namespace freegen
