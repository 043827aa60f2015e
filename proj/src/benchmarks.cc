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

#include "freegen/benchmarks.h"

#include <algorithm>
#include <stdexcept>

namespace freegen {
namespace {

char DigitChar(int64_t d) {
  if (d < 0 || d > 9) {
    throw std::invalid_argument("value outside digit range: " +
                                std::to_string(d));
  }
  return static_cast<char>('0' + d);
}

std::optional<char> DigitIfValid(const Value& v) {
  if (v.kind() != Value::Kind::kInt || v.AsInt() < 0 || v.AsInt() > 9)
    return std::nullopt;
  return static_cast<char>('0' + v.AsInt());
}

Value TreeNode(const std::vector<Value>& args) {
  return Value::Of(Tree::Node(args[0], args[1].AsTree(), args[2].AsTree()));
}

Value AvlNode(const std::vector<Value>& args) {
  return Value::Of(Tree::Node(args[0], args[1].AsInt(), args[2].AsTree(),
                              args[3].AsTree()));
}

// Builds levels 0..depth of a recursive generator, sharing each level.
template <typename Level0, typename Step>
FreeGen BuildLevels(int depth, Level0 level0, Step step) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  FreeGen g = level0();
  for (int h = 1; h <= depth; ++h) g = step(g);
  return g;
}

}  // namespace

std::string_view BenchmarkName(Benchmark b) {
  switch (b) {
    case Benchmark::kBst:
      return "bst";
    case Benchmark::kSorted:
      return "sorted";
    case Benchmark::kAvl:
      return "avl";
    case Benchmark::kStlc:
      return "stlc";
  }
  return "";
}

std::optional<Benchmark> BenchmarkFromName(std::string_view name) {
  for (Benchmark b : kAllBenchmarks) {
    if (BenchmarkName(b) == name) return b;
  }
  return std::nullopt;
}

FreeGen DigitGen() {
  static const FreeGen kDigit = [] {
    std::vector<Branch> brs;
    for (int d = 0; d <= 9; ++d) {
      brs.push_back({static_cast<Choice>('0' + d), Pure(Value::Int(d))});
    }
    return Select(std::move(brs));
  }();
  return kDigit;
}

FreeGen BoolTreeGen(int depth) {
  const FreeGen boolean = Select({{'t', Pure(Value::Bool(true))},
                                  {'f', Pure(Value::Bool(false))}});
  const FreeGen leaf = Pure(Value::Of(Tree::Leaf()));
  // The bottom level still spells out its leaves, so depth 1 has language
  // {"l", "ntll", "nfll"}.
  return BuildLevels(
      depth, [&] { return Select({{'l', leaf}}); },
      [&](const FreeGen& sub) {
        return Select({{'l', leaf}, {'n', Lift(TreeNode, {boolean, sub, sub})}});
      });
}

FreeGen BstGen(int depth) {
  const FreeGen leaf = Pure(Value::Of(Tree::Leaf()));
  return BuildLevels(
      depth, [&] { return leaf; },
      [&](const FreeGen& sub) {
        return Select(
            {{'l', leaf}, {'n', Lift(TreeNode, {DigitGen(), sub, sub})}});
      });
}

FreeGen SortedGen(int max_len) {
  const FreeGen nil = Pure(Value::List({}));
  auto cons = [](const std::vector<Value>& args) {
    const auto& tail = args[1].AsList();
    std::vector<Value> items;
    items.reserve(tail.size() + 1);
    items.push_back(args[0]);
    items.insert(items.end(), tail.begin(), tail.end());
    return Value::List(std::move(items));
  };
  return BuildLevels(
      max_len, [&] { return nil; },
      [&](const FreeGen& sub) {
        return Select({{'e', nil}, {'c', Lift(cons, {DigitGen(), sub})}});
      });
}

FreeGen AvlGen(int depth) {
  const FreeGen leaf = Pure(Value::Of(Tree::Leaf()));
  return BuildLevels(
      depth, [&] { return leaf; },
      [&](const FreeGen& sub) {
        return Select({{'l', leaf},
                       {'n', Lift(AvlNode, {DigitGen(), DigitGen(), sub, sub})}});
      });
}

FreeGen TypeGen(int depth) {
  const FreeGen int_ty = Pure(Value::Of(Ty::Int()));
  auto arrow = [](const std::vector<Value>& args) {
    return Value::Of(Ty::Arrow(args[0].AsType(), args[1].AsType()));
  };
  return BuildLevels(
      depth, [&] { return Select({{'n', int_ty}}); },
      [&](const FreeGen& sub) {
        return Select({{'n', int_ty}, {'f', Lift(arrow, {sub, sub})}});
      });
}

FreeGen StlcGen(int depth) {
  const FreeGen lit = Map(
      [](const Value& d) { return Value::Of(Expr::Lit(d.AsInt())); }, DigitGen());
  const FreeGen var = Map(
      [](const Value& d) { return Value::Of(Expr::Var(d.AsInt())); }, DigitGen());
  const FreeGen types = TypeGen(kStlcTypeDepth);
  auto plus = [](const std::vector<Value>& args) {
    return Value::Of(Expr::Plus(args[0].AsExpr(), args[1].AsExpr()));
  };
  auto lam = [](const std::vector<Value>& args) {
    return Value::Of(Expr::Lam(args[0].AsType(), args[1].AsExpr()));
  };
  auto app = [](const std::vector<Value>& args) {
    return Value::Of(Expr::App(args[0].AsExpr(), args[1].AsExpr()));
  };
  return BuildLevels(
      depth, [&] { return Select({{'i', lit}, {'v', var}}); },
      [&](const FreeGen& sub) {
        return Select({{'i', lit},
                       {'p', Lift(plus, {sub, sub})},
                       {'l', Lift(lam, {types, sub})},
                       {'a', Lift(app, {sub, sub})},
                       {'v', var}});
      });
}

// ---------------------------------------------------------------------------
// Validity

namespace {

bool BstWithin(const Tree& t, std::optional<int64_t> lo,
               std::optional<int64_t> hi) {
  if (t.is_leaf()) return true;
  const int64_t v = t.value();
  if ((lo && v <= *lo) || (hi && v >= *hi)) return false;
  return BstWithin(t.left(), lo, v) && BstWithin(t.right(), v, hi);
}

// Computed height if every stored height is correct and balanced; else -1.
int64_t CheckedHeight(const Tree& t) {
  if (t.is_leaf()) return 0;
  const int64_t hl = CheckedHeight(t.left());
  if (hl < 0) return -1;
  const int64_t hr = CheckedHeight(t.right());
  if (hr < 0) return -1;
  if (hl - hr > 1 || hr - hl > 1) return -1;
  const int64_t h = 1 + std::max(hl, hr);
  auto stored = t.stored_height();
  if (!stored || *stored != h) return -1;
  return h;
}

std::optional<Ty> TypeIn(const Expr& e, std::vector<Ty>& ctx) {
  switch (e.kind()) {
    case Expr::Kind::kLit:
      return Ty::Int();
    case Expr::Kind::kVar: {
      const int64_t i = e.number();
      if (i < 0 || static_cast<size_t>(i) >= ctx.size()) return std::nullopt;
      return ctx[ctx.size() - 1 - static_cast<size_t>(i)];
    }
    case Expr::Kind::kPlus: {
      auto a = TypeIn(e.lhs(), ctx);
      if (!a || !a->is_int()) return std::nullopt;
      auto b = TypeIn(e.rhs(), ctx);
      if (!b || !b->is_int()) return std::nullopt;
      return Ty::Int();
    }
    case Expr::Kind::kLam: {
      ctx.push_back(e.param());
      auto body = TypeIn(e.lhs(), ctx);
      ctx.pop_back();
      if (!body) return std::nullopt;
      return Ty::Arrow(e.param(), *body);
    }
    case Expr::Kind::kApp: {
      auto f = TypeIn(e.lhs(), ctx);
      if (!f || f->is_int()) return std::nullopt;
      auto x = TypeIn(e.rhs(), ctx);
      if (!x || !(*x == f->from())) return std::nullopt;
      return f->to();
    }
  }
  return std::nullopt;
}

}  // namespace

bool IsBst(const Tree& t) { return BstWithin(t, std::nullopt, std::nullopt); }

bool IsSorted(const std::vector<Value>& xs) {
  return std::is_sorted(xs.begin(), xs.end(), [](const Value& a, const Value& b) {
    return a.AsInt() < b.AsInt();
  });
}

int64_t Height(const Tree& t) {
  if (t.is_leaf()) return 0;
  return 1 + std::max(Height(t.left()), Height(t.right()));
}

bool IsAvl(const Tree& t) { return IsBst(t) && CheckedHeight(t) >= 0; }

std::optional<Ty> TypeCheck(const Expr& e) {
  std::vector<Ty> ctx;
  return TypeIn(e, ctx);
}

// ---------------------------------------------------------------------------
// Serialization and size

namespace {

void SerializeTree(const Tree& t, std::string* out) {
  if (t.is_leaf()) {
    out->push_back('l');
    return;
  }
  out->push_back('n');
  const Value& p = t.payload();
  if (p.kind() == Value::Kind::kBool) {
    out->push_back(p.AsBool() ? 't' : 'f');
  } else {
    out->push_back(DigitChar(p.AsInt()));
  }
  if (auto h = t.stored_height()) out->push_back(DigitChar(*h));
  SerializeTree(t.left(), out);
  SerializeTree(t.right(), out);
}

void SerializeType(const Ty& t, std::string* out) {
  if (t.is_int()) {
    out->push_back('n');
    return;
  }
  out->push_back('f');
  SerializeType(t.from(), out);
  SerializeType(t.to(), out);
}

void SerializeExpr(const Expr& e, std::string* out) {
  switch (e.kind()) {
    case Expr::Kind::kLit:
      out->push_back('i');
      out->push_back(DigitChar(e.number()));
      return;
    case Expr::Kind::kVar:
      out->push_back('v');
      out->push_back(DigitChar(e.number()));
      return;
    case Expr::Kind::kPlus:
      out->push_back('p');
      SerializeExpr(e.lhs(), out);
      SerializeExpr(e.rhs(), out);
      return;
    case Expr::Kind::kLam:
      out->push_back('l');
      SerializeType(e.param(), out);
      SerializeExpr(e.lhs(), out);
      return;
    case Expr::Kind::kApp:
      out->push_back('a');
      SerializeExpr(e.lhs(), out);
      SerializeExpr(e.rhs(), out);
      return;
  }
}

}  // namespace

std::string CanonicalSerialize(const Value& v) {
  std::string out;
  switch (v.kind()) {
    case Value::Kind::kTree:
      SerializeTree(v.AsTree(), &out);
      return out;
    case Value::Kind::kList:
      for (const Value& x : v.AsList()) {
        out.push_back('c');
        out.push_back(DigitChar(x.AsInt()));
      }
      out.push_back('e');
      return out;
    case Value::Kind::kExpr:
      SerializeExpr(v.AsExpr(), &out);
      return out;
    case Value::Kind::kType:
      SerializeType(v.AsType(), &out);
      return out;
    default:
      throw std::invalid_argument("no canonical form for " + KindName(v.kind()) +
                                  " values");
  }
}

namespace {

bool TreeChoices(const Tree& t, int depth, bool with_height, std::string* out) {
  if (depth == 0) return t.is_leaf();
  if (t.is_leaf()) {
    out->push_back('l');
    return true;
  }
  auto d = DigitIfValid(t.payload());
  if (!d) return false;
  out->push_back('n');
  out->push_back(*d);
  if (with_height) {
    auto h = t.stored_height();
    if (!h || *h < 0 || *h > 9) return false;
    out->push_back(static_cast<char>('0' + *h));
  } else if (t.stored_height()) {
    return false;
  }
  return TreeChoices(t.left(), depth - 1, with_height, out) &&
         TreeChoices(t.right(), depth - 1, with_height, out);
}

bool TypeChoices(const Ty& t, int depth, std::string* out) {
  if (t.is_int()) {
    out->push_back('n');
    return true;
  }
  if (depth == 0) return false;
  out->push_back('f');
  return TypeChoices(t.from(), depth - 1, out) &&
         TypeChoices(t.to(), depth - 1, out);
}

bool ExprChoices(const Expr& e, int depth, std::string* out) {
  switch (e.kind()) {
    case Expr::Kind::kLit:
    case Expr::Kind::kVar:
      if (e.number() < 0 || e.number() > 9) return false;
      out->push_back(e.kind() == Expr::Kind::kLit ? 'i' : 'v');
      out->push_back(static_cast<char>('0' + e.number()));
      return true;
    default:
      break;
  }
  if (depth == 0) return false;
  switch (e.kind()) {
    case Expr::Kind::kPlus:
      out->push_back('p');
      return ExprChoices(e.lhs(), depth - 1, out) &&
             ExprChoices(e.rhs(), depth - 1, out);
    case Expr::Kind::kLam:
      out->push_back('l');
      return TypeChoices(e.param(), kStlcTypeDepth, out) &&
             ExprChoices(e.lhs(), depth - 1, out);
    case Expr::Kind::kApp:
      out->push_back('a');
      return ExprChoices(e.lhs(), depth - 1, out) &&
             ExprChoices(e.rhs(), depth - 1, out);
    default:
      return false;
  }
}

}  // namespace

std::optional<ChoiceSeq> ChoicesFor(Benchmark b, int depth, const Value& v) {
  std::string out;
  bool ok = false;
  switch (b) {
    case Benchmark::kBst:
    case Benchmark::kAvl:
      ok = v.kind() == Value::Kind::kTree &&
           TreeChoices(v.AsTree(), depth, b == Benchmark::kAvl, &out);
      break;
    case Benchmark::kSorted: {
      if (v.kind() != Value::Kind::kList) break;
      const auto& xs = v.AsList();
      if (xs.size() > static_cast<size_t>(depth)) break;
      ok = true;
      for (const Value& x : xs) {
        auto d = DigitIfValid(x);
        if (!d) {
          ok = false;
          break;
        }
        out.push_back('c');
        out.push_back(*d);
      }
      if (xs.size() < static_cast<size_t>(depth)) out.push_back('e');
      break;
    }
    case Benchmark::kStlc:
      ok = v.kind() == Value::Kind::kExpr && ExprChoices(v.AsExpr(), depth, &out);
      break;
  }
  if (!ok) return std::nullopt;
  return out;
}

namespace {

int64_t TreeSize(const Tree& t) {
  if (t.is_leaf()) return 1;
  return 1 + TreeSize(t.left()) + TreeSize(t.right());
}

int64_t ExprSize(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kLit:
    case Expr::Kind::kVar:
      return 1;
    case Expr::Kind::kLam:
      return 1 + ExprSize(e.lhs());
    case Expr::Kind::kPlus:
    case Expr::Kind::kApp:
      return 1 + ExprSize(e.lhs()) + ExprSize(e.rhs());
  }
  return 1;
}

}  // namespace

int64_t SizeOf(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kTree:
      return TreeSize(v.AsTree());
    case Value::Kind::kList:
      return static_cast<int64_t>(v.AsList().size()) + 1;
    case Value::Kind::kExpr:
      return ExprSize(v.AsExpr());
    default:
      throw std::invalid_argument("no size measure for " + KindName(v.kind()) +
                                  " values");
  }
}

// ---------------------------------------------------------------------------
// Setups

int DefaultSampleRate(Benchmark b) {
  switch (b) {
    case Benchmark::kBst:
    case Benchmark::kSorted:
      return 50;
    case Benchmark::kAvl:
      return 500;
    case Benchmark::kStlc:
      return 400;
  }
  return 50;
}

int DefaultDepth(Benchmark b) { return b == Benchmark::kSorted ? 20 : 5; }

ValidityPredicate ValidityFor(Benchmark b) {
  switch (b) {
    case Benchmark::kBst:
      return [](const Value& v) {
        return v.kind() == Value::Kind::kTree && IsBst(v.AsTree());
      };
    case Benchmark::kSorted:
      return [](const Value& v) {
        return v.kind() == Value::Kind::kList && IsSorted(v.AsList());
      };
    case Benchmark::kAvl:
      return [](const Value& v) {
        return v.kind() == Value::Kind::kTree && IsAvl(v.AsTree());
      };
    case Benchmark::kStlc:
      return [](const Value& v) {
        return v.kind() == Value::Kind::kExpr && IsWellTyped(v.AsExpr());
      };
  }
  return {};
}

BenchmarkSetup MakeBenchmark(Benchmark b, int depth) {
  FreeGen gen;
  switch (b) {
    case Benchmark::kBst:
      gen = BstGen(depth);
      break;
    case Benchmark::kSorted:
      gen = SortedGen(depth);
      break;
    case Benchmark::kAvl:
      gen = AvlGen(depth);
      break;
    case Benchmark::kStlc:
      gen = StlcGen(depth);
      break;
  }
  return {b, depth, DefaultSampleRate(b), std::move(gen), ValidityFor(b)};
}

}  // namespace freegen
