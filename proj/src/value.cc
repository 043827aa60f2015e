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

#include "freegen/value.h"

#include <stdexcept>
#include <utility>

namespace freegen {
namespace {

int Cmp(int64_t a, int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

[[noreturn]] void KindMismatch(const char* wanted, Value::Kind got) {
  throw std::logic_error(std::string("value is not a ") + wanted + " (got " +
                         KindName(got) + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// Ty

struct Ty::Node {
  Ty from;
  Ty to;
};

Ty::Ty() = default;
Ty Ty::Int() { return Ty(); }
Ty Ty::Arrow(Ty from, Ty to) {
  return Ty(std::make_shared<const Node>(Node{std::move(from), std::move(to)}));
}

const Ty& Ty::from() const {
  if (!node_) throw std::logic_error("Int has no domain type");
  return node_->from;
}

const Ty& Ty::to() const {
  if (!node_) throw std::logic_error("Int has no codomain type");
  return node_->to;
}

std::string Ty::ToString() const {
  if (is_int()) return "Int";
  std::string lhs = from().ToString();
  if (!from().is_int()) lhs = "(" + lhs + ")";
  return lhs + " -> " + to().ToString();
}

int Compare(const Ty& a, const Ty& b) {
  if (a.is_int() || b.is_int()) {
    return Cmp(a.is_int() ? 0 : 1, b.is_int() ? 0 : 1);
  }
  if (int c = Compare(a.from(), b.from())) return c;
  return Compare(a.to(), b.to());
}

// ---------------------------------------------------------------------------
// Tree

struct Tree::NodeData {
  Value payload;
  std::optional<int64_t> stored_height;
  Tree left;
  Tree right;
};

Tree Tree::Node(Value payload, Tree left, Tree right) {
  return Tree(std::make_shared<const NodeData>(NodeData{
      std::move(payload), std::nullopt, std::move(left), std::move(right)}));
}

Tree Tree::Node(Value payload, int64_t stored_height, Tree left, Tree right) {
  return Tree(std::make_shared<const NodeData>(NodeData{
      std::move(payload), stored_height, std::move(left), std::move(right)}));
}

Tree Tree::Node(int64_t payload, Tree left, Tree right) {
  return Node(Value::Int(payload), std::move(left), std::move(right));
}

Tree Tree::Node(int64_t payload, int64_t stored_height, Tree left,
                Tree right) {
  return Node(Value::Int(payload), stored_height, std::move(left),
              std::move(right));
}

const Value& Tree::payload() const {
  if (!node_) throw std::logic_error("Leaf has no payload");
  return node_->payload;
}

int64_t Tree::value() const { return payload().AsInt(); }

std::optional<int64_t> Tree::stored_height() const {
  if (!node_) return std::nullopt;
  return node_->stored_height;
}

const Tree& Tree::left() const {
  if (!node_) throw std::logic_error("Leaf has no children");
  return node_->left;
}

const Tree& Tree::right() const {
  if (!node_) throw std::logic_error("Leaf has no children");
  return node_->right;
}

std::string Tree::ToString() const {
  if (is_leaf()) return "Leaf";
  auto child = [](const Tree& t) {
    return t.is_leaf() ? t.ToString() : "(" + t.ToString() + ")";
  };
  std::string out = "Node " + payload().ToString();
  if (auto h = stored_height()) out += " " + std::to_string(*h);
  return out + " " + child(left()) + " " + child(right());
}

int Compare(const Tree& a, const Tree& b) {
  if (a.is_leaf() || b.is_leaf()) {
    return Cmp(a.is_leaf() ? 0 : 1, b.is_leaf() ? 0 : 1);
  }
  if (int c = Compare(a.payload(), b.payload())) return c;
  if (int c = Cmp(a.stored_height().value_or(-1), b.stored_height().value_or(-1)))
    return c;
  if (int c = Compare(a.left(), b.left())) return c;
  return Compare(a.right(), b.right());
}

// ---------------------------------------------------------------------------
// Expr

struct Expr::Node {
  Kind kind;
  int64_t number = 0;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
  Ty param;
};

Expr Expr::Lit(int64_t n) {
  return Expr(std::make_shared<const Node>(Node{Kind::kLit, n, {}, {}, {}}));
}

Expr Expr::Var(int64_t index) {
  return Expr(std::make_shared<const Node>(Node{Kind::kVar, index, {}, {}, {}}));
}

Expr Expr::Plus(Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kPlus, 0, std::move(lhs), std::move(rhs), {}}));
}

Expr Expr::Lam(Ty param, Expr body) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kLam, 0, std::move(body), std::nullopt, std::move(param)}));
}

Expr Expr::App(Expr fn, Expr arg) {
  return Expr(std::make_shared<const Node>(
      Node{Kind::kApp, 0, std::move(fn), std::move(arg), {}}));
}

Expr::Kind Expr::kind() const { return node_->kind; }

int64_t Expr::number() const {
  if (kind() != Kind::kLit && kind() != Kind::kVar)
    throw std::logic_error("only Lit and Var carry a number");
  return node_->number;
}

const Expr& Expr::lhs() const {
  if (!node_->lhs) throw std::logic_error("expression has no subterm");
  return *node_->lhs;
}

const Expr& Expr::rhs() const {
  if (!node_->rhs) throw std::logic_error("expression has no second subterm");
  return *node_->rhs;
}

const Ty& Expr::param() const {
  if (kind() != Kind::kLam) throw std::logic_error("only Lam has a type");
  return node_->param;
}

std::string Expr::ToString() const {
  auto arg = [](const Expr& e) {
    auto s = e.ToString();
    return "(" + s + ")";
  };
  switch (kind()) {
    case Kind::kLit:
      return "Lit " + std::to_string(number());
    case Kind::kVar:
      return "Var " + std::to_string(number());
    case Kind::kPlus:
      return "Plus " + arg(lhs()) + " " + arg(rhs());
    case Kind::kLam: {
      std::string ty = param().ToString();
      if (!param().is_int()) ty = "(" + ty + ")";
      return "Lam " + ty + " " + arg(lhs());
    }
    case Kind::kApp:
      return "App " + arg(lhs()) + " " + arg(rhs());
  }
  return "";
}

int Compare(const Expr& a, const Expr& b) {
  if (int c = Cmp(static_cast<int>(a.kind()), static_cast<int>(b.kind())))
    return c;
  switch (a.kind()) {
    case Expr::Kind::kLit:
    case Expr::Kind::kVar:
      return Cmp(a.number(), b.number());
    case Expr::Kind::kLam:
      if (int c = Compare(a.param(), b.param())) return c;
      return Compare(a.lhs(), b.lhs());
    case Expr::Kind::kPlus:
    case Expr::Kind::kApp:
      if (int c = Compare(a.lhs(), b.lhs())) return c;
      return Compare(a.rhs(), b.rhs());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Value

struct Value::PairCell {
  Value first;
  Value second;
};

Value Value::Bool(bool b) { return Value(Rep(std::in_place_index<1>, b)); }
Value Value::Int(int64_t n) { return Value(Rep(std::in_place_index<2>, n)); }

Value Value::Pair(Value first, Value second) {
  return Value(Rep(std::make_shared<const PairCell>(
      PairCell{std::move(first), std::move(second)})));
}

Value Value::List(std::vector<Value> items) {
  return Value(
      Rep(std::make_shared<const std::vector<Value>>(std::move(items))));
}

Value Value::Of(Tree t) { return Value(Rep(std::move(t))); }
Value Value::Of(Expr e) { return Value(Rep(std::move(e))); }
Value Value::Of(Ty t) { return Value(Rep(std::move(t))); }

Value Value::Fn(Function f) {
  return Value(Rep(std::make_shared<const Function>(std::move(f))));
}

bool Value::AsBool() const {
  if (kind() != Kind::kBool) KindMismatch("Bool", kind());
  return std::get<bool>(rep_);
}

int64_t Value::AsInt() const {
  if (kind() != Kind::kInt) KindMismatch("Int", kind());
  return std::get<int64_t>(rep_);
}

const Value& Value::first() const {
  if (kind() != Kind::kPair) KindMismatch("Pair", kind());
  return std::get<std::shared_ptr<const PairCell>>(rep_)->first;
}

const Value& Value::second() const {
  if (kind() != Kind::kPair) KindMismatch("Pair", kind());
  return std::get<std::shared_ptr<const PairCell>>(rep_)->second;
}

const std::vector<Value>& Value::AsList() const {
  if (kind() != Kind::kList) KindMismatch("List", kind());
  return *std::get<std::shared_ptr<const std::vector<Value>>>(rep_);
}

const Tree& Value::AsTree() const {
  if (kind() != Kind::kTree) KindMismatch("Tree", kind());
  return std::get<Tree>(rep_);
}

const Expr& Value::AsExpr() const {
  if (kind() != Kind::kExpr) KindMismatch("Expr", kind());
  return std::get<Expr>(rep_);
}

const Ty& Value::AsType() const {
  if (kind() != Kind::kType) KindMismatch("Type", kind());
  return std::get<Ty>(rep_);
}

Value Value::Apply(const Value& arg) const {
  if (kind() != Kind::kFunction) KindMismatch("Function", kind());
  return (*std::get<std::shared_ptr<const Function>>(rep_))(arg);
}

std::string Value::ToString() const {
  switch (kind()) {
    case Kind::kUnit:
      return "()";
    case Kind::kBool:
      return AsBool() ? "True" : "False";
    case Kind::kInt:
      return std::to_string(AsInt());
    case Kind::kPair:
      return "(" + first().ToString() + ", " + second().ToString() + ")";
    case Kind::kList: {
      std::string out = "[";
      const auto& items = AsList();
      for (size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i].ToString();
      }
      return out + "]";
    }
    case Kind::kTree:
      return AsTree().ToString();
    case Kind::kExpr:
      return AsExpr().ToString();
    case Kind::kType:
      return AsType().ToString();
    case Kind::kFunction:
      return "<fn>";
  }
  return "";
}

int Compare(const Value& a, const Value& b) {
  if (int c = Cmp(a.rep_.index(), b.rep_.index())) return c;
  switch (a.kind()) {
    case Value::Kind::kUnit:
      return 0;
    case Value::Kind::kBool:
      return Cmp(a.AsBool(), b.AsBool());
    case Value::Kind::kInt:
      return Cmp(a.AsInt(), b.AsInt());
    case Value::Kind::kPair:
      if (int c = Compare(a.first(), b.first())) return c;
      return Compare(a.second(), b.second());
    case Value::Kind::kList: {
      const auto& xs = a.AsList();
      const auto& ys = b.AsList();
      for (size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (int c = Compare(xs[i], ys[i])) return c;
      }
      return Cmp(static_cast<int64_t>(xs.size()),
                 static_cast<int64_t>(ys.size()));
    }
    case Value::Kind::kTree:
      return Compare(a.AsTree(), b.AsTree());
    case Value::Kind::kExpr:
      return Compare(a.AsExpr(), b.AsExpr());
    case Value::Kind::kType:
      return Compare(a.AsType(), b.AsType());
    case Value::Kind::kFunction: {
      auto pa = std::get<std::shared_ptr<const Function>>(a.rep_).get();
      auto pb = std::get<std::shared_ptr<const Function>>(b.rep_).get();
      return pa < pb ? -1 : (pa > pb ? 1 : 0);
    }
  }
  return 0;
}

std::string KindName(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::kUnit:
      return "Unit";
    case Value::Kind::kBool:
      return "Bool";
    case Value::Kind::kInt:
      return "Int";
    case Value::Kind::kPair:
      return "Pair";
    case Value::Kind::kList:
      return "List";
    case Value::Kind::kTree:
      return "Tree";
    case Value::Kind::kExpr:
      return "Expr";
    case Value::Kind::kType:
      return "Type";
    case Value::Kind::kFunction:
      return "Function";
  }
  return "?";
}

}  // namespace freegen
