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

#ifndef FREEGEN_VALUE_H_
#define FREEGEN_VALUE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace freegen {

// Simple types: Int | Arrow(Ty, Ty).
class Ty {
 public:
  enum class Kind { kInt, kArrow };

  Ty();  // Int
  static Ty Int();
  static Ty Arrow(Ty from, Ty to);

  Kind kind() const { return node_ ? Kind::kArrow : Kind::kInt; }
  bool is_int() const { return node_ == nullptr; }
  const Ty& from() const;
  const Ty& to() const;

  std::string ToString() const;

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;  // null encodes Int
};

int Compare(const Ty& a, const Ty& b);
inline bool operator==(const Ty& a, const Ty& b) { return Compare(a, b) == 0; }

class Value;

// Binary trees with a payload and an optional cached height. Leaf is the null
// node.
class Tree {
 public:
  Tree() = default;  // Leaf
  static Tree Leaf() { return Tree(); }
  static Tree Node(Value payload, Tree left, Tree right);
  static Tree Node(Value payload, int64_t stored_height, Tree left, Tree right);
  static Tree Node(int64_t payload, Tree left, Tree right);
  static Tree Node(int64_t payload, int64_t stored_height, Tree left,
                   Tree right);

  bool is_leaf() const { return node_ == nullptr; }
  const Value& payload() const;
  // Integer payload; throws if the payload is not an Int.
  int64_t value() const;
  std::optional<int64_t> stored_height() const;
  const Tree& left() const;
  const Tree& right() const;

  std::string ToString() const;

 private:
  struct NodeData;
  explicit Tree(std::shared_ptr<const NodeData> node) : node_(std::move(node)) {}
  std::shared_ptr<const NodeData> node_;
};

int Compare(const Tree& a, const Tree& b);
inline bool operator==(const Tree& a, const Tree& b) {
  return Compare(a, b) == 0;
}

// Simply typed lambda terms with de Bruijn indices.
class Expr {
 public:
  enum class Kind { kLit, kVar, kPlus, kLam, kApp };

  static Expr Lit(int64_t n);
  static Expr Var(int64_t index);
  static Expr Plus(Expr lhs, Expr rhs);
  static Expr Lam(Ty param, Expr body);
  static Expr App(Expr fn, Expr arg);

  Kind kind() const;
  // Literal value for kLit, index for kVar.
  int64_t number() const;
  const Expr& lhs() const;  // Plus lhs, App function, Lam body
  const Expr& rhs() const;  // Plus rhs, App argument
  const Ty& param() const;

  std::string ToString() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

int Compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) {
  return Compare(a, b) == 0;
}

class Value;
using Function = std::function<Value(const Value&)>;

// Closed universal domain for generated data. Values are immutable and cheap
// to copy; compound payloads are shared.
class Value {
 public:
  enum class Kind {
    kUnit,
    kBool,
    kInt,
    kPair,
    kList,
    kTree,
    kExpr,
    kType,
    kFunction,
  };

  Value() = default;  // Unit
  static Value Unit() { return Value(); }
  static Value Bool(bool b);
  static Value Int(int64_t n);
  static Value Pair(Value first, Value second);
  static Value List(std::vector<Value> items);
  static Value Of(Tree t);
  static Value Of(Expr e);
  static Value Of(Ty t);
  static Value Fn(Function f);

  Kind kind() const { return static_cast<Kind>(rep_.index()); }

  // Accessors throw std::logic_error on a kind mismatch.
  bool AsBool() const;
  int64_t AsInt() const;
  const Value& first() const;
  const Value& second() const;
  const std::vector<Value>& AsList() const;
  const Tree& AsTree() const;
  const Expr& AsExpr() const;
  const Ty& AsType() const;
  Value Apply(const Value& arg) const;

  std::string ToString() const;

  // Total order: by kind, then structurally. Functions order by identity.
  friend int Compare(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) {
    return Compare(a, b) == 0;
  }
  friend bool operator<(const Value& a, const Value& b) {
    return Compare(a, b) < 0;
  }

 private:
  struct PairCell;
  using Rep = std::variant<std::monostate, bool, int64_t,
                           std::shared_ptr<const PairCell>,
                           std::shared_ptr<const std::vector<Value>>, Tree,
                           Expr, Ty, std::shared_ptr<const Function>>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

std::string KindName(Value::Kind kind);

}  // namespace freegen

#endif  // FREEGEN_VALUE_H_
