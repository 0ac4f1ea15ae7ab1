#pragma once

#include <memory>
#include <string>
#include <utility>

#include "synoptic/ops.hpp"
#include "synoptic/value.hpp"

namespace synoptic::core {

using SignalName = std::string;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression forms of the core calculus. `when` samples data on a true
// condition, `default` merges by left priority, `EventOf` is the unary
// `when y` / `^` conversion and `BoolOf` the `?` conversion.
struct Expr {
  enum class Tag { SignalRef, Const, Apply, Not, When, Default, EventOf, BoolOf };

  Tag tag;
  SignalName name;                 // SignalRef
  Value value = Value::integer(0); // Const
  BinOp op = BinOp::Add;           // Apply
  ExprPtr a, b;                    // operands
};

inline ExprPtr ref(SignalName n) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::SignalRef;
  e->name = std::move(n);
  return e;
}

inline ExprPtr lit(Value v) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Const;
  e->value = v;
  return e;
}

inline ExprPtr apply(BinOp op, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Apply;
  e->op = op;
  e->a = std::move(l);
  e->b = std::move(r);
  return e;
}

inline ExprPtr negate(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Not;
  e->a = std::move(x);
  return e;
}

inline ExprPtr when(ExprPtr data, ExprPtr cond) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::When;
  e->a = std::move(data);
  e->b = std::move(cond);
  return e;
}

inline ExprPtr merge(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::Default;
  e->a = std::move(l);
  e->b = std::move(r);
  return e;
}

inline ExprPtr event_of(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::EventOf;
  e->a = std::move(x);
  return e;
}

inline ExprPtr bool_of(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->tag = Expr::Tag::BoolOf;
  e->a = std::move(x);
  return e;
}

}  // namespace synoptic::core
