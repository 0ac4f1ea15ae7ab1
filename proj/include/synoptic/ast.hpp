#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "synoptic/diag.hpp"
#include "synoptic/ops.hpp"
#include "synoptic/value.hpp"

namespace synoptic::ast {

struct Action;
using ActionPtr = std::shared_ptr<const Action>;

// Timed sequential actions. `End` never comes from the parser; the
// translation appends it to close an action. A null ActionPtr where a
// branch or state body is expected means "no-op".
struct Action {
  enum class Tag { Skip, End, Emit, Assign, If, Seq };

  Tag tag;
  Span span;
  std::string target;            // Emit signal / Assign destination
  std::string lhs, rhs;          // Assign operands
  BinOp op = BinOp::Add;         // Assign
  std::string cond;              // If condition variable
  ActionPtr then_branch, else_branch;  // If (either may be null)
  ActionPtr first, second;       // Seq
};

inline ActionPtr make_skip(Span sp = {}) {
  auto a = std::make_shared<Action>();
  a->tag = Action::Tag::Skip;
  a->span = sp;
  return a;
}

inline ActionPtr make_end(Span sp = {}) {
  auto a = std::make_shared<Action>();
  a->tag = Action::Tag::End;
  a->span = sp;
  return a;
}

inline ActionPtr make_emit(std::string signal, Span sp = {}) {
  auto a = std::make_shared<Action>();
  a->tag = Action::Tag::Emit;
  a->target = std::move(signal);
  a->span = sp;
  return a;
}

inline ActionPtr make_assign(std::string x, std::string y, BinOp op, std::string z, Span sp = {}) {
  auto a = std::make_shared<Action>();
  a->tag = Action::Tag::Assign;
  a->target = std::move(x);
  a->lhs = std::move(y);
  a->op = op;
  a->rhs = std::move(z);
  a->span = sp;
  return a;
}

inline ActionPtr make_if(std::string cond, ActionPtr t, ActionPtr e, Span sp = {}) {
  auto a = std::make_shared<Action>();
  a->tag = Action::Tag::If;
  a->cond = std::move(cond);
  a->then_branch = std::move(t);
  a->else_branch = std::move(e);
  a->span = sp;
  return a;
}

inline ActionPtr make_seq(ActionPtr first, ActionPtr second, Span sp = {}) {
  auto a = std::make_shared<Action>();
  a->tag = Action::Tag::Seq;
  a->first = std::move(first);
  a->second = std::move(second);
  a->span = sp;
  return a;
}

struct Connection {
  enum class Tag { Delay, Op, Event };

  Tag tag;
  Span span;
  std::string src;   // Delay/Event source, Op left operand
  std::string src2;  // Op right operand
  BinOp op = BinOp::Add;
  Value init = Value::integer(0);  // Delay
  std::string dst;
};

struct DataflowDecl {
  std::string name;
  Span span;
  std::vector<Connection> connections;
};

struct StateDecl {
  std::string name;
  Span span;
  bool initial = false;
  ActionPtr action;  // null = empty body
};

struct TransitionDecl {
  std::string from, to, guard;
  bool delayed = false;
  Span span;
};

struct AutomatonDecl {
  std::string name;
  Span span;
  std::vector<StateDecl> states;
  std::vector<TransitionDecl> transitions;
};

struct BlockDecl;
using BlockPtr = std::shared_ptr<const BlockDecl>;
using BlockItem = std::variant<BlockPtr, DataflowDecl, AutomatonDecl>;

struct BlockDecl {
  std::string name;
  Span span;
  std::vector<BlockItem> items;  // siblings composed with implicit ||
};

struct Model {
  std::vector<BlockPtr> blocks;
};

// --- structural equality, ignoring spans -------------------------------

bool equal(const ActionPtr& a, const ActionPtr& b);

inline bool equal(const Action& a, const Action& b) {
  if (a.tag != b.tag) return false;
  switch (a.tag) {
    case Action::Tag::Skip:
    case Action::Tag::End:
      return true;
    case Action::Tag::Emit:
      return a.target == b.target;
    case Action::Tag::Assign:
      return a.target == b.target && a.lhs == b.lhs && a.op == b.op && a.rhs == b.rhs;
    case Action::Tag::If:
      return a.cond == b.cond && equal(a.then_branch, b.then_branch) &&
             equal(a.else_branch, b.else_branch);
    case Action::Tag::Seq:
      return equal(a.first, b.first) && equal(a.second, b.second);
  }
  return false;
}

inline bool equal(const ActionPtr& a, const ActionPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

inline bool equal(const Connection& a, const Connection& b) {
  if (a.tag != b.tag || a.dst != b.dst || a.src != b.src) return false;
  switch (a.tag) {
    case Connection::Tag::Delay: return a.init == b.init;
    case Connection::Tag::Op: return a.op == b.op && a.src2 == b.src2;
    case Connection::Tag::Event: return true;
  }
  return false;
}

inline bool equal(const DataflowDecl& a, const DataflowDecl& b) {
  if (a.name != b.name || a.connections.size() != b.connections.size()) return false;
  for (std::size_t i = 0; i < a.connections.size(); ++i)
    if (!equal(a.connections[i], b.connections[i])) return false;
  return true;
}

inline bool equal(const AutomatonDecl& a, const AutomatonDecl& b) {
  if (a.name != b.name || a.states.size() != b.states.size() ||
      a.transitions.size() != b.transitions.size())
    return false;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const auto& x = a.states[i];
    const auto& y = b.states[i];
    if (x.name != y.name || x.initial != y.initial || !equal(x.action, y.action)) return false;
  }
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& x = a.transitions[i];
    const auto& y = b.transitions[i];
    if (x.from != y.from || x.to != y.to || x.guard != y.guard || x.delayed != y.delayed)
      return false;
  }
  return true;
}

bool equal(const BlockDecl& a, const BlockDecl& b);

inline bool equal(const BlockItem& a, const BlockItem& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<BlockPtr>(a))
    return equal(*std::get<BlockPtr>(a), *std::get<BlockPtr>(b));
  if (std::holds_alternative<DataflowDecl>(a))
    return equal(std::get<DataflowDecl>(a), std::get<DataflowDecl>(b));
  return equal(std::get<AutomatonDecl>(a), std::get<AutomatonDecl>(b));
}

inline bool equal(const BlockDecl& a, const BlockDecl& b) {
  if (a.name != b.name || a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (!equal(a.items[i], b.items[i])) return false;
  return true;
}

inline bool equal(const Model& a, const Model& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (!equal(*a.blocks[i], *b.blocks[i])) return false;
  return true;
}

}  // namespace synoptic::ast
