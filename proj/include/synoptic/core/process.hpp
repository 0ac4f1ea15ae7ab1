#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "synoptic/core/expr.hpp"

namespace synoptic::core {

// One equation of the core calculus:
//   Fun    x := e
//   Delay  x := y $ init v   (x present exactly when y is; x carries the
//                             previously stored value of y, initially v)
//   Sync   x ^= y            (presence-only clock constraint)
struct Equation {
  enum class Tag { Fun, Delay, Sync };

  Tag tag;
  SignalName lhs;  // Fun/Delay target; Sync first operand
  ExprPtr rhs;     // Fun
  SignalName src;  // Delay source; Sync second operand
  Value init = Value::integer(0);
};

struct Process;
using ProcessPtr = std::shared_ptr<const Process>;

struct Process {
  enum class Tag { Empty, Eq, Compose, Restrict };

  Tag tag;
  Equation eq;             // Eq
  ProcessPtr left, right;  // Compose
  ProcessPtr body;         // Restrict
  SignalName hidden;       // Restrict (already alpha-renamed to a fresh name)
};

// Supplies globally fresh signal names for restriction. Deterministic:
// counters start at zero per supply, so a compilation is reproducible.
class NameSupply {
public:
  SignalName fresh(const SignalName& base) {
    return base + "#" + std::to_string(next_++);
  }

private:
  std::uint64_t next_ = 0;
};

inline ProcessPtr empty_process() {
  auto p = std::make_shared<Process>();
  p->tag = Process::Tag::Empty;
  return p;
}

inline ProcessPtr eq_process(Equation e) {
  auto p = std::make_shared<Process>();
  p->tag = Process::Tag::Eq;
  p->eq = std::move(e);
  return p;
}

inline ProcessPtr fun_eq(SignalName x, ExprPtr e) {
  Equation q;
  q.tag = Equation::Tag::Fun;
  q.lhs = std::move(x);
  q.rhs = std::move(e);
  return eq_process(std::move(q));
}

inline ProcessPtr delay_eq(SignalName x, SignalName y, Value init) {
  Equation q;
  q.tag = Equation::Tag::Delay;
  q.lhs = std::move(x);
  q.src = std::move(y);
  q.init = init;
  return eq_process(std::move(q));
}

inline ProcessPtr sync_eq(SignalName x, SignalName y) {
  Equation q;
  q.tag = Equation::Tag::Sync;
  q.lhs = std::move(x);
  q.src = std::move(y);
  return eq_process(std::move(q));
}

inline ProcessPtr compose(ProcessPtr a, ProcessPtr b) {
  if (a->tag == Process::Tag::Empty) return b;
  if (b->tag == Process::Tag::Empty) return a;
  auto p = std::make_shared<Process>();
  p->tag = Process::Tag::Compose;
  p->left = std::move(a);
  p->right = std::move(b);
  return p;
}

// Balanced composition: the observable behaviour does not depend on the
// tree shape, and a balanced tree keeps traversals shallow for very long
// equation lists.
inline ProcessPtr compose_all(std::vector<ProcessPtr> parts) {
  std::erase_if(parts, [](const ProcessPtr& p) { return p->tag == Process::Tag::Empty; });
  if (parts.empty()) return empty_process();
  while (parts.size() > 1) {
    std::vector<ProcessPtr> next;
    next.reserve(parts.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(compose(parts[i], parts[i + 1]));
    if (parts.size() % 2) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts[0];
}

namespace detail {

inline ExprPtr subst_expr(const ExprPtr& e, const SignalName& from, const SignalName& to) {
  if (!e) return e;
  switch (e->tag) {
    case Expr::Tag::SignalRef:
      return e->name == from ? ref(to) : e;
    case Expr::Tag::Const:
      return e;
    default: {
      ExprPtr a = subst_expr(e->a, from, to);
      ExprPtr b = subst_expr(e->b, from, to);
      if (a == e->a && b == e->b) return e;
      auto n = std::make_shared<Expr>(*e);
      n->a = std::move(a);
      n->b = std::move(b);
      return n;
    }
  }
}

inline ProcessPtr subst_process(const ProcessPtr& p, const SignalName& from, const SignalName& to) {
  switch (p->tag) {
    case Process::Tag::Empty:
      return p;
    case Process::Tag::Eq: {
      Equation q = p->eq;
      bool changed = false;
      if (q.lhs == from) { q.lhs = to; changed = true; }
      if ((q.tag == Equation::Tag::Delay || q.tag == Equation::Tag::Sync) && q.src == from) {
        q.src = to;
        changed = true;
      }
      if (q.tag == Equation::Tag::Fun) {
        ExprPtr r = subst_expr(q.rhs, from, to);
        if (r != q.rhs) { q.rhs = std::move(r); changed = true; }
      }
      return changed ? eq_process(std::move(q)) : p;
    }
    case Process::Tag::Compose: {
      ProcessPtr l = subst_process(p->left, from, to);
      ProcessPtr r = subst_process(p->right, from, to);
      if (l == p->left && r == p->right) return p;
      auto n = std::make_shared<Process>();
      n->tag = Process::Tag::Compose;
      n->left = std::move(l);
      n->right = std::move(r);
      return n;
    }
    case Process::Tag::Restrict: {
      if (p->hidden == from) return p;  // shadowed, nothing free below
      ProcessPtr b = subst_process(p->body, from, to);
      if (b == p->body) return p;
      auto n = std::make_shared<Process>();
      n->tag = Process::Tag::Restrict;
      n->body = std::move(b);
      n->hidden = p->hidden;
      return n;
    }
  }
  return p;
}

inline void collect_expr_refs(const ExprPtr& e, std::set<SignalName>& out) {
  if (!e) return;
  if (e->tag == Expr::Tag::SignalRef) {
    out.insert(e->name);
    return;
  }
  collect_expr_refs(e->a, out);
  collect_expr_refs(e->b, out);
}

}  // namespace detail

// Restriction alpha-renames its bound signal to a globally fresh name at
// construction time, so later composition can never capture it.
inline ProcessPtr restrict_signal(ProcessPtr p, const SignalName& name, NameSupply& supply) {
  SignalName fresh = supply.fresh(name);
  auto n = std::make_shared<Process>();
  n->tag = Process::Tag::Restrict;
  n->body = detail::subst_process(p, name, fresh);
  n->hidden = fresh;
  return n;
}

inline void signals_of_equation(const Equation& q, std::set<SignalName>& out) {
  out.insert(q.lhs);
  if (q.tag == Equation::Tag::Delay || q.tag == Equation::Tag::Sync) out.insert(q.src);
  if (q.tag == Equation::Tag::Fun) detail::collect_expr_refs(q.rhs, out);
}

inline std::set<SignalName> free_signals(const ProcessPtr& p) {
  switch (p->tag) {
    case Process::Tag::Empty:
      return {};
    case Process::Tag::Eq: {
      std::set<SignalName> out;
      signals_of_equation(p->eq, out);
      return out;
    }
    case Process::Tag::Compose: {
      std::set<SignalName> out = free_signals(p->left);
      auto r = free_signals(p->right);
      out.insert(r.begin(), r.end());
      return out;
    }
    case Process::Tag::Restrict: {
      std::set<SignalName> out = free_signals(p->body);
      out.erase(p->hidden);
      return out;
    }
  }
  return {};
}

// Flattened view of a process: the equation list in pre-order, the hidden
// signal set, and the derived signal classification used by the solver.
struct Program {
  std::vector<Equation> equations;
  std::vector<SignalName> hidden;
  std::set<SignalName> signals;  // every name mentioned anywhere
  std::set<SignalName> defined;  // Fun/Delay targets
  std::set<SignalName> inputs;   // free and never defined
  std::set<SignalName> visible;  // not restricted
};

namespace detail {

inline void flatten_into(const ProcessPtr& p, Program& prog) {
  switch (p->tag) {
    case Process::Tag::Empty:
      return;
    case Process::Tag::Eq:
      prog.equations.push_back(p->eq);
      return;
    case Process::Tag::Compose:
      flatten_into(p->left, prog);
      flatten_into(p->right, prog);
      return;
    case Process::Tag::Restrict:
      prog.hidden.push_back(p->hidden);
      flatten_into(p->body, prog);
      return;
  }
}

}  // namespace detail

inline Program flatten(const ProcessPtr& p) {
  Program prog;
  detail::flatten_into(p, prog);
  for (const Equation& q : prog.equations) {
    signals_of_equation(q, prog.signals);
    if (q.tag != Equation::Tag::Sync) prog.defined.insert(q.lhs);
  }
  for (const SignalName& h : prog.hidden) prog.signals.insert(h);
  std::set<SignalName> hidden_set(prog.hidden.begin(), prog.hidden.end());
  for (const SignalName& s : prog.signals) {
    if (!hidden_set.count(s)) prog.visible.insert(s);
    if (!prog.defined.count(s) && !hidden_set.count(s)) prog.inputs.insert(s);
  }
  return prog;
}

}  // namespace synoptic::core
