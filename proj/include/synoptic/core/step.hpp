#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "synoptic/core/process.hpp"

namespace synoptic::core {

// One logical instant: every visible signal is either present with a value
// or absent (std::nullopt).
using Reaction = std::map<SignalName, std::optional<Value>>;

// Delay memory, one slot per Delay equation in pre-order.
using DelayState = std::vector<Value>;

class SimError : public std::runtime_error {
public:
  SimError(std::string msg, int instant)
      : std::runtime_error(instant >= 0 ? "instant " + std::to_string(instant) + ": " + msg
                                        : std::move(msg)),
        instant(instant) {}
  int instant;
};

// A causality cycle: the fixpoint stabilized with undetermined signals.
class CausalityError : public SimError {
public:
  using SimError::SimError;
};

// A clock constraint is violated: one side present, the other absent.
class ClockError : public SimError {
public:
  using SimError::SimError;
};

// Two equations define the same signal with distinct present values.
class ConflictError : public SimError {
public:
  using SimError::SimError;
};

// Kind mismatch or checked-arithmetic failure while evaluating.
class EvalError : public SimError {
public:
  using SimError::SimError;
};

// Optional instrumentation: how many defining equations produced a present
// value per signal in one instant (used by the SSA checker).
struct StepStats {
  std::map<SignalName, int> present_defs;
};

inline DelayState initial_state(const Program& prog) {
  DelayState st;
  for (const Equation& q : prog.equations)
    if (q.tag == Equation::Tag::Delay) st.push_back(q.init);
  return st;
}

namespace detail {

enum class Status { Unknown, Absent, Present };

struct Cell {
  Status st = Status::Unknown;
  std::optional<Value> val;
};

// Three-valued evaluation result. `adaptive` marks constants, whose clock
// adapts to the context instead of forcing presence.
struct Tri {
  Status st = Status::Unknown;
  std::optional<Value> val;
  bool adaptive = false;
};

class Solver {
public:
  Solver(const Program& prog, const DelayState& state, const Reaction& inputs, int instant)
      : prog_(prog), state_(state), instant_(instant) {
    for (const SignalName& s : prog_.signals) cells_[s] = Cell{};
    std::size_t slot = 0;
    for (std::size_t i = 0; i < prog_.equations.size(); ++i)
      if (prog_.equations[i].tag == Equation::Tag::Delay) delay_slot_[i] = slot++;
    if (slot != state_.size())
      throw EvalError("delay state does not match the process", instant_);
    for (const auto& [name, v] : inputs) {
      if (!prog_.inputs.count(name))
        throw EvalError("'" + name + "' is not an input of the process", instant_);
      if (v) set_present_value(name, *v);
      else set_absent(name);
    }
    // Unsupplied inputs and hidden signals nobody defines stay absent.
    for (const SignalName& s : prog_.inputs)
      if (!inputs.count(s)) set_absent(s);
    for (const SignalName& h : prog_.hidden)
      if (!prog_.defined.count(h)) set_absent(h);
  }

  void solve() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < prog_.equations.size(); ++i) {
        const Equation& q = prog_.equations[i];
        if (q.tag == Equation::Tag::Sync) {
          changed |= propagate_sync(q);
          continue;
        }
        changed |= apply_proposal(q.lhs, propose(i));
      }
      changed |= combine_absent();
    }
    finalize();
  }

  Reaction reaction() const {
    Reaction r;
    for (const SignalName& s : prog_.visible) {
      const Cell& c = cells_.at(s);
      r[s] = c.st == Status::Present ? c.val : std::nullopt;
    }
    return r;
  }

  DelayState next_state() const {
    DelayState st = state_;
    std::size_t slot = 0;
    for (const Equation& q : prog_.equations) {
      if (q.tag != Equation::Tag::Delay) continue;
      const Cell& src = cells_.at(q.src);
      if (src.st == Status::Present) st[slot] = *src.val;
      ++slot;
    }
    return st;
  }

  void fill_stats(StepStats& stats) const {
    for (std::size_t i = 0; i < prog_.equations.size(); ++i) {
      const Equation& q = prog_.equations[i];
      if (q.tag == Equation::Tag::Sync) continue;
      if (propose(i).st == Status::Present) stats.present_defs[q.lhs]++;
    }
  }

private:
  const Program& prog_;
  const DelayState& state_;
  int instant_;
  std::map<SignalName, Cell> cells_;
  std::map<std::size_t, std::size_t> delay_slot_;

  // What one defining equation says about its target right now.
  Tri propose(std::size_t eq_index) const {
    const Equation& q = prog_.equations[eq_index];
    if (q.tag == Equation::Tag::Fun) {
      try {
        return eval(q.rhs);
      } catch (SimError&) {
        throw;
      } catch (std::exception& ex) {
        throw EvalError(std::string(ex.what()) + " in definition of '" + q.lhs + "'", instant_);
      }
    }
    // Delay: present exactly when the source is; the value comes from the
    // stored cell, so the source's presence bit alone suffices.
    const Cell& src = cells_.at(q.src);
    if (src.st == Status::Absent) return Tri{Status::Absent, std::nullopt, false};
    if (src.st == Status::Present)
      return Tri{Status::Present, state_[delay_slot_.at(eq_index)], false};
    return Tri{};
  }

  bool apply_proposal(const SignalName& s, const Tri& t) {
    if (t.st == Status::Present) {
      bool changed = set_present(s);
      if (t.val) changed |= set_present_value(s, *t.val);
      return changed;
    }
    return false;  // absence is only concluded once every definer agrees
  }

  // A multiply-defined signal is absent only when all of its defining
  // equations propose absence.
  bool combine_absent() {
    bool changed = false;
    std::map<SignalName, bool> all_absent;
    for (std::size_t i = 0; i < prog_.equations.size(); ++i) {
      const Equation& q = prog_.equations[i];
      if (q.tag == Equation::Tag::Sync) continue;
      bool absent = propose(i).st == Status::Absent;
      auto it = all_absent.find(q.lhs);
      if (it == all_absent.end()) all_absent[q.lhs] = absent;
      else it->second = it->second && absent;
    }
    for (const auto& [s, absent] : all_absent)
      if (absent) changed |= set_absent(s);
    return changed;
  }

  bool propagate_sync(const Equation& q) {
    const Cell& a = cells_.at(q.lhs);
    const Cell& b = cells_.at(q.src);
    if (a.st != Status::Unknown && b.st != Status::Unknown) {
      if (a.st != b.st)
        throw ClockError("clock constraint " + q.lhs + " ^= " + q.src +
                             " violated: one side present, the other absent",
                         instant_);
      return false;
    }
    if (a.st == Status::Absent) return set_absent(q.src);
    if (a.st == Status::Present) return set_present(q.src);
    if (b.st == Status::Absent) return set_absent(q.lhs);
    if (b.st == Status::Present) return set_present(q.lhs);
    return false;
  }

  bool set_absent(const SignalName& s) {
    Cell& c = cells_.at(s);
    if (c.st == Status::Present)
      throw ClockError("signal '" + s + "' is required to be both present and absent", instant_);
    if (c.st == Status::Absent) return false;
    c.st = Status::Absent;
    return true;
  }

  bool set_present(const SignalName& s) {
    Cell& c = cells_.at(s);
    if (c.st == Status::Absent)
      throw ClockError("signal '" + s + "' is required to be both present and absent", instant_);
    if (c.st == Status::Present) return false;
    c.st = Status::Present;
    return true;
  }

  bool set_present_value(const SignalName& s, const Value& v) {
    bool changed = set_present(s);
    Cell& c = cells_.at(s);
    if (c.val) {
      if (*c.val != v)
        throw ConflictError("signal '" + s + "' defined with distinct values " +
                                c.val->to_string() + " and " + v.to_string(),
                            instant_);
      return changed;
    }
    c.val = v;
    return true;
  }

  void finalize() const {
    std::vector<SignalName> stuck;
    for (const auto& [s, c] : cells_)
      if (c.st == Status::Unknown || (c.st == Status::Present && !c.val)) stuck.push_back(s);
    if (!stuck.empty()) {
      std::ostringstream os;
      os << "causality cycle: fixpoint stalled with undetermined signals:";
      for (const auto& s : stuck) os << " " << s;
      throw CausalityError(os.str(), instant_);
    }
    for (const Equation& q : prog_.equations) {
      if (q.tag != Equation::Tag::Delay) continue;
      if (cells_.at(q.lhs).st != cells_.at(q.src).st)
        throw ClockError("delay " + q.lhs + " := " + q.src +
                             " $ init .. violated: target and source presence differ",
                         instant_);
    }
  }

  bool truthy(const Value& v) const {
    switch (v.kind()) {
      case Kind::Event: return true;
      case Kind::Bool: return v.as_bool();
      case Kind::Int:
        throw EvalError("integer value used as a condition", instant_);
    }
    return false;
  }

  Value apply_op(BinOp op, const Value& l, const Value& r) const {
    auto need = [&](Kind k) {
      if (l.kind() != k || r.kind() != k)
        throw EvalError("operator '" + op_symbol(op) + "' applied to " + kind_name(l.kind()) +
                            " and " + kind_name(r.kind()),
                        instant_);
    };
    switch (op) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul: {
        need(Kind::Int);
        std::int64_t a = l.as_int(), b = r.as_int(), out = 0;
        bool bad = op == BinOp::Add   ? __builtin_add_overflow(a, b, &out)
                   : op == BinOp::Sub ? __builtin_sub_overflow(a, b, &out)
                                      : __builtin_mul_overflow(a, b, &out);
        if (bad) throw EvalError("integer overflow in '" + op_symbol(op) + "'", instant_);
        return Value::integer(out);
      }
      case BinOp::Eq:
      case BinOp::Ne: {
        if (l.kind() == Kind::Event || r.kind() == Kind::Event || l.kind() != r.kind())
          throw EvalError("operator '" + op_symbol(op) + "' applied to " + kind_name(l.kind()) +
                              " and " + kind_name(r.kind()),
                          instant_);
        bool eq = l == r;
        return Value::boolean(op == BinOp::Eq ? eq : !eq);
      }
      case BinOp::Lt:
      case BinOp::Le: {
        need(Kind::Int);
        std::int64_t a = l.as_int(), b = r.as_int();
        return Value::boolean(op == BinOp::Lt ? a < b : a <= b);
      }
      case BinOp::And:
      case BinOp::Or: {
        need(Kind::Bool);
        bool a = l.as_bool(), b = r.as_bool();
        return Value::boolean(op == BinOp::And ? a && b : a || b);
      }
    }
    throw EvalError("unknown operator", instant_);
  }

  Tri eval(const ExprPtr& e) const {
    switch (e->tag) {
      case Expr::Tag::SignalRef: {
        const Cell& c = cells_.at(e->name);
        return Tri{c.st, c.val, false};
      }
      case Expr::Tag::Const:
        return Tri{Status::Present, e->value, true};
      case Expr::Tag::Apply: {
        Tri l = eval(e->a), r = eval(e->b);
        if (l.st == Status::Absent && r.st == Status::Absent)
          return Tri{Status::Absent, std::nullopt, false};
        if (l.st == Status::Absent || r.st == Status::Absent) {
          const Tri& other = l.st == Status::Absent ? r : l;
          if (other.adaptive) return Tri{Status::Absent, std::nullopt, false};
          if (other.st == Status::Present)
            throw ClockError("operands of '" + op_symbol(e->op) +
                                 "' have mismatched presence",
                             instant_);
          return Tri{};  // other still unknown
        }
        if (l.st == Status::Unknown || r.st == Status::Unknown) return Tri{};
        bool adaptive = l.adaptive && r.adaptive;
        if (!l.val || !r.val) return Tri{Status::Present, std::nullopt, adaptive};
        return Tri{Status::Present, apply_op(e->op, *l.val, *r.val), adaptive};
      }
      case Expr::Tag::Not: {
        Tri x = eval(e->a);
        if (x.st != Status::Present || !x.val) return x;
        if (x.val->kind() != Kind::Bool)
          throw EvalError("'not' applied to " + kind_name(x.val->kind()), instant_);
        return Tri{Status::Present, Value::boolean(!x.val->as_bool()), x.adaptive};
      }
      case Expr::Tag::When: {
        Tri c = eval(e->b);
        if (c.st == Status::Absent) return Tri{Status::Absent, std::nullopt, false};
        if (c.st == Status::Present && c.val) {
          if (!truthy(*c.val)) return Tri{Status::Absent, std::nullopt, false};
          Tri d = eval(e->a);
          if (d.st == Status::Present) return Tri{Status::Present, d.val, false};
          return d;
        }
        // Condition pending or unknown; only a definitely-absent data side
        // settles the result.
        Tri d = eval(e->a);
        if (d.st == Status::Absent && !d.adaptive) return Tri{Status::Absent, std::nullopt, false};
        return Tri{};
      }
      case Expr::Tag::Default: {
        Tri l = eval(e->a);
        if (l.st == Status::Present) return Tri{Status::Present, l.val, l.adaptive};
        if (l.st == Status::Absent) return eval(e->b);
        return Tri{};
      }
      case Expr::Tag::EventOf: {
        Tri x = eval(e->a);
        if (x.st == Status::Absent) return Tri{Status::Absent, std::nullopt, false};
        if (x.st != Status::Present || !x.val) return Tri{};  // presence hinges on the value
        if (x.val->kind() == Kind::Int)
          throw EvalError("'when' applied to an integer", instant_);
        bool on = x.val->kind() == Kind::Event || x.val->as_bool();
        if (!on) return Tri{Status::Absent, std::nullopt, false};
        return Tri{Status::Present, Value::event(), x.adaptive};
      }
      case Expr::Tag::BoolOf: {
        Tri x = eval(e->a);
        if (x.st != Status::Present) return x;
        if (!x.val) return Tri{Status::Present, std::nullopt, x.adaptive};
        if (x.val->kind() == Kind::Int)
          throw EvalError("'?' applied to an integer", instant_);
        bool b = x.val->kind() == Kind::Event || x.val->as_bool();
        return Tri{Status::Present, Value::boolean(b), x.adaptive};
      }
    }
    return Tri{};
  }
};

}  // namespace detail

inline std::pair<Reaction, DelayState> step(const Program& prog, const DelayState& state,
                                            const Reaction& inputs, StepStats* stats = nullptr,
                                            int instant = -1) {
  detail::Solver solver(prog, state, inputs, instant);
  solver.solve();
  if (stats) solver.fill_stats(*stats);
  return {solver.reaction(), solver.next_state()};
}

inline std::pair<Reaction, DelayState> step(const ProcessPtr& p, const DelayState& state,
                                            const Reaction& inputs) {
  return step(flatten(p), state, inputs);
}

inline std::vector<Reaction> run(const Program& prog, const std::vector<Reaction>& trace,
                                 StepStats* stats = nullptr) {
  std::vector<Reaction> out;
  DelayState st = initial_state(prog);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto [r, next] = step(prog, st, trace[i], stats, static_cast<int>(i));
    out.push_back(std::move(r));
    st = std::move(next);
  }
  return out;
}

inline std::vector<Reaction> run(const ProcessPtr& p, const std::vector<Reaction>& trace) {
  return run(flatten(p), trace);
}

}  // namespace synoptic::core
