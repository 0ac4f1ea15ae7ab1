#pragma once

#include <sstream>
#include <string>

#include "synoptic/core/process.hpp"

namespace synoptic::core {

namespace detail {

inline void print_expr(std::ostream& os, const ExprPtr& e, bool nested) {
  switch (e->tag) {
    case Expr::Tag::SignalRef:
      os << e->name;
      return;
    case Expr::Tag::Const:
      os << e->value.to_string();
      return;
    case Expr::Tag::Apply:
      if (nested) os << "(";
      print_expr(os, e->a, true);
      os << " " << op_symbol(e->op) << " ";
      print_expr(os, e->b, true);
      if (nested) os << ")";
      return;
    case Expr::Tag::Not:
      if (nested) os << "(";
      os << "not ";
      print_expr(os, e->a, true);
      if (nested) os << ")";
      return;
    case Expr::Tag::When:
      if (nested) os << "(";
      print_expr(os, e->a, true);
      os << " when ";
      print_expr(os, e->b, true);
      if (nested) os << ")";
      return;
    case Expr::Tag::Default:
      if (nested) os << "(";
      print_expr(os, e->a, true);
      os << " default ";
      print_expr(os, e->b, true);
      if (nested) os << ")";
      return;
    case Expr::Tag::EventOf:
      if (nested) os << "(";
      os << "when ";
      print_expr(os, e->a, true);
      if (nested) os << ")";
      return;
    case Expr::Tag::BoolOf:
      if (nested) os << "(";
      os << "? ";
      print_expr(os, e->a, true);
      if (nested) os << ")";
      return;
  }
}

inline void print_equation(std::ostream& os, const Equation& q) {
  switch (q.tag) {
    case Equation::Tag::Fun:
      os << q.lhs << " := ";
      print_expr(os, q.rhs, false);
      return;
    case Equation::Tag::Delay:
      os << q.lhs << " := " << q.src << " $ init " << q.init.to_string();
      return;
    case Equation::Tag::Sync:
      os << q.lhs << " ^= " << q.src;
      return;
  }
}

inline void print_process(std::ostream& os, const ProcessPtr& p, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (p->tag) {
    case Process::Tag::Empty:
      return;
    case Process::Tag::Eq:
      os << pad;
      print_equation(os, p->eq);
      os << "\n";
      return;
    case Process::Tag::Compose:
      print_process(os, p->left, indent);
      print_process(os, p->right, indent);
      return;
    case Process::Tag::Restrict:
      os << pad << "(\n";
      print_process(os, p->body, indent + 1);
      os << pad << ") / " << p->hidden << "\n";
      return;
  }
}

}  // namespace detail

// Text dump of the core process: one equation per line, pre-order over the
// composition tree, restriction shown as `( ... ) / x`.
inline std::string dump(const ProcessPtr& p) {
  std::ostringstream os;
  detail::print_process(os, p, 0);
  return os.str();
}

inline std::string dump_expr(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, false);
  return os.str();
}

}  // namespace synoptic::core
