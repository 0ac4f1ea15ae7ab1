#pragma once

#include <sstream>
#include <string>

#include "synoptic/ast.hpp"

namespace synoptic {

namespace detail {

inline void print_action(std::ostream& os, const ast::ActionPtr& a, const std::string& pad);

inline void print_stmt(std::ostream& os, const ast::Action& a, const std::string& pad) {
  switch (a.tag) {
    case ast::Action::Tag::Skip:
      os << pad << "skip";
      return;
    case ast::Action::Tag::End:
      os << pad << "skip";  // End is synthetic and never printed in practice
      return;
    case ast::Action::Tag::Emit:
      os << pad << a.target << "!";
      return;
    case ast::Action::Tag::Assign:
      os << pad << a.target << " = " << a.lhs << " " << op_symbol(a.op) << " " << a.rhs;
      return;
    case ast::Action::Tag::If: {
      os << pad << "if " << a.cond << " {";
      if (a.then_branch) {
        os << "\n";
        print_action(os, a.then_branch, pad + "  ");
        os << "\n" << pad << "}";
      } else {
        os << " }";
      }
      if (a.else_branch) {
        os << " else {\n";
        print_action(os, a.else_branch, pad + "  ");
        os << "\n" << pad << "}";
      }
      return;
    }
    case ast::Action::Tag::Seq:
      return;  // handled by print_action
  }
}

inline void print_action(std::ostream& os, const ast::ActionPtr& a, const std::string& pad) {
  if (!a) return;
  if (a->tag == ast::Action::Tag::Seq) {
    print_action(os, a->first, pad);
    os << ";\n";
    print_action(os, a->second, pad);
    return;
  }
  print_stmt(os, *a, pad);
}

inline void print_block(std::ostream& os, const ast::BlockDecl& b, const std::string& pad);

inline void print_dataflow(std::ostream& os, const ast::DataflowDecl& d, const std::string& pad) {
  os << pad << "dataflow " << d.name << " {\n";
  for (const auto& c : d.connections) {
    switch (c.tag) {
      case ast::Connection::Tag::Delay:
        os << pad << "  data " << c.src << " $ init " << c.init.to_string() << " -> " << c.dst
           << "\n";
        break;
      case ast::Connection::Tag::Op:
        os << pad << "  data " << c.src << " " << op_symbol(c.op) << " " << c.src2 << " -> "
           << c.dst << "\n";
        break;
      case ast::Connection::Tag::Event:
        os << pad << "  event " << c.src << " -> " << c.dst << "\n";
        break;
    }
  }
  os << pad << "}\n";
}

inline void print_automaton(std::ostream& os, const ast::AutomatonDecl& a, const std::string& pad) {
  os << pad << "automaton " << a.name << " {\n";
  for (const auto& s : a.states) {
    os << pad << "  " << (s.initial ? "initial " : "") << "state " << s.name << " {";
    if (s.action) {
      os << "\n" << pad << "    do {\n";
      print_action(os, s.action, pad + "      ");
      os << "\n" << pad << "    }\n" << pad << "  }\n";
    } else {
      os << " }\n";
    }
  }
  for (const auto& t : a.transitions)
    os << pad << "  " << t.from << " " << (t.delayed ? "->>" : "->") << " " << t.to << " on "
       << t.guard << "\n";
  os << pad << "}\n";
}

inline void print_block(std::ostream& os, const ast::BlockDecl& b, const std::string& pad) {
  os << pad << "block " << b.name << " {\n";
  for (const auto& item : b.items) {
    if (std::holds_alternative<ast::BlockPtr>(item))
      print_block(os, *std::get<ast::BlockPtr>(item), pad + "  ");
    else if (std::holds_alternative<ast::DataflowDecl>(item))
      print_dataflow(os, std::get<ast::DataflowDecl>(item), pad + "  ");
    else
      print_automaton(os, std::get<ast::AutomatonDecl>(item), pad + "  ");
  }
  os << pad << "}\n";
}

}  // namespace detail

// Canonical source form. parse(pretty_print(m)) is structurally equal to m.
inline std::string pretty_print(const ast::Model& m) {
  std::ostringstream os;
  for (const auto& b : m.blocks) detail::print_block(os, *b, "");
  return os.str();
}

}  // namespace synoptic
