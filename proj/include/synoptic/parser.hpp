#pragma once

#include <set>
#include <string>
#include <vector>

#include "synoptic/ast.hpp"
#include "synoptic/lexer.hpp"

namespace synoptic {

// Recursive-descent parser for the concrete grammar:
//
//   model     := block+
//   block     := "block" ID "{" (block | dataflow | automaton)+ "}"
//   dataflow  := "dataflow" ID "{" conn* "}"
//   conn      := "data" PATH "$" "init" CONST "->" PATH
//              | "data" PATH OP PATH "->" PATH
//              | "event" PATH "->" PATH
//   automaton := "automaton" ID "{" state+ trans* "}"
//   state     := ("initial")? "state" ID "{" ("do" "{" action? "}")? "}"
//   trans     := ID ("->" | "->>") ID "on" PATH
//   action    := stmt (";" stmt)*
//   stmt      := "skip" | PATH "!" | PATH "=" PATH OP PATH
//              | "if" PATH "{" action? "}" ("else" "{" action? "}")?
//
// `#` starts a line comment. Sequences are right-associated.
class Parser {
public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).tokens()) {}

  ast::Model parse_model() {
    ast::Model m;
    std::set<std::string> names;
    while (!at(Tok::Eof)) {
      Token kw = expect(Tok::KwBlock, "expected 'block'");
      m.blocks.push_back(parse_block_body(kw.span));
      const std::string& name = m.blocks.back()->name;
      if (!names.insert(name).second)
        throw ParseError("DuplicateName", "duplicate block '" + name + "'", m.blocks.back()->span);
    }
    if (m.blocks.empty())
      throw ParseError("SyntaxError", "a model needs at least one block", cur().span);
    return m;
  }

private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& cur() const { return toks_[i_]; }
  bool at(Tok t) const { return cur().type == t; }

  Token expect(Tok t, const std::string& what) {
    if (!at(t)) throw ParseError("SyntaxError", what + ", got '" + cur().text + "'", cur().span);
    return toks_[i_++];
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    ++i_;
    return true;
  }

  std::string parse_path() {
    Token first = expect(Tok::Ident, "expected an identifier");
    std::string path = first.text;
    while (accept(Tok::Dot)) {
      Token part = expect(Tok::Ident, "expected an identifier after '.'");
      path += "." + part.text;
    }
    return path;
  }

  Value parse_const() {
    if (accept(Tok::KwTrue)) return Value::boolean(true);
    if (accept(Tok::KwFalse)) return Value::boolean(false);
    bool neg = accept(Tok::Minus);
    Token t = expect(Tok::Int, "expected a constant");
    return Value::integer(neg ? -t.int_val : t.int_val);
  }

  std::optional<BinOp> peek_op() const {
    switch (cur().type) {
      case Tok::Plus: return BinOp::Add;
      case Tok::Minus: return BinOp::Sub;
      case Tok::Star: return BinOp::Mul;
      case Tok::Assign: return BinOp::Eq;
      case Tok::Ne: return BinOp::Ne;
      case Tok::Lt: return BinOp::Lt;
      case Tok::Le: return BinOp::Le;
      case Tok::KwAnd: return BinOp::And;
      case Tok::KwOr: return BinOp::Or;
      default: return std::nullopt;
    }
  }

  BinOp parse_op() {
    auto op = peek_op();
    if (!op) throw ParseError("SyntaxError", "expected an operator, got '" + cur().text + "'",
                              cur().span);
    ++i_;
    return *op;
  }

  ast::BlockPtr parse_block_body(Span sp) {
    auto block = std::make_shared<ast::BlockDecl>();
    block->span = sp;
    block->name = expect(Tok::Ident, "expected a block name").text;
    expect(Tok::LBrace, "expected '{'");
    std::set<std::string> names;
    auto check_name = [&](const std::string& n, Span where) {
      if (!names.insert(n).second)
        throw ParseError("DuplicateName", "duplicate name '" + n + "' in block '" + block->name + "'",
                         where);
    };
    while (!at(Tok::RBrace)) {
      if (at(Tok::KwBlock)) {
        Token kw = toks_[i_++];
        auto child = parse_block_body(kw.span);
        check_name(child->name, child->span);
        block->items.emplace_back(std::move(child));
      } else if (at(Tok::KwDataflow)) {
        Token kw = toks_[i_++];
        auto d = parse_dataflow(kw.span);
        check_name(d.name, d.span);
        block->items.emplace_back(std::move(d));
      } else if (at(Tok::KwAutomaton)) {
        Token kw = toks_[i_++];
        auto a = parse_automaton(kw.span);
        check_name(a.name, a.span);
        block->items.emplace_back(std::move(a));
      } else {
        throw ParseError("SyntaxError",
                         "expected 'block', 'dataflow' or 'automaton', got '" + cur().text + "'",
                         cur().span);
      }
    }
    if (block->items.empty())
      throw ParseError("SyntaxError", "block '" + block->name + "' is empty", block->span);
    expect(Tok::RBrace, "expected '}'");
    return block;
  }

  ast::DataflowDecl parse_dataflow(Span sp) {
    ast::DataflowDecl d;
    d.span = sp;
    d.name = expect(Tok::Ident, "expected a dataflow name").text;
    expect(Tok::LBrace, "expected '{'");
    while (!at(Tok::RBrace)) {
      ast::Connection c;
      c.span = cur().span;
      if (accept(Tok::KwEvent)) {
        c.tag = ast::Connection::Tag::Event;
        c.src = parse_path();
        expect(Tok::Arrow, "expected '->'");
        c.dst = parse_path();
      } else {
        expect(Tok::KwData, "expected 'data' or 'event'");
        c.src = parse_path();
        if (accept(Tok::Dollar)) {
          c.tag = ast::Connection::Tag::Delay;
          expect(Tok::KwInit, "expected 'init'");
          c.init = parse_const();
        } else {
          c.tag = ast::Connection::Tag::Op;
          c.op = parse_op();
          c.src2 = parse_path();
        }
        expect(Tok::Arrow, "expected '->'");
        c.dst = parse_path();
      }
      d.connections.push_back(std::move(c));
    }
    expect(Tok::RBrace, "expected '}'");
    return d;
  }

  ast::AutomatonDecl parse_automaton(Span sp) {
    ast::AutomatonDecl a;
    a.span = sp;
    a.name = expect(Tok::Ident, "expected an automaton name").text;
    expect(Tok::LBrace, "expected '{'");
    std::set<std::string> state_names;
    while (at(Tok::KwInitial) || at(Tok::KwState)) {
      ast::StateDecl s;
      s.span = cur().span;
      s.initial = accept(Tok::KwInitial);
      expect(Tok::KwState, "expected 'state'");
      s.name = expect(Tok::Ident, "expected a state name").text;
      if (!state_names.insert(s.name).second)
        throw ParseError("DuplicateName",
                         "duplicate state '" + s.name + "' in automaton '" + a.name + "'", s.span);
      expect(Tok::LBrace, "expected '{'");
      if (accept(Tok::KwDo)) {
        expect(Tok::LBrace, "expected '{'");
        if (!at(Tok::RBrace)) s.action = parse_action();
        expect(Tok::RBrace, "expected '}'");
      }
      expect(Tok::RBrace, "expected '}'");
      a.states.push_back(std::move(s));
    }
    if (a.states.empty())
      throw ParseError("SyntaxError", "automaton '" + a.name + "' has no states", a.span);
    while (at(Tok::Ident)) {
      ast::TransitionDecl t;
      t.span = cur().span;
      t.from = expect(Tok::Ident, "expected a state name").text;
      if (accept(Tok::DArrow)) t.delayed = true;
      else {
        expect(Tok::Arrow, "expected '->' or '->>'");
        t.delayed = false;
      }
      t.to = expect(Tok::Ident, "expected a state name").text;
      expect(Tok::KwOn, "expected 'on'");
      t.guard = expect(Tok::Ident, "expected a guard variable").text;
      for (const std::string* endpoint : {&t.from, &t.to})
        if (!state_names.count(*endpoint))
          throw ParseError("UnknownState",
                           "transition references unknown state '" + *endpoint + "'", t.span);
      a.transitions.push_back(std::move(t));
    }
    expect(Tok::RBrace, "expected '}'");
    return a;
  }

  ast::ActionPtr parse_action() {
    ast::ActionPtr first = parse_stmt();
    if (!accept(Tok::Semi)) return first;
    Span sp = cur().span;
    ast::ActionPtr rest = parse_action();  // right-associated
    return ast::make_seq(std::move(first), std::move(rest), sp);
  }

  ast::ActionPtr parse_stmt() {
    Span sp = cur().span;
    if (accept(Tok::KwSkip)) return ast::make_skip(sp);
    if (accept(Tok::KwIf)) {
      std::string cond = expect(Tok::Ident, "expected a condition variable").text;
      expect(Tok::LBrace, "expected '{'");
      ast::ActionPtr then_branch;
      if (!at(Tok::RBrace)) then_branch = parse_action();
      expect(Tok::RBrace, "expected '}'");
      ast::ActionPtr else_branch;
      if (accept(Tok::KwElse)) {
        expect(Tok::LBrace, "expected '{'");
        if (!at(Tok::RBrace)) else_branch = parse_action();
        expect(Tok::RBrace, "expected '}'");
      }
      return ast::make_if(std::move(cond), std::move(then_branch), std::move(else_branch), sp);
    }
    std::string name = expect(Tok::Ident, "expected a statement").text;
    if (accept(Tok::Bang)) return ast::make_emit(std::move(name), sp);
    expect(Tok::Assign, "expected '=' or '!'");
    std::string lhs = expect(Tok::Ident, "expected an operand").text;
    BinOp op = parse_op();
    std::string rhs = expect(Tok::Ident, "expected an operand").text;
    return ast::make_assign(std::move(name), std::move(lhs), op, std::move(rhs), sp);
  }
};

inline ast::Model parse(std::string_view text) { return Parser(text).parse_model(); }

}  // namespace synoptic
