#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "synoptic/diag.hpp"

namespace synoptic {

enum class Tok {
  Ident,
  Int,
  KwBlock, KwDataflow, KwAutomaton, KwState, KwInitial, KwDo, KwSkip, KwIf,
  KwElse, KwOn, KwData, KwEvent, KwInit, KwTrue, KwFalse, KwAnd, KwOr,
  LBrace, RBrace, Semi, Bang, Assign, Plus, Minus, Star, Ne, Lt, Le,
  Arrow, DArrow, Dollar, Dot,
  Eof,
};

struct Token {
  Tok type;
  std::string text;
  std::int64_t int_val = 0;
  Span span;
};

inline Tok keyword_of(const std::string& s) {
  if (s == "block") return Tok::KwBlock;
  if (s == "dataflow") return Tok::KwDataflow;
  if (s == "automaton") return Tok::KwAutomaton;
  if (s == "state") return Tok::KwState;
  if (s == "initial") return Tok::KwInitial;
  if (s == "do") return Tok::KwDo;
  if (s == "skip") return Tok::KwSkip;
  if (s == "if") return Tok::KwIf;
  if (s == "else") return Tok::KwElse;
  if (s == "on") return Tok::KwOn;
  if (s == "data") return Tok::KwData;
  if (s == "event") return Tok::KwEvent;
  if (s == "init") return Tok::KwInit;
  if (s == "true") return Tok::KwTrue;
  if (s == "false") return Tok::KwFalse;
  if (s == "and") return Tok::KwAnd;
  if (s == "or") return Tok::KwOr;
  return Tok::Ident;
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokens() {
    std::vector<Token> out;
    for (;;) {
      Token t = next();
      bool eof = t.type == Tok::Eof;
      out.push_back(std::move(t));
      if (eof) break;
    }
    return out;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (peek() != '\n' && peek() != '\0') advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    skip_trivia();
    Span sp{line_, col_};
    if (pos_ >= text_.size()) return {Tok::Eof, "", 0, sp};
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
        word.push_back(advance());
      return {keyword_of(word), word, 0, sp};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(advance());
      try {
        return {Tok::Int, digits, std::stoll(digits), sp};
      } catch (std::out_of_range&) {
        throw ParseError("SyntaxError", "integer literal out of range", sp);
      }
    }
    advance();
    switch (c) {
      case '{': return {Tok::LBrace, "{", 0, sp};
      case '}': return {Tok::RBrace, "}", 0, sp};
      case ';': return {Tok::Semi, ";", 0, sp};
      case '$': return {Tok::Dollar, "$", 0, sp};
      case '.': return {Tok::Dot, ".", 0, sp};
      case '+': return {Tok::Plus, "+", 0, sp};
      case '*': return {Tok::Star, "*", 0, sp};
      case '=': return {Tok::Assign, "=", 0, sp};
      case '!':
        if (peek() == '=') {
          advance();
          return {Tok::Ne, "!=", 0, sp};
        }
        return {Tok::Bang, "!", 0, sp};
      case '<':
        if (peek() == '=') {
          advance();
          return {Tok::Le, "<=", 0, sp};
        }
        return {Tok::Lt, "<", 0, sp};
      case '-':
        if (peek() == '>') {
          advance();
          if (peek() == '>') {
            advance();
            return {Tok::DArrow, "->>", 0, sp};
          }
          return {Tok::Arrow, "->", 0, sp};
        }
        return {Tok::Minus, "-", 0, sp};
      default:
        throw ParseError("SyntaxError", std::string("unexpected character '") + c + "'", sp);
    }
  }
};

}  // namespace synoptic
