#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace synoptic {

struct Span {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  std::string code;  // e.g. "CyclicRegion", "MultipleInitial"
  std::string message;
  Span span;
};

inline std::string format_diagnostic(const Diagnostic& d, const std::string& file = "") {
  std::string out;
  if (!file.empty()) out += file + ":";
  out += std::to_string(d.span.line) + ":" + std::to_string(d.span.col);
  out += ": error [" + d.code + "]: " + d.message;
  return out;
}

class ParseError : public std::runtime_error {
public:
  ParseError(std::string code, const std::string& msg, Span span)
      : std::runtime_error(msg), code(std::move(code)), span(span) {}
  std::string code;
  Span span;
};

class TranslateError : public std::runtime_error {
public:
  TranslateError(std::string code, const std::string& msg, Span span = {})
      : std::runtime_error(msg), code(std::move(code)), span(span) {}
  std::string code;
  Span span;
};

}  // namespace synoptic
