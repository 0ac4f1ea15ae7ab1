#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "synoptic/core/step.hpp"
#include "synoptic/translate.hpp"

namespace synoptic {

class TraceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ParsedTrace {
  std::vector<std::string> header;
  std::vector<core::Reaction> rows;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline Value parse_value(const std::string& name, const std::string& text, Kind kind, int lineno) {
  auto fail = [&](const std::string& why) {
    throw TraceError("trace line " + std::to_string(lineno) + ": " + why + " for '" + name + "'");
  };
  switch (kind) {
    case Kind::Event:
      fail("an event signal takes no '=value' (use '" + name + "!')");
      break;
    case Kind::Bool:
      if (text == "true") return Value::boolean(true);
      if (text == "false") return Value::boolean(false);
      fail("expected true/false");
      break;
    case Kind::Int: {
      try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used == text.size()) return Value::integer(v);
      } catch (...) {
      }
      fail("expected an integer");
      break;
    }
  }
  return Value::integer(0);
}

}  // namespace detail

// Trace file format: a header line naming input signals, then one line per
// instant with `name=value` entries for data, `name!` for present events;
// omitted names are absent. An empty line is an instant where every input
// is absent.
inline ParsedTrace parse_trace(const std::string& text, const trans::Manifest& manifest) {
  std::map<std::string, Kind> input_kinds;
  for (const auto& e : manifest.inputs) input_kinds[e.name] = e.kind;

  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  if (lines.empty()) throw TraceError("trace file is empty (a header line is required)");

  ParsedTrace out;
  out.header = detail::split_ws(lines[0]);
  std::set<std::string> known;
  for (const auto& name : out.header) {
    auto it = input_kinds.find(name);
    if (it == input_kinds.end())
      throw TraceError("trace names '" + name + "', which is not an input of the model");
    known.insert(name);
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    core::Reaction row;
    for (const auto& tok : detail::split_ws(lines[i])) {
      int lineno = static_cast<int>(i) + 1;
      if (tok.size() > 1 && tok.back() == '!') {
        std::string name = tok.substr(0, tok.size() - 1);
        if (!known.count(name))
          throw TraceError("trace line " + std::to_string(lineno) + ": '" + name +
                           "' is not in the header");
        if (input_kinds.at(name) != Kind::Event)
          throw TraceError("trace line " + std::to_string(lineno) + ": '" + name +
                           "' is not an event signal");
        row[name] = Value::event();
        continue;
      }
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0)
        throw TraceError("trace line " + std::to_string(lineno) + ": cannot parse entry '" + tok +
                         "'");
      std::string name = tok.substr(0, eq);
      if (!known.count(name))
        throw TraceError("trace line " + std::to_string(lineno) + ": '" + name +
                         "' is not in the header");
      row[name] = detail::parse_value(name, tok.substr(eq + 1), input_kinds.at(name), lineno);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Output trace: header of all observable signals sorted alphabetically,
// then one line per instant with the present entries.
inline std::string format_trace(const std::set<std::string>& signals,
                                const std::vector<core::Reaction>& rows) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : signals) {
    if (!first) os << " ";
    os << s;
    first = false;
  }
  os << "\n";
  for (const auto& row : rows) {
    first = true;
    for (const auto& s : signals) {
      auto it = row.find(s);
      if (it == row.end() || !it->second) continue;
      if (!first) os << " ";
      first = false;
      if (it->second->kind() == Kind::Event) os << s << "!";
      else os << s << "=" << it->second->to_string();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace synoptic
