#pragma once

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "synoptic/core/process.hpp"
#include "synoptic/core/step.hpp"
#include "synoptic/parser.hpp"
#include "synoptic/translate.hpp"

namespace testutil {

using namespace synoptic;
using core::Reaction;

inline std::optional<Value> present(Value v) { return v; }
inline std::optional<Value> pi(std::int64_t i) { return Value::integer(i); }
inline std::optional<Value> pb(bool b) { return Value::boolean(b); }
inline std::optional<Value> pe() { return Value::event(); }
inline std::optional<Value> absent() { return std::nullopt; }

// Canonical text form of a reaction list, for byte-for-byte comparison.
inline std::string serialize(const std::vector<Reaction>& rs) {
  std::ostringstream os;
  for (const auto& r : rs) {
    for (const auto& [name, v] : r) {
      os << name << "=";
      os << (v ? v->to_string() : "_");
      os << ";";
    }
    os << "\n";
  }
  return os.str();
}

// A compiled model plus helpers to drive it instant by instant. Internals
// stay observable by default so tests can read state signals directly.
struct Harness {
  trans::TranslateResult res;
  core::Program prog;

  explicit Harness(const ast::Model& m, bool expose = true)
      : res(trans::translate_model(m, {expose})), prog(core::flatten(res.process)) {}

  explicit Harness(const std::string& source, bool expose = true)
      : Harness(parse(source), expose) {}

  std::vector<Reaction> run(const std::vector<Reaction>& rows) const {
    return core::run(prog, rows);
  }
};

inline Reaction row(std::initializer_list<std::pair<std::string, std::optional<Value>>> init) {
  Reaction r;
  for (auto& [k, v] : init) r[k] = v;
  return r;
}

inline ast::Model wrap_automaton(ast::AutomatonDecl a, const std::string& block_name = "T") {
  auto b = std::make_shared<ast::BlockDecl>();
  b->name = block_name;
  b->items.emplace_back(std::move(a));
  ast::Model m;
  m.blocks.push_back(b);
  return m;
}

inline ast::Model wrap_action(const ast::ActionPtr& act) {
  ast::AutomatonDecl a;
  a.name = "m";
  ast::StateDecl s;
  s.name = "s0";
  s.initial = true;
  s.action = act;
  a.states.push_back(std::move(s));
  return wrap_automaton(std::move(a));
}

// Rebuilds a process with its equations permuted. Restriction names are
// globally unique after alpha-renaming, so flattening and re-wrapping the
// restrictions around the shuffled composition preserves the semantics.
inline core::ProcessPtr shuffle_process(const core::ProcessPtr& p, std::mt19937& rng) {
  core::Program prog = core::flatten(p);
  std::vector<core::ProcessPtr> eqs;
  for (const auto& q : prog.equations) eqs.push_back(core::eq_process(q));
  std::shuffle(eqs.begin(), eqs.end(), rng);
  core::ProcessPtr out = core::compose_all(eqs);
  core::NameSupply supply;
  std::vector<std::string> hidden = prog.hidden;
  std::shuffle(hidden.begin(), hidden.end(), rng);
  for (const auto& h : hidden) out = core::restrict_signal(out, h, supply);
  return out;
}

}  // namespace testutil
