#pragma once

#include <string>
#include <vector>

#include "synoptic/ast.hpp"
#include "synoptic/regions.hpp"
#include "synoptic/symbols.hpp"

namespace synoptic {

namespace detail {

inline void validate_block(const ast::BlockDecl& b, std::vector<std::string> scope,
                           const SymbolTable& syms, std::vector<Diagnostic>& diags) {
  scope.push_back(b.name);
  for (const auto& item : b.items) {
    if (std::holds_alternative<ast::BlockPtr>(item)) {
      validate_block(*std::get<ast::BlockPtr>(item), scope, syms, diags);
      continue;
    }
    if (!std::holds_alternative<ast::AutomatonDecl>(item)) continue;
    const auto& a = std::get<ast::AutomatonDecl>(item);

    int initials = 0;
    for (const auto& s : a.states)
      if (s.initial) ++initials;
    if (initials == 0)
      diags.push_back({"NoInitial", "automaton '" + a.name + "' has no initial state", a.span});
    if (initials > 1)
      diags.push_back(
          {"MultipleInitial", "automaton '" + a.name + "' has several initial states", a.span});

    try {
      compute_regions(a);
    } catch (const TranslateError& e) {
      diags.push_back({e.code, e.what(), e.span});
    }

    for (const auto& t : a.transitions) {
      std::string g = syms.resolve(scope, t.guard);
      if (syms.kind_of(g) != Kind::Bool)
        diags.push_back({"UnresolvedGuard",
                         "guard '" + t.guard + "' does not resolve to a boolean variable",
                         t.span});
    }
  }
}

}  // namespace detail

// Structural checks beyond the grammar: one initial state per automaton,
// resolvable names and kinds, single-definition destinations, and acyclic
// immediate-transition regions. Returns an empty list for a valid model.
inline std::vector<Diagnostic> validate(const ast::Model& m) {
  SymbolTable syms = analyze(m);
  std::vector<Diagnostic> diags = syms.diagnostics;
  for (const auto& b : m.blocks) detail::validate_block(*b, {}, syms, diags);
  return diags;
}

}  // namespace synoptic
