#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "synoptic/ast.hpp"
#include "synoptic/diag.hpp"

namespace synoptic {

struct SymbolInfo {
  Kind kind = Kind::Int;
  bool kind_known = false;
  bool is_input = false;          // read somewhere, defined nowhere
  bool action_var = false;        // assigned by an action (backed by a register)
  bool dataflow_defined = false;  // destination of a connection
  bool emitted = false;
  bool implicit = false;  // a block's trigger/reset
  std::string owner_block;  // absolute path of the block owning the register
  Span span;                // first mention
};

// Name resolution and kind inference over a parsed model. Absolute signal
// names are dotted paths; every block contributes a prefix. References
// resolve innermost-out against declared names; what never resolves is
// classified as a model input in the referencing scope.
struct SymbolTable {
  std::map<std::string, SymbolInfo> signals;
  std::set<std::string> block_paths;
  std::set<std::string> connection_dsts;  // absolute, for trigger routing checks
  std::vector<Diagnostic> diagnostics;

  std::string resolve(const std::vector<std::string>& scope, const std::string& name) const {
    for (std::size_t k = scope.size(); k > 0; --k) {
      std::string cand = join(scope, k) + "." + name;
      if (signals.count(cand)) return cand;
    }
    if (signals.count(name)) return name;
    return join(scope, scope.size()) + (scope.empty() ? "" : ".") + name;
  }

  Kind kind_of(const std::string& absolute) const {
    auto it = signals.find(absolute);
    return it == signals.end() ? Kind::Int : it->second.kind;
  }

  static std::string join(const std::vector<std::string>& scope, std::size_t k) {
    std::string out;
    for (std::size_t i = 0; i < k; ++i) {
      if (i) out += ".";
      out += scope[i];
    }
    return out;
  }
};

namespace detail {

class Analyzer {
public:
  explicit Analyzer(const ast::Model& m) : model_(m) {}

  SymbolTable run() {
    table_.signals["trigger"] = input_info(Kind::Event);
    table_.signals["reset"] = input_info(Kind::Event);
    for (const auto& b : model_.blocks) collect(*b, {});
    for (const auto& b : model_.blocks) references(*b, {});
    infer();
    return std::move(table_);
  }

private:
  const ast::Model& model_;
  SymbolTable table_;

  struct PendingSameKind {
    std::string a, b;
    Span span;
  };
  std::vector<std::pair<std::string, std::pair<Kind, Span>>> kind_constraints_;
  std::vector<PendingSameKind> same_kind_;
  std::vector<std::pair<std::string, Span>> not_int_;  // event-conversion sources

  static SymbolInfo input_info(Kind k) {
    SymbolInfo info;
    info.kind = k;
    info.kind_known = true;
    info.is_input = true;
    info.implicit = true;
    return info;
  }

  SymbolInfo& declare(const std::string& absolute, Span sp) {
    auto [it, inserted] = table_.signals.try_emplace(absolute);
    if (inserted) it->second.span = sp;
    return it->second;
  }

  void collect(const ast::BlockDecl& b, std::vector<std::string> scope) {
    scope.push_back(b.name);
    std::string path = SymbolTable::join(scope, scope.size());
    table_.block_paths.insert(path);
    for (const char* sig : {".trigger", ".reset"}) {
      SymbolInfo& info = declare(path + sig, b.span);
      info.implicit = true;
      constrain(path + sig, Kind::Event, b.span);
    }
    for (const auto& item : b.items) {
      if (std::holds_alternative<ast::BlockPtr>(item)) {
        collect(*std::get<ast::BlockPtr>(item), scope);
      } else if (std::holds_alternative<ast::DataflowDecl>(item)) {
        for (const auto& c : std::get<ast::DataflowDecl>(item).connections) {
          std::string dst = path + "." + c.dst;
          SymbolInfo& info = declare(dst, c.span);
          if (info.dataflow_defined || info.action_var || info.emitted)
            table_.diagnostics.push_back(
                {"DuplicateDest", "signal '" + dst + "' is defined more than once", c.span});
          info.dataflow_defined = true;
          table_.connection_dsts.insert(dst);
        }
      } else {
        const auto& a = std::get<ast::AutomatonDecl>(item);
        for (const auto& s : a.states) collect_action(s.action, path);
      }
    }
  }

  // Iterative walk: parsed sequences may be arbitrarily long.
  template <typename Fn>
  static void for_each_stmt(const ast::ActionPtr& root, Fn&& fn) {
    if (!root) return;
    std::vector<const ast::Action*> work = {root.get()};
    while (!work.empty()) {
      const ast::Action* a = work.back();
      work.pop_back();
      if (!a) continue;
      switch (a->tag) {
        case ast::Action::Tag::Seq:
          work.push_back(a->second.get());
          work.push_back(a->first.get());
          continue;
        case ast::Action::Tag::If:
          work.push_back(a->else_branch.get());
          work.push_back(a->then_branch.get());
          fn(*a);
          continue;
        default:
          fn(*a);
          continue;
      }
    }
  }

  void collect_action(const ast::ActionPtr& root, const std::string& path) {
    for_each_stmt(root, [&](const ast::Action& a) {
      if (a.tag == ast::Action::Tag::Assign) {
        std::string dst = path + "." + a.target;
        SymbolInfo& info = declare(dst, a.span);
        if (info.dataflow_defined || info.emitted)
          table_.diagnostics.push_back(
              {"DuplicateDest", "signal '" + dst + "' is defined more than once", a.span});
        info.action_var = true;
        info.owner_block = path;
      } else if (a.tag == ast::Action::Tag::Emit) {
        std::string dst = path + "." + a.target;
        SymbolInfo& info = declare(dst, a.span);
        if (info.dataflow_defined || info.action_var)
          table_.diagnostics.push_back(
              {"DuplicateDest", "signal '" + dst + "' is defined more than once", a.span});
        info.emitted = true;
        constrain(dst, Kind::Event, a.span);
      }
    });
  }

  std::string touch(const std::vector<std::string>& scope, const std::string& name, Span sp) {
    std::string abs = table_.resolve(scope, name);
    auto it = table_.signals.find(abs);
    if (it == table_.signals.end()) {
      // A plain unresolved name is a model input; a dotted one claims a
      // path that does not exist.
      if (name.find('.') != std::string::npos)
        table_.diagnostics.push_back(
            {"UnresolvedName", "'" + name + "' does not resolve to any declaration", sp});
      SymbolInfo& info = declare(abs, sp);
      info.is_input = true;
    }
    return abs;
  }

  void constrain(const std::string& abs, Kind k, Span sp) {
    kind_constraints_.push_back({abs, {k, sp}});
  }

  void op_constraints(const std::string& x, const std::string& y, const std::string& z, BinOp op,
                      Span sp) {
    switch (op) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul:
        constrain(x, Kind::Int, sp);
        constrain(y, Kind::Int, sp);
        constrain(z, Kind::Int, sp);
        return;
      case BinOp::Lt:
      case BinOp::Le:
        constrain(x, Kind::Bool, sp);
        constrain(y, Kind::Int, sp);
        constrain(z, Kind::Int, sp);
        return;
      case BinOp::Eq:
      case BinOp::Ne:
        constrain(x, Kind::Bool, sp);
        same_kind_.push_back({y, z, sp});
        return;
      case BinOp::And:
      case BinOp::Or:
        constrain(x, Kind::Bool, sp);
        constrain(y, Kind::Bool, sp);
        constrain(z, Kind::Bool, sp);
        return;
    }
  }

  void references(const ast::BlockDecl& b, std::vector<std::string> scope) {
    scope.push_back(b.name);
    std::string path = SymbolTable::join(scope, scope.size());
    for (const auto& item : b.items) {
      if (std::holds_alternative<ast::BlockPtr>(item)) {
        references(*std::get<ast::BlockPtr>(item), scope);
      } else if (std::holds_alternative<ast::DataflowDecl>(item)) {
        for (const auto& c : std::get<ast::DataflowDecl>(item).connections) {
          std::string dst = path + "." + c.dst;
          switch (c.tag) {
            case ast::Connection::Tag::Delay: {
              std::string src = touch(scope, c.src, c.span);
              constrain(dst, c.init.kind(), c.span);
              constrain(src, c.init.kind(), c.span);
              break;
            }
            case ast::Connection::Tag::Op: {
              std::string y = touch(scope, c.src, c.span);
              std::string z = touch(scope, c.src2, c.span);
              op_constraints(dst, y, z, c.op, c.span);
              break;
            }
            case ast::Connection::Tag::Event: {
              std::string src = touch(scope, c.src, c.span);
              constrain(dst, Kind::Event, c.span);
              not_int_.push_back({src, c.span});
              break;
            }
          }
        }
      } else {
        const auto& a = std::get<ast::AutomatonDecl>(item);
        for (const auto& s : a.states) action_references(s.action, scope, path);
        for (const auto& t : a.transitions) {
          std::string g = touch(scope, t.guard, t.span);
          constrain(g, Kind::Bool, t.span);
        }
      }
    }
  }

  void action_references(const ast::ActionPtr& root, const std::vector<std::string>& scope,
                         const std::string& path) {
    for_each_stmt(root, [&](const ast::Action& a) {
      if (a.tag == ast::Action::Tag::Assign) {
        std::string x = path + "." + a.target;
        std::string y = touch(scope, a.lhs, a.span);
        std::string z = touch(scope, a.rhs, a.span);
        op_constraints(x, y, z, a.op, a.span);
      } else if (a.tag == ast::Action::Tag::If) {
        std::string c = touch(scope, a.cond, a.span);
        constrain(c, Kind::Bool, a.span);
      }
    });
  }

  void set_kind(const std::string& abs, Kind k, Span sp) {
    SymbolInfo& info = table_.signals.at(abs);
    if (info.kind_known) {
      if (info.kind != k)
        table_.diagnostics.push_back({"KindMismatch",
                                      "signal '" + abs + "' used both as " +
                                          kind_name(info.kind) + " and as " + kind_name(k),
                                      sp});
      return;
    }
    info.kind = k;
    info.kind_known = true;
  }

  void infer() {
    for (const auto& [abs, c] : kind_constraints_) set_kind(abs, c.first, c.second);
    // Equality operands share a kind; settle once either side is known.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& p : same_kind_) {
        const SymbolInfo& a = table_.signals.at(p.a);
        const SymbolInfo& b = table_.signals.at(p.b);
        if (a.kind_known && !b.kind_known) set_kind(p.b, a.kind, p.span);
        else if (b.kind_known && !a.kind_known) set_kind(p.a, b.kind, p.span);
        else if (a.kind_known && b.kind_known && a.kind != b.kind)
          table_.diagnostics.push_back({"KindMismatch",
                                        "compared signals '" + p.a + "' and '" + p.b +
                                            "' have different kinds",
                                        p.span});
      }
    }
    for (const auto& p : same_kind_) {
      if (!table_.signals.at(p.a).kind_known) set_kind(p.a, Kind::Int, p.span);
      if (!table_.signals.at(p.b).kind_known) set_kind(p.b, Kind::Int, p.span);
    }
    // Sources of event conversions default to event and must not be ints.
    for (const auto& [abs, sp] : not_int_) {
      SymbolInfo& info = table_.signals.at(abs);
      if (!info.kind_known) {
        info.kind = Kind::Event;
        info.kind_known = true;
      } else if (info.kind == Kind::Int) {
        table_.diagnostics.push_back(
            {"KindMismatch", "integer signal '" + abs + "' used as an event source", sp});
      }
    }
    for (auto& [abs, info] : table_.signals)
      if (!info.kind_known) {
        info.kind = Kind::Int;
        info.kind_known = true;
      }
  }
};

}  // namespace detail

inline SymbolTable analyze(const ast::Model& m) { return detail::Analyzer(m).run(); }

}  // namespace synoptic
