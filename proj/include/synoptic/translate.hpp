#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "synoptic/ast.hpp"
#include "synoptic/core/process.hpp"
#include "synoptic/regions.hpp"
#include "synoptic/symbols.hpp"
#include "synoptic/validate.hpp"

namespace synoptic::trans {

// Guards are event-kind expressions locating a definition in time: present
// exactly at the instants where the guarded thing happens.
using Guard = core::ExprPtr;

// The static single assignment environment: variable -> defining expression,
// with the guard baked into the expression via `when`.
struct GuardedEnv {
  std::map<std::string, core::ExprPtr> defs;
};

// Left-biased three-case merge: entries only in one side are kept, an
// overlap becomes `left default right`.
inline GuardedEnv env_merge(const GuardedEnv& e1, const GuardedEnv& e2) {
  GuardedEnv out = e1;
  for (const auto& [var, expr] : e2.defs) {
    auto it = out.defs.find(var);
    if (it == out.defs.end()) out.defs[var] = expr;
    else it->second = core::merge(it->second, expr);
  }
  return out;
}

struct TranslateOptions {
  // Keep every internal signal observable (no restriction). Semantics are
  // unchanged; used by tests that inspect state and write wires.
  bool expose_internals = false;
};

struct ManifestEntry {
  std::string name;
  Kind kind;
};

struct Manifest {
  std::vector<ManifestEntry> inputs;
  std::vector<ManifestEntry> outputs;

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& e : inputs) os << "input " << e.name << " : " << kind_name(e.kind) << "\n";
    for (const auto& e : outputs) os << "output " << e.name << " : " << kind_name(e.kind) << "\n";
    return os.str();
  }
};

struct TranslateResult {
  core::ProcessPtr process;
  Manifest manifest;
  SymbolTable symbols;
  std::string top_trigger = "trigger";
  std::string top_reset = "reset";
};

struct ActionResult {
  core::ProcessPtr process;
  int next_label = 0;
  Guard exit_guard;
  GuardedEnv env;
};

// Syntactic input/output sets of one dataflow: inputs are read but never
// defined by a connection of the same dataflow.
inline std::set<std::string> outputs_of(const ast::DataflowDecl& d) {
  std::set<std::string> defs;
  for (const auto& c : d.connections) defs.insert(c.dst);
  return defs;
}

inline std::set<std::string> inputs_of(const ast::DataflowDecl& d) {
  std::set<std::string> defs = outputs_of(d);
  std::set<std::string> reads;
  for (const auto& c : d.connections) {
    reads.insert(c.src);
    if (c.tag == ast::Connection::Tag::Op) reads.insert(c.src2);
  }
  std::set<std::string> in;
  for (const auto& r : reads)
    if (!defs.count(r)) in.insert(r);
  return in;
}

constexpr int kMaxActionLabel = 1 << 16;

class Translator {
public:
  Translator(const SymbolTable& syms, TranslateOptions opts) : syms_(syms), opts_(opts) {}

  const SymbolTable& symbols() const { return syms_; }
  core::NameSupply& supply() { return supply_; }

  static std::string wire_name(const std::string& var) { return var + ".def"; }
  static std::string memory_name(const std::string& var) { return var + ".pre"; }

  Kind kind_of(const std::string& name) const {
    auto it = syms_.signals.find(name);
    if (it != syms_.signals.end()) return it->second.kind;
    auto jt = synth_kinds_.find(name);
    return jt != synth_kinds_.end() ? jt->second : Kind::Int;
  }

  void note_kind(const std::string& name, Kind k) { synth_kinds_[name] = k; }

  // Restriction, skipped when internals stay observable.
  core::ProcessPtr hide(core::ProcessPtr p, const std::vector<std::string>& names) {
    if (opts_.expose_internals) return p;
    for (const auto& n : names) p = core::restrict_signal(p, n, supply_);
    return p;
  }

  static Guard never() { return core::when(core::lit(Value::event()), core::lit(Value::boolean(false))); }

  // The definition of variable x at guard g: its environment entry when
  // bound; otherwise the memorized previous value `(x $ init 0) when g`
  // read off the variable's register, or the live signal for model inputs
  // and dataflow-defined signals.
  core::ExprPtr use(const GuardedEnv& env, const Guard& g, const std::string& var) const {
    auto it = env.defs.find(var);
    if (it != env.defs.end()) return it->second;
    auto info = syms_.signals.find(var);
    if (info != syms_.signals.end() && info->second.action_var)
      return core::when(core::ref(memory_name(var)), g);
    return core::when(core::ref(var), g);
  }

  // def_g(E): one equation per variable, storing its definition into the
  // variable's write wire at the guard g.
  core::ProcessPtr def(const Guard& g, const GuardedEnv& env) {
    std::vector<core::ProcessPtr> parts;
    for (const auto& [var, expr] : env.defs)
      parts.push_back(core::fun_eq(wire_name(var), core::when(expr, g)));
    return core::compose_all(parts);
  }

private:
  const SymbolTable& syms_;
  TranslateOptions opts_;
  core::NameSupply supply_;
  std::map<std::string, Kind> synth_kinds_;
};

// Per-action translation context: the label wire written by skip/end and
// the guard that resumes a given section at its state's pace.
struct ActionCtx {
  std::string label_wire;
  std::function<Guard(int)> section_guard;
  std::vector<std::string> scope;  // for operand resolution
  std::string path;                // absolute prefix for assign/emit targets
};

inline std::string qualified(const std::string& path, const std::string& name) {
  return path.empty() ? name : path + "." + name;
}

// Interpretation of timed sequential actions. Threads (label, guard, env)
// left to right and returns the continuation triple with the emitted
// process.
inline ActionResult translate_action(Translator& tr, const ast::ActionPtr& a, const ActionCtx& ctx,
                                     int label, Guard g, GuardedEnv env) {
  if (!a) return {core::empty_process(), label, std::move(g), std::move(env)};
  using Tag = ast::Action::Tag;
  switch (a->tag) {
    case Tag::Skip: {
      if (label + 1 >= kMaxActionLabel)
        throw TranslateError("LabelOverflow", "action exceeds the label bound", a->span);
      auto advance =
          core::fun_eq(ctx.label_wire, core::when(core::lit(Value::integer(label + 1)), g));
      auto flush = tr.def(g, env);
      return {core::compose(advance, flush), label + 1, ctx.section_guard(label + 1),
              GuardedEnv{}};
    }
    case Tag::End: {
      auto reset = core::fun_eq(ctx.label_wire, core::when(core::lit(Value::integer(0)), g));
      auto flush = tr.def(g, env);
      return {core::compose(reset, flush), 0, Translator::never(), GuardedEnv{}};
    }
    case Tag::Emit: {
      std::string x = qualified(ctx.path, a->target);
      auto e = core::fun_eq(x, core::when(core::lit(Value::event()), g));
      return {e, label, std::move(g), std::move(env)};
    }
    case Tag::Assign: {
      std::string x = qualified(ctx.path, a->target);
      std::string y = tr.symbols().resolve(ctx.scope, a->lhs);
      std::string z = tr.symbols().resolve(ctx.scope, a->rhs);
      core::ExprPtr e =
          core::when(core::apply(a->op, tr.use(env, g, y), tr.use(env, g, z)), g);
      env.defs[x] = e;
      return {core::empty_process(), label, std::move(g), std::move(env)};
    }
    case Tag::Seq: {
      // Flatten the chain iteratively; parsed sequences are right-nested
      // and may be long.
      std::vector<ast::ActionPtr> items;
      std::vector<ast::ActionPtr> work = {a};
      while (!work.empty()) {
        ast::ActionPtr cur = work.back();
        work.pop_back();
        if (cur && cur->tag == Tag::Seq) {
          work.push_back(cur->second);
          work.push_back(cur->first);
        } else {
          items.push_back(cur);
        }
      }
      ActionResult acc{core::empty_process(), label, std::move(g), std::move(env)};
      std::vector<core::ProcessPtr> parts;
      for (const auto& item : items) {
        ActionResult next =
            translate_action(tr, item, ctx, acc.next_label, acc.exit_guard, acc.env);
        parts.push_back(next.process);
        acc.next_label = next.next_label;
        acc.exit_guard = next.exit_guard;
        acc.env = std::move(next.env);
      }
      acc.process = core::compose_all(std::move(parts));
      return acc;
    }
    case Tag::If: {
      std::string c = tr.symbols().resolve(ctx.scope, a->cond);
      core::ExprPtr cond = tr.use(env, g, c);
      Guard g_then = core::when(g, cond);
      Guard g_else = core::when(g, core::negate(cond));
      ActionResult t = translate_action(tr, a->then_branch, ctx, label, g_then, env);
      ActionResult e = translate_action(tr, a->else_branch, ctx, t.next_label, g_else, env);
      // Phi-merge. A definition made inside a branch is only visible on
      // that branch's path, so redefined entries are gated by their
      // branch's exit guard (with the memory as the other path's value);
      // an entry untouched by both branches stays as inherited.
      ActionResult out;
      for (const auto& [var, expr] : t.env.defs) {
        auto in_e = e.env.defs.find(var);
        if (in_e != e.env.defs.end() && in_e->second == expr) {
          out.env.defs[var] = expr;
          continue;
        }
        core::ExprPtr va = expr;
        core::ExprPtr vb = in_e != e.env.defs.end()
                               ? in_e->second
                               : core::ref(Translator::memory_name(var));
        out.env.defs[var] =
            core::merge(core::when(va, t.exit_guard), core::when(vb, e.exit_guard));
      }
      for (const auto& [var, expr] : e.env.defs) {
        if (out.env.defs.count(var)) continue;
        core::ExprPtr va = core::ref(Translator::memory_name(var));
        out.env.defs[var] =
            core::merge(core::when(va, t.exit_guard), core::when(expr, e.exit_guard));
      }
      out.process = core::compose(t.process, e.process);
      out.next_label = e.next_label;
      out.exit_guard = core::merge(t.exit_guard, e.exit_guard);
      return out;
    }
  }
  return {core::empty_process(), label, std::move(g), std::move(env)};
}

// ⟦do A⟧: a stand-alone action re-run on every trigger. The fresh label
// signal s is synchronized to the trigger; `done` reports s = 0, i.e. the
// action finished its activation.
inline core::ProcessPtr translate_do(Translator& tr, const ast::ActionPtr& a,
                                     const std::string& done, const std::string& trigger,
                                     const std::vector<std::string>& scope = {},
                                     const std::string& path = "") {
  std::string s = done + ".s";
  std::string sd = done + ".s.pre";
  tr.note_kind(s, Kind::Int);
  tr.note_kind(sd, Kind::Int);
  tr.note_kind(done, Kind::Bool);
  ActionCtx ctx;
  ctx.label_wire = s;
  ctx.section_guard = [sd](int n) {
    return core::when(core::lit(Value::event()),
                      core::apply(BinOp::Eq, core::ref(sd), core::lit(Value::integer(n))));
  };
  ctx.scope = scope;
  ctx.path = path;

  ast::ActionPtr body = a ? ast::make_seq(a, ast::make_end()) : ast::make_end();
  ActionResult res = translate_action(tr, body, ctx, 0, ctx.section_guard(0), GuardedEnv{});

  std::vector<core::ProcessPtr> parts;
  parts.push_back(core::sync_eq(s, trigger));
  parts.push_back(core::delay_eq(sd, s, Value::integer(0)));
  parts.push_back(res.process);
  parts.push_back(core::fun_eq(done, core::apply(BinOp::Eq, core::ref(s), core::lit(Value::integer(0)))));
  return tr.hide(core::compose_all(parts), {s, sd});
}

// Fig. 2: connections composed, inputs synchronized to the parent trigger,
// delayed flows reset to their initial value by the parent reset.
inline core::ProcessPtr translate_dataflow(Translator& tr, const ast::DataflowDecl& d,
                                           const std::vector<std::string>& scope,
                                           const std::string& reset, const std::string& trigger) {
  std::string path = SymbolTable::join(scope, scope.size());
  std::vector<core::ProcessPtr> parts;
  std::vector<std::string> hidden;

  std::set<std::string> defs;
  for (const auto& c : d.connections) defs.insert(qualified(path, c.dst));
  std::set<std::string> ins;
  for (const auto& c : d.connections) {
    ins.insert(tr.symbols().resolve(scope, c.src));
    if (c.tag == ast::Connection::Tag::Op) ins.insert(tr.symbols().resolve(scope, c.src2));
  }
  for (const auto& x : ins)
    if (!defs.count(x)) parts.push_back(core::sync_eq(x, trigger));

  for (const auto& c : d.connections) {
    std::string dst = qualified(path, c.dst);
    std::string src = tr.symbols().resolve(scope, c.src);
    switch (c.tag) {
      case ast::Connection::Tag::Delay: {
        std::string mem = dst + ".pre";
        tr.note_kind(mem, c.init.kind());
        parts.push_back(core::delay_eq(mem, src, c.init));
        parts.push_back(core::fun_eq(
            dst, core::merge(core::when(core::lit(c.init), core::ref(reset)), core::ref(mem))));
        parts.push_back(core::sync_eq(dst, src));
        hidden.push_back(mem);
        break;
      }
      case ast::Connection::Tag::Op: {
        std::string src2 = tr.symbols().resolve(scope, c.src2);
        parts.push_back(core::fun_eq(dst, core::apply(c.op, core::ref(src), core::ref(src2))));
        break;
      }
      case ast::Connection::Tag::Event:
        parts.push_back(core::fun_eq(dst, core::event_of(core::ref(src))));
        break;
    }
  }
  return tr.hide(core::compose_all(parts), hidden);
}

namespace detail {

// `true` exactly when the given event is absent; total otherwise.
inline core::ExprPtr unless_event(const core::ExprPtr& ev) {
  return core::merge(core::when(core::lit(Value::boolean(false)), ev),
                     core::lit(Value::boolean(true)));
}

struct StateTranslation {
  Guard completion;                                // h_i
  GuardedEnv env;                                  // F_i
  std::map<std::size_t, core::ExprPtr> fire;       // transition index -> entry event
};

}  // namespace detail

// Fig. 6: one state signal s per automaton, synchronized to the trigger,
// reset to the initial state index; every state interpreted concurrently
// with its own label signal, entry guard fed by immediate predecessors and
// next-state claim merged into s'.
inline core::ProcessPtr translate_automaton(Translator& tr, const ast::AutomatonDecl& a,
                                            const std::vector<std::string>& scope,
                                            const std::string& reset, const std::string& trigger) {
  std::string path = SymbolTable::join(scope, scope.size());
  std::string q = qualified(path, a.name);
  RegionPartition regions = compute_regions(a);

  // State indices: 0 is the declared initial state, others keep declaration
  // order.
  std::map<std::string, int> index;
  {
    int next = 1;
    for (const auto& s : a.states)
      if (s.initial) index[s.name] = 0;
    for (const auto& s : a.states)
      if (!index.count(s.name)) index[s.name] = next++;
  }
  std::map<std::string, const ast::StateDecl*> by_name;
  for (const auto& s : a.states) by_name[s.name] = &s;

  // Global processing order: regions by id, states in region-topological
  // order. Claims are merged in the reverse of this order so a fired
  // immediate successor overrides its predecessors.
  std::vector<std::string> order;
  for (const auto& region : regions.order)
    for (const auto& name : region) order.push_back(name);
  std::map<std::string, std::size_t> topo_pos;
  for (std::size_t i = 0; i < order.size(); ++i) topo_pos[order[i]] = i;

  std::string s = q + ".s";
  std::string snext = q + ".s_next";
  std::string sd = q + ".s_next.pre";
  for (const auto& name : {s, snext, sd}) tr.note_kind(name, Kind::Int);

  std::vector<core::ProcessPtr> parts;
  std::vector<std::string> hidden = {s, snext, sd};
  parts.push_back(core::sync_eq(trigger, s));
  parts.push_back(core::sync_eq(snext, s));
  parts.push_back(core::delay_eq(sd, snext, Value::integer(0)));
  parts.push_back(core::fun_eq(
      s, core::merge(core::when(core::lit(Value::integer(0)), core::ref(reset)), core::ref(sd))));

  std::map<std::string, detail::StateTranslation> done;

  for (const std::string& state_name : order) {
    const ast::StateDecl& st = *by_name.at(state_name);
    int i = index.at(state_name);
    std::string qs = q + "." + state_name;
    std::string s_i = qs + ".s";
    std::string reg = qs + ".reg";
    std::string regd = qs + ".reg.pre";
    std::string active = qs + ".active";
    std::string base = qs + ".base";
    std::string claim = qs + ".claim";
    for (const auto& n : {s_i, reg, regd, base, claim}) tr.note_kind(n, Kind::Int);
    tr.note_kind(active, Kind::Event);
    for (const auto& n : {s_i, reg, regd, active, base, claim}) hidden.push_back(n);

    parts.push_back(core::fun_eq(
        active, core::event_of(core::apply(BinOp::Eq, core::ref(s), core::lit(Value::integer(i))))));
    parts.push_back(core::delay_eq(regd, reg, Value::integer(0)));
    parts.push_back(core::fun_eq(reg, core::merge(core::ref(s_i), core::ref(regd))));
    parts.push_back(core::sync_eq(reg, trigger));
    parts.push_back(core::fun_eq(base, core::when(core::ref(regd), core::ref(active))));

    // Entry guard: resume at the trigger when the previous label was 0, or
    // receive control from an immediate predecessor in the same region.
    Guard g_entry = core::when(
        core::lit(Value::event()),
        core::apply(BinOp::Eq, core::ref(base), core::lit(Value::integer(0))));
    GuardedEnv env_in;
    {
      // Predecessor envs merge in region-topological order.
      std::vector<std::pair<std::size_t, std::size_t>> preds;  // (topo pos, transition idx)
      for (std::size_t k = 0; k < a.transitions.size(); ++k) {
        const auto& t = a.transitions[k];
        if (!t.delayed && t.to == state_name) preds.push_back({topo_pos.at(t.from), k});
      }
      std::sort(preds.begin(), preds.end());
      for (const auto& [pos, k] : preds) {
        const auto& t = a.transitions[k];
        g_entry = core::merge(g_entry, done.at(t.from).fire.at(k));
        env_in = env_merge(env_in, done.at(t.from).env);
      }
    }

    ActionCtx actx;
    actx.label_wire = s_i;
    actx.section_guard = [base](int n) {
      return core::when(core::lit(Value::event()),
                        core::apply(BinOp::Eq, core::ref(base), core::lit(Value::integer(n))));
    };
    actx.scope = scope;
    actx.path = path;
    ActionResult res = translate_action(tr, st.action, actx, 0, g_entry, env_in);
    parts.push_back(res.process);
    Guard h = res.exit_guard;
    // Close the action: the label returns to 0 when the body completes.
    parts.push_back(core::fun_eq(s_i, core::when(core::lit(Value::integer(0)), h)));

    detail::StateTranslation result;
    result.completion = h;
    result.env = res.env;

    // Immediate out-edges fire in declaration order: a transition is taken
    // when its guard is true and no earlier one fired.
    core::ExprPtr any_taken;  // event
    for (std::size_t k = 0; k < a.transitions.size(); ++k) {
      const auto& t = a.transitions[k];
      if (t.delayed || t.from != state_name) continue;
      std::string gvar = tr.symbols().resolve(scope, t.guard);
      core::ExprPtr enabled = core::when(core::lit(Value::event()), tr.use(res.env, h, gvar));
      core::ExprPtr fire =
          any_taken ? core::when(enabled, detail::unless_event(any_taken)) : enabled;
      result.fire[k] = fire;
      any_taken = any_taken ? core::merge(any_taken, enabled) : enabled;
    }

    // Completion flush: store F_i unless an immediate transition moved on
    // (the successor flushes the merged environment instead).
    Guard flushg = any_taken ? core::when(h, detail::unless_event(any_taken)) : h;
    parts.push_back(tr.def(flushg, res.env));

    // Next-state claim: keep the unfinished state, else a delayed target,
    // else stay here.
    core::ExprPtr claim_expr = core::when(
        core::lit(Value::integer(i)),
        core::apply(BinOp::Ne, core::ref(s_i), core::lit(Value::integer(0))));
    for (std::size_t k = 0; k < a.transitions.size(); ++k) {
      const auto& t = a.transitions[k];
      if (!t.delayed || t.from != state_name) continue;
      std::string gvar = tr.symbols().resolve(scope, t.guard);
      Guard g_ij = core::when(flushg, tr.use(res.env, h, gvar));
      claim_expr = core::merge(
          claim_expr, core::when(core::lit(Value::integer(index.at(t.to))), g_ij));
    }
    claim_expr = core::merge(claim_expr, core::when(core::lit(Value::integer(i)), flushg));
    parts.push_back(core::fun_eq(claim, claim_expr));

    done[state_name] = std::move(result);
  }

  core::ExprPtr merged;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    core::ExprPtr c = core::ref(q + "." + *it + ".claim");
    merged = merged ? core::merge(merged, c) : c;
  }
  parts.push_back(core::fun_eq(snext, merged));

  return tr.hide(core::compose_all(parts), hidden);
}

// §3.2: a block introduces its trigger and reset, aliases them to the
// parent's unless the model routes them through explicit connections, and
// composes its children.
inline core::ProcessPtr translate_block(Translator& tr, const ast::BlockDecl& b,
                                        std::vector<std::string> scope, const std::string& reset,
                                        const std::string& trigger) {
  scope.push_back(b.name);
  std::string path = SymbolTable::join(scope, scope.size());
  std::string bt = path + ".trigger";
  std::string br = path + ".reset";

  std::vector<core::ProcessPtr> parts;
  std::vector<std::string> hidden;
  if (!tr.symbols().connection_dsts.count(bt))
    parts.push_back(core::fun_eq(bt, core::ref(trigger)));
  if (!tr.symbols().connection_dsts.count(br))
    parts.push_back(core::fun_eq(br, core::ref(reset)));

  // Registers for the variables owned by this block: total at the block's
  // trigger, updated by the write wire, carrying their previous value
  // otherwise.
  for (const auto& [name, info] : tr.symbols().signals) {
    if (!info.action_var || info.owner_block != path) continue;
    std::string wire = Translator::wire_name(name);
    std::string mem = Translator::memory_name(name);
    tr.note_kind(wire, info.kind);
    tr.note_kind(mem, info.kind);
    parts.push_back(core::delay_eq(mem, name, Value::zero_of(info.kind)));
    parts.push_back(core::fun_eq(name, core::merge(core::ref(wire), core::ref(mem))));
    parts.push_back(core::sync_eq(name, bt));
    hidden.push_back(wire);
    hidden.push_back(mem);
  }

  for (const auto& item : b.items) {
    if (std::holds_alternative<ast::BlockPtr>(item))
      parts.push_back(translate_block(tr, *std::get<ast::BlockPtr>(item), scope, br, bt));
    else if (std::holds_alternative<ast::DataflowDecl>(item))
      parts.push_back(translate_dataflow(tr, std::get<ast::DataflowDecl>(item), scope, br, bt));
    else
      parts.push_back(translate_automaton(tr, std::get<ast::AutomatonDecl>(item), scope, br, bt));
  }
  return tr.hide(core::compose_all(parts), hidden);
}

// Whole-model translation against the synthetic top-level trigger/reset
// inputs, plus the interface manifest.
inline TranslateResult translate_model(const ast::Model& m, TranslateOptions opts = {}) {
  {
    auto diags = validate(m);
    if (!diags.empty())
      throw TranslateError(diags.front().code, diags.front().message, diags.front().span);
  }
  SymbolTable syms = analyze(m);
  Translator tr(syms, opts);

  std::vector<core::ProcessPtr> parts;
  for (const auto& b : m.blocks) parts.push_back(translate_block(tr, *b, {}, "reset", "trigger"));

  TranslateResult out;
  out.process = core::compose_all(parts);
  out.symbols = syms;

  core::Program prog = core::flatten(out.process);
  for (const auto& name : prog.inputs)
    out.manifest.inputs.push_back({name, tr.kind_of(name)});
  for (const auto& name : prog.visible)
    if (!prog.inputs.count(name)) out.manifest.outputs.push_back({name, tr.kind_of(name)});
  return out;
}

}  // namespace synoptic::trans
