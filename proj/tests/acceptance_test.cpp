// Acceptance suite: every criterion prints one pass/fail line. All
// tolerances are exact; the whole suite runs well under a minute.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "synoptic/parser.hpp"
#include "synoptic/pretty.hpp"
#include "synoptic/validate.hpp"
#include "test_util.hpp"

using namespace synoptic;
using namespace testutil;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<fs::path> corpus_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(CORPUS_DIR))
    if (e.path().extension() == ".syn") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

class AcceptanceTest : public ::testing::Test {
protected:
  int number = 0;
  std::string label;

  void TearDown() override {
    std::cout << (HasFailure() ? "[FAIL]" : "[PASS]") << " criterion " << number << ": " << label
              << "\n";
  }
};

}  // namespace

// ---------------------------------------------------------------------
// 1. Delay recurrence against the independent oracle, 200 random traces.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion1_DelayRecurrence) {
  number = 1;
  label = "delay recurrence matches the reset-aware oracle on 200 random traces";
  std::mt19937 rng(1001);
  for (int iter = 0; iter < 200; ++iter) {
    SCOPED_TRACE(iter);
    std::int64_t init = static_cast<std::int64_t>(rng() % 11) - 5;
    std::ostringstream src;
    src << "block B { dataflow D { data y $ init " << init << " -> x } }";
    Harness h(src.str(), false);
    int len = 1 + static_cast<int>(rng() % 20);
    std::vector<core::Reaction> rows;
    std::vector<std::optional<std::int64_t>> ys;
    std::vector<bool> resets;
    for (int i = 0; i < len; ++i) {
      bool tick = rng() % 4 != 0;
      bool rst = tick && rng() % 3 == 0;
      std::optional<std::int64_t> y =
          tick ? std::optional<std::int64_t>(static_cast<std::int64_t>(rng() % 100) - 50)
               : std::nullopt;
      rows.push_back(row({{"trigger", tick ? pe() : absent()},
                          {"reset", rst ? pe() : absent()},
                          {"B.y", y ? pi(*y) : absent()}}));
      ys.push_back(y);
      resets.push_back(rst);
    }
    auto out = h.run(rows);
    auto expect = oracles::delay_flow_oracle(init, ys, resets);
    for (int i = 0; i < len; ++i)
      ASSERT_EQ(out[i].at("B.x"), expect[i] ? pi(*expect[i]) : absent()) << "instant " << i;
  }
}

// ---------------------------------------------------------------------
// 2. Emission coalescing: exact event counts.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion2_EmissionCoalescing) {
  number = 2;
  label = "x!;x! emits once per activation, x!;skip;x! twice over two triggers";
  std::vector<core::Reaction> rows(6, row({{"trigger", pe()}}));

  Harness single(wrap_action(ast::make_emit("x")), false);
  Harness twice(wrap_action(ast::make_seq(ast::make_emit("x"), ast::make_emit("x"))), false);
  auto out_single = single.run(rows);
  auto out_twice = twice.run(rows);
  // identical traces: the second emission adds nothing
  ASSERT_EQ(serialize(out_single), serialize(out_twice));
  int events = 0;
  for (const auto& r : out_twice)
    if (r.at("T.x")) ++events;
  ASSERT_EQ(events, 6);  // one activation per trigger, exactly one event each

  Harness spread(
      wrap_action(ast::make_seq(ast::make_emit("x"),
                                ast::make_seq(ast::make_skip(), ast::make_emit("x")))),
      true);
  auto out_spread = spread.run(rows);
  for (int k = 0; k < 3; ++k) {
    // each activation spans triggers 2k and 2k+1 and emits at both
    ASSERT_EQ(out_spread[2 * k].at("T.x"), pe());
    ASSERT_EQ(out_spread[2 * k + 1].at("T.x"), pe());
    ASSERT_EQ(out_spread[2 * k].at("T.m.s0.s"), pi(1));      // mid-action
    ASSERT_EQ(out_spread[2 * k + 1].at("T.m.s0.s"), pi(0));  // completed
  }
}

// ---------------------------------------------------------------------
// 3. SSA guarantee and sequential equivalence on 100 random actions.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion3_SsaGuarantee) {
  number = 3;
  label = "SSA: one definition per variable per instant, end values match the sequential oracle";
  std::mt19937 rng(3003);
  oracles::ActionVars vars;
  for (int iter = 0; iter < 100; ++iter) {
    SCOPED_TRACE(iter);
    oracles::ActionGen gen(rng, vars);
    ast::ActionPtr act = gen.gen(10);
    Harness h(wrap_action(act));

    core::Reaction inputs;
    inputs["trigger"] = Value::event();
    oracles::SeqEval oracle;
    auto feed_int = [&](const std::string& name) {
      std::int64_t v = static_cast<std::int64_t>(rng() % 20) - 10;
      if (h.prog.inputs.count("T." + name)) {
        inputs["T." + name] = Value::integer(v);
        oracle.inputs[name] = Value::integer(v);
      }
    };
    auto feed_bool = [&](const std::string& name) {
      bool v = rng() % 2 == 0;
      if (h.prog.inputs.count("T." + name)) {
        inputs["T." + name] = Value::boolean(v);
        oracle.inputs[name] = Value::boolean(v);
      }
    };
    for (const auto& n : vars.int_inputs) feed_int(n);
    for (const auto& n : vars.int_vars) feed_int(n);
    for (const auto& n : vars.bool_inputs) feed_bool(n);
    for (const auto& n : vars.bool_vars) feed_bool(n);
    oracle.eval(act);

    core::StepStats stats;
    core::DelayState st = core::initial_state(h.prog);
    core::Reaction reaction;
    ASSERT_NO_THROW(std::tie(reaction, st) = core::step(h.prog, st, inputs, &stats, 0));

    for (const auto& [name, count] : stats.present_defs)
      if (name.size() > 4 && name.substr(name.size() - 4) == ".def") {
        ASSERT_LE(count, 1) << "variable wire " << name << " written twice in one instant";
      }

    auto check_var = [&](const std::string& local, Kind k) {
      if (h.prog.inputs.count("T." + local)) return;
      auto slot = reaction.find("T." + local);
      if (slot == reaction.end()) return;
      Value expected = Value::zero_of(k);
      auto it = oracle.store.find(local);
      if (it != oracle.store.end()) expected = it->second;
      ASSERT_TRUE(slot->second.has_value()) << local;
      ASSERT_EQ(*slot->second, expected) << local;
    };
    for (const auto& v : vars.int_vars) check_var(v, Kind::Int);
    for (const auto& v : vars.bool_vars) check_var(v, Kind::Bool);
  }
}

// ---------------------------------------------------------------------
// 4. Automaton timing on hand-built 5-instant traces.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion4_AutomatonTiming) {
  number = 4;
  label = "delayed transitions land one trigger later; immediate effects are same-instant";
  {
    Harness h(
        "block T { automaton m {"
        "  initial state s0 { } state s1 { do { y! } }"
        "  s0 ->> s1 on c"
        "} }");
    auto tick = [&](bool c) { return row({{"trigger", pe()}, {"T.c", pb(c)}}); };
    auto out = h.run({tick(false), tick(true), tick(false), tick(false), tick(false)});
    std::vector<std::int64_t> expected_states = {0, 0, 1, 1, 1};
    for (int i = 0; i < 5; ++i)
      ASSERT_EQ(out[i].at("T.m.s"), pi(expected_states[i])) << "instant " << i;
    ASSERT_EQ(out[1].at("T.y"), absent());  // guard instant: not yet
    ASSERT_EQ(out[2].at("T.y"), pe());      // exactly one trigger later
  }
  {
    Harness h(
        "block T { automaton m {"
        "  initial state s0 { do { c = a < b } }"
        "  state s1 { do { y!; w = a + b } }"
        "  s0 -> s1 on c"
        "} }");
    auto tick = [&](std::int64_t a) {
      return row({{"trigger", pe()}, {"T.a", pi(a)}, {"T.b", pi(5)}});
    };
    auto out = h.run({tick(2), tick(9), tick(9), tick(9), tick(9)});
    // instant 0: s0 runs, chains to s1, both effects land this instant
    ASSERT_EQ(out[0].at("T.m.s"), pi(0));
    ASSERT_EQ(out[0].at("T.y"), pe());
    ASSERT_EQ(out[0].at("T.w"), pi(7));
  }
}

// ---------------------------------------------------------------------
// 5. Stutter and reset on randomized automata.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion5_StutterAndReset) {
  number = 5;
  label = "unfinished actions hold the state; reset instants force state 0";
  std::mt19937 rng(5005);
  oracles::ActionVars vars;
  for (int iter = 0; iter < 60; ++iter) {
    SCOPED_TRACE(iter);
    oracles::ActionGen gen(rng, vars);
    int n_states = 2 + static_cast<int>(rng() % 3);
    ast::AutomatonDecl a;
    a.name = "m";
    for (int i = 0; i < n_states; ++i) {
      ast::StateDecl s;
      s.name = "st" + std::to_string(i);
      s.initial = i == 0;
      switch (rng() % 3) {
        case 0: break;
        case 1: s.action = gen.gen(3); break;
        case 2:
          s.action = ast::make_seq(gen.gen(2), ast::make_seq(ast::make_skip(), gen.gen(2)));
          break;
      }
      a.states.push_back(std::move(s));
    }
    int n_trans = static_cast<int>(rng() % (2 * n_states));
    for (int i = 0; i < n_trans; ++i) {
      ast::TransitionDecl t;
      t.from = "st" + std::to_string(rng() % n_states);
      t.to = "st" + std::to_string(rng() % n_states);
      t.guard = rng() % 2 ? vars.bool_inputs[0] : vars.bool_inputs[1];
      t.delayed = true;
      a.transitions.push_back(std::move(t));
    }
    Harness h(wrap_automaton(std::move(a)));

    std::vector<core::Reaction> rows;
    std::vector<bool> resets;
    for (int i = 0; i < 15; ++i) {
      core::Reaction r;
      r["trigger"] = Value::event();
      bool rst = rng() % 6 == 0;
      resets.push_back(rst);
      if (rst) r["reset"] = Value::event();
      auto feed = [&](const std::string& name, bool is_bool) {
        if (!h.prog.inputs.count("T." + name)) return;
        if (is_bool) r["T." + name] = Value::boolean(rng() % 2 == 0);
        else r["T." + name] = Value::integer(static_cast<std::int64_t>(rng() % 9) - 4);
      };
      for (const auto& n : vars.int_inputs) feed(n, false);
      for (const auto& n : vars.int_vars) feed(n, false);
      for (const auto& n : vars.bool_inputs) feed(n, true);
      for (const auto& n : vars.bool_vars) feed(n, true);
      rows.push_back(std::move(r));
    }
    auto out = h.run(rows);
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto s = out[i].at("T.m.s");
      ASSERT_TRUE(s.has_value());
      if (resets[i]) {
        ASSERT_EQ(*s, Value::integer(0)) << "reset at instant " << i;
      }
      if (i + 1 == out.size()) continue;
      for (int st = 0; st < n_states; ++st) {
        auto phase = out[i].at("T.m.st" + std::to_string(st) + ".s");
        if (phase && *phase != Value::integer(0) && !resets[i + 1]) {
          ASSERT_EQ(out[i + 1].at("T.m.s"), s) << "stutter violated at instant " << i;
        }
      }
    }
  }
}

// ---------------------------------------------------------------------
// 6. Determinism under equation shuffling, byte-identical traces.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion6_ShuffleDeterminism) {
  number = 6;
  label = "20 equation shuffles per corpus model leave every output trace byte-identical";
  std::mt19937 rng(6006);
  for (const auto& file : corpus_files()) {
    SCOPED_TRACE(file.string());
    Harness h(slurp(file), false);
    // synthesize a total input trace from the manifest
    std::vector<core::Reaction> rows;
    for (int i = 0; i < 12; ++i) {
      core::Reaction r;
      for (const auto& e : h.res.manifest.inputs) {
        if (e.name == "trigger") {
          r[e.name] = Value::event();
        } else if (e.name == "reset") {
          if (rng() % 5 == 0) r[e.name] = Value::event();
        } else {
          switch (e.kind) {
            case Kind::Event: r[e.name] = Value::event(); break;
            case Kind::Bool: r[e.name] = Value::boolean(rng() % 2 == 0); break;
            case Kind::Int:
              r[e.name] = Value::integer(static_cast<std::int64_t>(rng() % 21) - 10);
              break;
          }
        }
      }
      rows.push_back(std::move(r));
    }
    std::string baseline = serialize(h.run(rows));
    for (int k = 0; k < 20; ++k) {
      auto shuffled = shuffle_process(h.res.process, rng);
      ASSERT_EQ(serialize(core::run(shuffled, rows)), baseline)
          << file << " shuffle " << k;
    }
  }
}

// ---------------------------------------------------------------------
// 7. Cyclic immediate regions rejected with a cycle-citing diagnostic.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion7_RegionRejection) {
  number = 7;
  label = "cyclic immediate regions are rejected at check time; acyclic corpus passes";
  std::mt19937 rng(7007);
  for (int iter = 0; iter < 30; ++iter) {
    SCOPED_TRACE(iter);
    int n = 2 + static_cast<int>(rng() % 3);
    std::ostringstream src;
    src << "block B { automaton M {";
    for (int i = 0; i < n; ++i)
      src << (i == 0 ? " initial state st" : " state st") << i << " { }";
    // a random immediate cycle over all states, plus noise edges
    int start = static_cast<int>(rng() % n);
    std::vector<std::string> cycle_states;
    for (int i = 0; i < n; ++i) {
      int from = (start + i) % n, to = (start + i + 1) % n;
      src << " st" << from << " -> st" << to << " on c";
      cycle_states.push_back("st" + std::to_string(from));
    }
    if (rng() % 2) src << " st0 ->> st" << (n - 1) << " on c";
    src << " } }";
    auto diags = validate(parse(src.str()));
    bool found = false;
    for (const auto& d : diags) {
      if (d.code != "CyclicRegion") continue;
      found = true;
      for (const auto& st : cycle_states)
        ASSERT_NE(d.message.find(st), std::string::npos) << d.message;
    }
    ASSERT_TRUE(found) << src.str();
  }
  for (const auto& file : corpus_files()) {
    SCOPED_TRACE(file.string());
    ASSERT_TRUE(validate(parse(slurp(file))).empty());
  }
}

// ---------------------------------------------------------------------
// 8. Round-trip: parse . pretty_print is the structural identity.
// ---------------------------------------------------------------------
TEST_F(AcceptanceTest, Criterion8_RoundTrip) {
  number = 8;
  label = "parse(pretty_print(m)) is structurally identical over the whole corpus";
  auto files = corpus_files();
  ASSERT_GE(files.size(), 10u);
  for (const auto& file : files) {
    SCOPED_TRACE(file.string());
    ast::Model m = parse(slurp(file));
    ast::Model again = parse(pretty_print(m));
    ASSERT_TRUE(ast::equal(m, again));
  }
}
