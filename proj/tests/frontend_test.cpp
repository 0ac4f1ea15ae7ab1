#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "synoptic/parser.hpp"
#include "synoptic/pretty.hpp"
#include "synoptic/validate.hpp"

using namespace synoptic;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  EXPECT_TRUE(in.good()) << "cannot open " << p;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(CORPUS_DIR))
    if (entry.path().extension() == ".syn") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
  for (const auto& d : diags)
    if (d.code == code) return true;
  return false;
}

}  // namespace

TEST(Parse, DelayConnection) {
  auto m = parse("block B { dataflow D { data y $ init 0 -> x } }");
  ASSERT_EQ(m.blocks.size(), 1u);
  ASSERT_EQ(m.blocks[0]->items.size(), 1u);
  const auto& d = std::get<ast::DataflowDecl>(m.blocks[0]->items[0]);
  ASSERT_EQ(d.connections.size(), 1u);
  EXPECT_EQ(d.connections[0].tag, ast::Connection::Tag::Delay);
  EXPECT_EQ(d.connections[0].src, "y");
  EXPECT_EQ(d.connections[0].init, Value::integer(0));
  EXPECT_EQ(d.connections[0].dst, "x");
}

TEST(Parse, MinimalAutomaton) {
  auto m = parse("block B { automaton M { initial state S { } } }");
  const auto& a = std::get<ast::AutomatonDecl>(m.blocks[0]->items[0]);
  ASSERT_EQ(a.states.size(), 1u);
  EXPECT_TRUE(a.states[0].initial);
  EXPECT_EQ(a.states[0].action, nullptr);
}

TEST(Parse, SequenceIsRightAssociated) {
  auto m = parse("block B { automaton M { initial state S { do { x = y + z; skip; u! } } } }");
  const auto& a = std::get<ast::AutomatonDecl>(m.blocks[0]->items[0]);
  const ast::ActionPtr& act = a.states[0].action;
  ASSERT_NE(act, nullptr);
  ASSERT_EQ(act->tag, ast::Action::Tag::Seq);
  EXPECT_EQ(act->first->tag, ast::Action::Tag::Assign);
  ASSERT_EQ(act->second->tag, ast::Action::Tag::Seq);
  EXPECT_EQ(act->second->first->tag, ast::Action::Tag::Skip);
  EXPECT_EQ(act->second->second->tag, ast::Action::Tag::Emit);
  EXPECT_EQ(act->second->second->target, "u");
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse("block B {\n  dataflow D { data y -> }\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code, "SyntaxError");
    EXPECT_EQ(e.span.line, 2);
    EXPECT_GT(e.span.col, 0);
  }
}

TEST(Parse, DuplicateNames) {
  try {
    parse("block B { dataflow D { } dataflow D { } }");
    FAIL() << "expected DuplicateName";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code, "DuplicateName");
  }
  EXPECT_THROW(parse("block B { automaton M { initial state S { } state S { } } }"), ParseError);
}

TEST(Parse, UnknownTransitionEndpoint) {
  try {
    parse("block B { automaton M { initial state S { } S -> T on c } }");
    FAIL() << "expected UnknownState";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code, "UnknownState");
  }
}

TEST(Parse, CommentsAndNegativeInit) {
  auto m = parse(
      "# leading comment\nblock B {\n  dataflow D {\n    data y $ init -3 -> x # tail\n  }\n}\n");
  const auto& d = std::get<ast::DataflowDecl>(m.blocks[0]->items[0]);
  EXPECT_EQ(d.connections[0].init, Value::integer(-3));
}

TEST(Validate, CyclicRegionRejected) {
  auto m = parse(
      "block B { automaton M {"
      "  initial state S { } state T { }"
      "  S -> T on c"
      "  T -> S on c"
      "} }");
  auto diags = validate(m);
  EXPECT_TRUE(has_code(diags, "CyclicRegion"));
  for (const auto& d : diags)
    if (d.code == "CyclicRegion") {
      EXPECT_NE(d.message.find("S"), std::string::npos);
      EXPECT_NE(d.message.find("T"), std::string::npos);
    }
}

TEST(Validate, MultipleInitial) {
  auto m = parse("block B { automaton M { initial state S { } initial state T { } } }");
  EXPECT_TRUE(has_code(validate(m), "MultipleInitial"));
}

TEST(Validate, NoInitial) {
  auto m = parse("block B { automaton M { state S { } } }");
  EXPECT_TRUE(has_code(validate(m), "NoInitial"));
}

TEST(Validate, WellFormedTwoStateModelIsClean) {
  auto m = parse(
      "block B { automaton M {"
      "  initial state S { do { x = a + b } }"
      "  state T { do { y! } }"
      "  S ->> T on c"
      "  T ->> S on c"
      "} }");
  EXPECT_TRUE(validate(m).empty());
}

TEST(Validate, GuardMustBeBoolean) {
  auto m = parse(
      "block B { automaton M {"
      "  initial state S { do { e! } }"
      "  state T { }"
      "  S ->> T on e"
      "} }");
  EXPECT_TRUE(has_code(validate(m), "UnresolvedGuard"));
}

TEST(Validate, DoubleDefinedDestination) {
  auto m = parse("block B { dataflow D { data y $ init 0 -> x data a + b -> x } }");
  EXPECT_TRUE(has_code(validate(m), "DuplicateDest"));
}

TEST(Validate, KindMismatchOnEventSource) {
  auto m = parse("block B { dataflow D { data y + z -> w event y -> e } }");
  EXPECT_TRUE(has_code(validate(m), "KindMismatch"));
}

TEST(Validate, UnresolvedDottedName) {
  auto m = parse("block B { dataflow D { data nosuch.x $ init 0 -> y } }");
  EXPECT_TRUE(has_code(validate(m), "UnresolvedName"));
}

TEST(Validate, IsPure) {
  auto m = parse("block B { automaton M { initial state S { } initial state T { } } }");
  auto d1 = validate(m);
  auto d2 = validate(m);
  ASSERT_EQ(d1.size(), d2.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    EXPECT_EQ(d1[i].code, d2[i].code);
    EXPECT_EQ(d1[i].message, d2[i].message);
  }
}

TEST(Validate, DiagnosticsCiteSpans) {
  auto m =
      parse("block B {\n  automaton M {\n    initial state S { }\n    initial state T { }\n  }\n}");
  auto diags = validate(m);
  ASSERT_FALSE(diags.empty());
  for (const auto& d : diags) EXPECT_GT(d.span.line, 0);
}

TEST(RoundTrip, CorpusIsStructurallyStable) {
  auto files = corpus_files();
  ASSERT_GE(files.size(), 10u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.string());
    ast::Model m = parse(slurp(f));
    std::string printed = pretty_print(m);
    ast::Model again = parse(printed);
    EXPECT_TRUE(ast::equal(m, again));
    EXPECT_EQ(printed, pretty_print(again));
  }
}

TEST(RoundTrip, NestedBlocksKeepShape) {
  auto m = parse(
      "block outer { block inner { dataflow D { data a + b -> c } }"
      " automaton M { initial state S { do { if c { x = a + b } else { x = a - b } } } } }");
  ast::Model again = parse(pretty_print(m));
  EXPECT_TRUE(ast::equal(m, again));
}

TEST(RoundTrip, CorpusValidates) {
  for (const auto& f : corpus_files()) {
    SCOPED_TRACE(f.string());
    EXPECT_TRUE(validate(parse(slurp(f))).empty());
  }
}
