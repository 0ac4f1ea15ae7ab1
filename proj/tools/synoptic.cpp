// Command-line driver: compile Synoptic models to the core calculus,
// simulate them against trace files, and run structural checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <unistd.h>

#include "synoptic/core/print.hpp"
#include "synoptic/parser.hpp"
#include "synoptic/pretty.hpp"
#include "synoptic/trace.hpp"
#include "synoptic/translate.hpp"
#include "synoptic/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kRuntime = 2;
constexpr int kUsage = 3;

bool use_color() {
  const char* mode = std::getenv("SYNOPTIC_COLOR");
  if (mode && std::string(mode) == "never") return false;
  return isatty(fileno(stderr));
}

void report(const std::string& message) {
  if (use_color()) std::cerr << "\033[31m" << message << "\033[0m\n";
  else std::cerr << message << "\n";
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Compiled {
  synoptic::trans::TranslateResult result;
};

// Parse + validate + translate; prints diagnostics and returns the exit
// status when the pipeline cannot continue.
int compile_file(const std::string& path, std::optional<Compiled>& out) {
  auto text = read_file(path);
  if (!text) {
    report("cannot read '" + path + "'");
    return kUsage;
  }
  try {
    synoptic::ast::Model model = synoptic::parse(*text);
    auto diags = synoptic::validate(model);
    if (!diags.empty()) {
      for (const auto& d : diags) report(synoptic::format_diagnostic(d, path));
      return kDiagnostics;
    }
    out = Compiled{synoptic::trans::translate_model(model)};
    return kOk;
  } catch (const synoptic::ParseError& e) {
    report(synoptic::format_diagnostic({e.code, e.what(), e.span}, path));
    return kDiagnostics;
  } catch (const synoptic::TranslateError& e) {
    report(synoptic::format_diagnostic({e.code, e.what(), e.span}, path));
    return kDiagnostics;
  }
}

int cmd_compile(const std::string& path, bool emit_ir) {
  std::optional<Compiled> compiled;
  int status = compile_file(path, compiled);
  if (status != kOk) return status;
  std::cout << compiled->result.manifest.to_text();
  if (emit_ir) {
    std::cout << "\n";
    std::cout << synoptic::core::dump(compiled->result.process);
  }
  return kOk;
}

int cmd_check(const std::string& path) {
  auto text = read_file(path);
  if (!text) {
    report("cannot read '" + path + "'");
    return kUsage;
  }
  try {
    synoptic::ast::Model model = synoptic::parse(*text);
    auto diags = synoptic::validate(model);
    for (const auto& d : diags) report(synoptic::format_diagnostic(d, path));
    return diags.empty() ? kOk : kDiagnostics;
  } catch (const synoptic::ParseError& e) {
    report(synoptic::format_diagnostic({e.code, e.what(), e.span}, path));
    return kDiagnostics;
  }
}

int cmd_run(const std::string& path, const std::string& trace_path, long max_steps, bool tick) {
  std::optional<Compiled> compiled;
  int status = compile_file(path, compiled);
  if (status != kOk) return status;

  auto trace_text = read_file(trace_path);
  if (!trace_text) {
    report("cannot read '" + trace_path + "'");
    return kUsage;
  }
  synoptic::ParsedTrace trace;
  try {
    trace = synoptic::parse_trace(*trace_text, compiled->result.manifest);
  } catch (const synoptic::TraceError& e) {
    report(e.what());
    return kUsage;
  }
  if (tick)
    for (auto& row : trace.rows) row[compiled->result.top_trigger] = synoptic::Value::event();
  if (max_steps >= 0 && trace.rows.size() > static_cast<std::size_t>(max_steps))
    trace.rows.resize(static_cast<std::size_t>(max_steps));

  synoptic::core::Program prog = synoptic::core::flatten(compiled->result.process);
  std::vector<synoptic::core::Reaction> out;
  try {
    out = synoptic::core::run(prog, trace.rows);
  } catch (const synoptic::core::SimError& e) {
    report(e.what());
    return kRuntime;
  }
  std::cout << synoptic::format_trace(prog.visible, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synoptic compiler and reference simulator"};
  app.require_subcommand(1);

  std::string path, trace_path;
  bool emit_ir = false, tick = false;
  long max_steps = -1;

  auto* compile = app.add_subcommand("compile", "compile a model and print its manifest");
  compile->add_option("file", path, "model file (.syn)")->required();
  compile->add_flag("--emit-ir", emit_ir, "also print the core-process dump");

  auto* run = app.add_subcommand("run", "simulate a model against a trace file");
  run->add_option("file", path, "model file (.syn)")->required();
  run->add_option("--trace", trace_path, "input trace file")->required();
  run->add_option("--max-steps", max_steps, "stop after N instants");
  run->add_flag("--tick", tick, "make the top trigger present at every instant");

  auto* check = app.add_subcommand("check", "parse and validate a model");
  check->add_option("file", path, "model file (.syn)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (compile->parsed()) return cmd_compile(path, emit_ir);
  if (run->parsed()) return cmd_run(path, trace_path, max_steps, tick);
  if (check->parsed()) return cmd_check(path);
  return kUsage;
}
