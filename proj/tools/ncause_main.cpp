#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncause/cause.hpp"
#include "ncause/dot.hpp"
#include "ncause/eval.hpp"
#include "ncause/lang.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string file;
  std::string graphName;
  std::string diagramName;
  std::string neuron;
  std::string outPath;
  std::vector<std::string> equalEffects;
  std::vector<std::string> equalCauses;
  bool force = false;
};

void printDiagnostics(const ncause::LoweredFile& lowered,
                      const std::string& file) {
  for (const auto& d : lowered.diagnostics) {
    std::cerr << ncause::formatDiagnostic(d, file) << "\n";
  }
}

/// Loads the file, printing diagnostics to stderr. Returns false on errors.
bool load(const std::string& file, ncause::LoweredFile& lowered) {
  lowered = ncause::loadFile(file);
  printDiagnostics(lowered, file);
  return lowered.ok();
}

const ncause::Graph& requireGraph(const ncause::LoweredFile& lowered,
                                  const std::string& name) {
  const ncause::Graph* g = lowered.graph(name);
  if (!g) throw ncause::Error(ncause::ErrorCode::NameNotFound,
                              "no graph named '" + name + "'");
  return *g;
}

const ncause::Diagram& requireDiagram(const ncause::LoweredFile& lowered,
                                      const std::string& name) {
  const ncause::Diagram* d = lowered.diagram(name);
  if (!d) throw ncause::Error(ncause::ErrorCode::NameNotFound,
                              "no diagram named '" + name + "'");
  return *d;
}

int usageError(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

int runCheck(const Options& opt) {
  ncause::LoweredFile lowered;
  return load(opt.file, lowered) ? kExitOk : kExitUsage;
}

int runEval(const Options& opt) {
  if (opt.diagramName.empty()) return usageError("eval requires --diagram");
  ncause::LoweredFile lowered;
  if (!load(opt.file, lowered)) return kExitUsage;
  const ncause::Diagram& d = requireDiagram(lowered, opt.diagramName);
  if (!opt.neuron.empty()) {
    ncause::Value v = ncause::stateIn(opt.neuron, d);
    std::cout << ncause::formatLiteral({opt.neuron, v}) << "\n";
    return kExitOk;
  }
  for (const auto& lit : ncause::evaluate(d).inTopoOrder()) {
    std::cout << ncause::formatLiteral(lit) << "\n";
  }
  return kExitOk;
}

int runCauses(const Options& opt) {
  if (opt.diagramName.empty()) return usageError("causes requires --diagram");
  ncause::LoweredFile lowered;
  if (!load(opt.file, lowered)) return kExitUsage;
  const ncause::Diagram& d = requireDiagram(lowered, opt.diagramName);
  std::cout << ncause::formatCauses(ncause::causes(d)) << "\n";
  return kExitOk;
}

int runEffects(const Options& opt) {
  if (opt.graphName.empty()) return usageError("effects requires --graph");
  ncause::LoweredFile lowered;
  if (!load(opt.file, lowered)) return kExitUsage;
  const ncause::Graph& g = requireGraph(lowered, opt.graphName);
  std::cout << ncause::formatEffects(ncause::effects(g, opt.force)) << "\n";
  return kExitOk;
}

int runAllCauses(const Options& opt) {
  if (opt.graphName.empty()) return usageError("all-causes requires --graph");
  ncause::LoweredFile lowered;
  if (!load(opt.file, lowered)) return kExitUsage;
  const ncause::Graph& g = requireGraph(lowered, opt.graphName);
  std::string out = "[";
  bool first = true;
  for (const ncause::Causes& cs : ncause::allCauses(g, opt.force)) {
    if (!first) out += ",";
    first = false;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) out += "; ";
      out += ncause::formatCauseStatement(cs[i]);
    }
  }
  out += "]";
  std::cout << out << "\n";
  return kExitOk;
}

int runDot(const Options& opt) {
  if (opt.graphName.empty() == opt.diagramName.empty()) {
    return usageError("dot requires exactly one of --graph or --diagram");
  }
  ncause::LoweredFile lowered;
  if (!load(opt.file, lowered)) return kExitUsage;
  std::string dot;
  if (!opt.graphName.empty()) {
    dot = ncause::dotGraph(requireGraph(lowered, opt.graphName),
                           opt.graphName);
  } else {
    dot = ncause::dotDiagram(requireDiagram(lowered, opt.diagramName),
                             opt.diagramName);
  }
  if (opt.outPath.empty()) {
    std::cout << dot;
    return kExitOk;
  }
  std::ofstream out(opt.outPath, std::ios::binary);
  if (!out) return usageError("cannot write '" + opt.outPath + "'");
  out << dot;
  return kExitOk;
}

int runEqual(const Options& opt) {
  const bool byEffects = !opt.equalEffects.empty();
  const bool byCauses = !opt.equalCauses.empty();
  if (byEffects == byCauses) {
    return usageError("equal requires exactly one of --effects or --causes");
  }
  ncause::LoweredFile lowered;
  if (!load(opt.file, lowered)) return kExitUsage;
  const auto& names = byEffects ? opt.equalEffects : opt.equalCauses;
  const ncause::Graph& a = requireGraph(lowered, names[0]);
  const ncause::Graph& b = requireGraph(lowered, names[1]);
  bool equal;
  if (byEffects) {
    equal = ncause::effects(a, opt.force) == ncause::effects(b, opt.force);
  } else {
    equal = ncause::allCauses(a, opt.force) == ncause::allCauses(b, opt.force);
  }
  std::cout << (equal ? "True" : "False") << "\n";
  return equal ? kExitOk : kExitNotEqual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neuron diagram toolchain: evaluate firing semantics, infer "
               "causes, and emit GraphViz DOT."};
  app.require_subcommand(1);
  Options opt;

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("file", opt.file, "Input .nd file")->required();
  };

  CLI::App* check = app.add_subcommand("check", "Parse and validate a file");
  addCommon(check);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a diagram");
  addCommon(eval);
  eval->add_option("--diagram", opt.diagramName, "Diagram to evaluate");
  eval->add_option("--neuron", opt.neuron, "Print only this neuron's value");

  CLI::App* causesCmd = app.add_subcommand("causes", "Infer a diagram's causes");
  addCommon(causesCmd);
  causesCmd->add_option("--diagram", opt.diagramName, "Diagram to analyze");

  CLI::App* effectsCmd =
      app.add_subcommand("effects", "Print a graph's firing semantics");
  addCommon(effectsCmd);
  effectsCmd->add_option("--graph", opt.graphName, "Graph to enumerate");
  effectsCmd->add_flag("--force", opt.force, "Override the enumeration limit");

  CLI::App* allCausesCmd = app.add_subcommand(
      "all-causes", "Infer causes for every diagram generable from a graph");
  addCommon(allCausesCmd);
  allCausesCmd->add_option("--graph", opt.graphName, "Graph to enumerate");
  allCausesCmd->add_flag("--force", opt.force,
                         "Override the enumeration limit");

  CLI::App* dotCmd = app.add_subcommand("dot", "Emit GraphViz DOT");
  addCommon(dotCmd);
  dotCmd->add_option("--graph", opt.graphName, "Render this graph");
  dotCmd->add_option("--diagram", opt.diagramName, "Render this diagram");
  dotCmd->add_option("-o", opt.outPath, "Write DOT here instead of stdout");

  CLI::App* equalCmd =
      app.add_subcommand("equal", "Compare two graphs' semantics");
  addCommon(equalCmd);
  equalCmd->add_option("--effects", opt.equalEffects,
                       "Compare firing semantics of two graphs")
      ->expected(2);
  equalCmd->add_option("--causes", opt.equalCauses,
                       "Compare causal semantics of two graphs")
      ->expected(2);
  equalCmd->add_flag("--force", opt.force, "Override the enumeration limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return runCheck(opt);
    if (eval->parsed()) return runEval(opt);
    if (causesCmd->parsed()) return runCauses(opt);
    if (effectsCmd->parsed()) return runEffects(opt);
    if (allCausesCmd->parsed()) return runAllCauses(opt);
    if (dotCmd->parsed()) return runDot(opt);
    if (equalCmd->parsed()) return runEqual(opt);
  } catch (const ncause::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
