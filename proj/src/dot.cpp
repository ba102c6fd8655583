#include "ncause/dot.hpp"

#include <functional>

#include "ncause/eval.hpp"

namespace ncause {

namespace {

std::string escapeDot(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string attrList(const Style& style) {
  std::string out;
  for (const auto& [key, value] : resolveStyle(style)) {
    out += ", " + key + "=\"" + escapeDot(value) + "\"";
  }
  return out;
}

std::string emit(const Graph& g, const std::string& name,
                 const std::function<Style(const Neuron&)>& nodeStyle) {
  std::string out = "digraph \"" + escapeDot(name) + "\" {\n";
  out += "  rankdir=LR;\n";
  for (std::size_t i : g.topoOrder()) {
    const Neuron& n = g.neuronAt(i);
    std::string label = n.name;
    if (n.desc.kind() == Kind::Law) label += " §";
    out += "  \"" + escapeDot(n.name) + "\" [label=\"" + escapeDot(label) +
           "\"" + attrList(nodeStyle(n)) + "];\n";
  }
  for (std::size_t i : g.topoOrder()) {
    const Neuron& n = g.neuronAt(i);
    for (const auto& e : n.desc.edges()) {
      out += "  \"" + escapeDot(e.source) + "\" -> \"" + escapeDot(n.name) +
             "\"";
      Style resolved = resolveStyle(e.style);
      if (!resolved.empty()) {
        std::string attrs = attrList(resolved);
        out += " [" + attrs.substr(2) + "]";
      }
      out += ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace

std::string dotDiagram(const Diagram& d, const std::string& name) {
  const Graph& g = d.graph();
  Valuation val = evaluate(d);
  return emit(g, name, [&](const Neuron& n) {
    Style style = n.desc.style();
    const Style& fill = g.domain().caseStyle(val.at(n.name).index());
    style = mergeStyles(std::move(style), fill);
    if (!fill.empty() && !hasStyleKey(style, "style")) {
      style.emplace_back("style", "filled");
    }
    return style;
  });
}

std::string dotGraph(const Graph& g, const std::string& name) {
  return emit(g, name, [](const Neuron& n) {
    Style style = n.desc.style();
    style.emplace_back("style", "dashed");
    return style;
  });
}

}  // namespace ncause
