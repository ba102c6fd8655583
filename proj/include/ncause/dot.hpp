#pragma once

#include <string>

#include "ncause/core.hpp"

namespace ncause {

/// GraphViz program for a diagram: nodes in topological order, labels
/// suffixed with " §" for laws, node fills from the value styles, edge
/// arrowheads per edge style. Deterministic and byte-stable.
std::string dotDiagram(const Diagram& d, const std::string& name = "G");

/// Same notation for a bare graph: dashed borders and never any fill.
std::string dotGraph(const Graph& g, const std::string& name = "G");

}  // namespace ncause
