#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncause/core.hpp"

namespace ncause {

/// A (neuron, value) pair as it appears in effects tables and causes.
struct Literal {
  std::string neuron;
  Value value;

  bool operator==(const Literal& other) const {
    return neuron == other.neuron && value == other.value;
  }
  bool operator!=(const Literal& other) const { return !(*this == other); }
};

std::string formatLiteral(const Literal& lit);

/// A total assignment of values to a diagram's neurons.
class Valuation {
 public:
  Valuation(Graph graph, std::vector<Value> byIndex);

  const Graph& graph() const { return graph_; }
  const Value& at(const std::string& name) const;  // NameNotFound
  const Value& at(std::size_t index) const;
  std::vector<Literal> inTopoOrder() const;

 private:
  Graph graph_;
  std::vector<Value> byIndex_;
};

/// Single pass in topological order: inputs bound per input order, every
/// other neuron assigned its firing function of the predecessor values.
Valuation evaluate(const Diagram& d);

/// The value of the named neuron in the diagram. Throws NameNotFound.
Value stateIn(const std::string& name, const Diagram& d);

/// The multifunction implemented by the graph: terminal values, in terminal
/// order, for the given inputs. Throws ArityError/DomainError.
std::vector<Value> asFunction(const Graph& g, std::vector<Value> inputs);

struct EffectsRow {
  std::vector<Literal> inputs;   // in input order
  std::vector<Literal> outputs;  // in terminal order

  bool operator==(const EffectsRow&) const = default;
};

/// The firing semantics of a graph: one row per input tuple, tuples in
/// lexicographic order with the last input varying fastest. Equality is
/// exact row-by-row literal equality.
struct Effects {
  std::vector<EffectsRow> rows;

  bool operator==(const Effects&) const = default;
};

/// Enumeration refuses more than this many input tuples unless forced.
inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// Every input tuple in canonical enumeration order. Throws BlowupError
/// when |domain|^inputs exceeds the limit and `force` is unset.
std::vector<std::vector<Value>> enumerateInputTuples(const Graph& g,
                                                     bool force = false);

Effects effects(const Graph& g, bool force = false);

/// One diagram per input tuple, in the same canonical order as effects().
std::vector<Diagram> allDiagrams(const Graph& g, bool force = false);

/// One row per line: `[Gen:False,Maj:True] -> [Pvt:True]`.
std::string formatEffects(const Effects& e);

}  // namespace ncause
