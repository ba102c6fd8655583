#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncause/desc.hpp"
#include "ncause/values.hpp"

namespace ncause {

/// A named node carrying its description.
struct Neuron {
  std::string name;
  Description desc;
};

/// Input neurons have no firing function; exogenous neurons have no
/// predecessors. Every input is exogenous, but not vice versa (constants).
bool isInput(const Neuron& n);
bool isExo(const Neuron& n);
bool isEndo(const Neuron& n);

/// An immutable, validated DAG of neurons identified by its terminal list.
/// Membership is everything reachable upstream from the terminals; declared
/// neurons that are unreachable are dropped (reported via `dropped`).
/// Cheap to copy and safe to share across threads.
class Graph {
 public:
  /// Validates and builds. Throws InvalidName, DuplicateName,
  /// EmptyTerminals, UnknownNeuron, or CycleError (which names the cycle).
  static Graph build(ValueDomain domain, std::vector<Neuron> declared,
                     std::vector<std::string> terminals,
                     std::vector<std::string>* dropped = nullptr);

  const ValueDomain& domain() const;

  /// Reachable neurons in declaration order.
  const std::vector<Neuron>& neurons() const;
  const std::vector<std::string>& terminals() const;

  bool contains(const std::string& name) const;
  std::size_t indexOf(const std::string& name) const;  // NameNotFound
  const Neuron& neuronAt(std::size_t index) const;
  const Neuron& neuronIn(const std::string& name) const;  // NameNotFound

  /// Immediate predecessors in edge order, duplicates preserved.
  std::vector<const Neuron*> preds(const Neuron& n) const;
  std::vector<const Neuron*> preds(const std::string& name) const;

  /// All recursive predecessors, each once, in first-encounter pre-order;
  /// excludes the neuron itself.
  std::vector<const Neuron*> upstream(const Neuron& n) const;
  std::vector<const Neuron*> upstream(const std::string& name) const;

  /// Indices into neurons() in topological order; every neuron appears
  /// after all of its predecessors, ties broken by declaration order.
  const std::vector<std::size_t>& topoOrder() const;

  /// Indices of the input neurons in the order values are assigned to them:
  /// first encounter in a pre-order DFS from the terminals in list order,
  /// predecessors visited in edge order.
  const std::vector<std::size_t>& inputOrder() const;
  std::size_t inputCount() const;
  std::vector<const Neuron*> inputNeurons() const;

  /// First-encounter rank of the neuron in the same DFS; the canonical
  /// ordering key for cause literals.
  std::size_t traversalIndex(const std::string& name) const;

  /// Structural equality: same domain, same terminal name sequence, and the
  /// same description identity per neuron name.
  bool operator==(const Graph& other) const;
  bool operator!=(const Graph& other) const { return !(*this == other); }

 private:
  struct Impl;
  explicit Graph(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// A graph plus one value per input neuron, bound in input order.
class Diagram {
 public:
  /// Throws ArityError when the vector length does not match the graph's
  /// input count, DomainError when a value is from another domain.
  Diagram(Graph graph, std::vector<Value> inputs);

  const Graph& graph() const { return graph_; }
  const std::vector<Value>& inputs() const { return inputs_; }

  /// Replaces only the input vector; the graph is shared unchanged.
  Diagram changeInputs(std::vector<Value> newInputs) const;

  bool operator==(const Diagram& other) const;
  bool operator!=(const Diagram& other) const { return !(*this == other); }

 private:
  Graph graph_;
  std::vector<Value> inputs_;
};

}  // namespace ncause
