#include "ncause/core.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "ncause/error.hpp"

namespace ncause {

bool isInput(const Neuron& n) { return !n.desc.hasFire(); }
bool isExo(const Neuron& n) { return n.desc.edges().empty(); }
bool isEndo(const Neuron& n) { return !isExo(n); }

struct Graph::Impl {
  ValueDomain domain;
  std::vector<Neuron> neurons;  // reachable, declaration order
  std::vector<std::string> terminals;
  std::map<std::string, std::size_t> byName;
  std::vector<std::size_t> topo;
  std::vector<std::size_t> inputs;
  std::map<std::string, std::size_t> traversal;

  Impl(ValueDomain d) : domain(std::move(d)) {}
};

namespace {

bool validIdentifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') {
    return false;
  }
  return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

}  // namespace

Graph::Graph(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Graph Graph::build(ValueDomain domain, std::vector<Neuron> declared,
                   std::vector<std::string> terminals,
                   std::vector<std::string>* dropped) {
  auto impl = std::make_shared<Impl>(std::move(domain));

  std::map<std::string, std::size_t> declaredIndex;
  for (std::size_t i = 0; i < declared.size(); ++i) {
    const std::string& name = declared[i].name;
    if (!validIdentifier(name)) {
      fail(ErrorCode::InvalidName, "'" + name + "' is not a valid neuron name");
    }
    if (!declaredIndex.emplace(name, i).second) {
      fail(ErrorCode::DuplicateName, "neuron '" + name + "' declared twice");
    }
    if (!declared[i].desc.hasFire() && !declared[i].desc.edges().empty()) {
      fail(ErrorCode::DomainError,
           "neuron '" + name + "' has edges but no firing function");
    }
  }

  if (terminals.empty()) {
    fail(ErrorCode::EmptyTerminals, "a graph needs at least one terminal");
  }
  for (const auto& t : terminals) {
    if (!declaredIndex.count(t)) {
      fail(ErrorCode::UnknownNeuron, "terminal '" + t + "' is not declared");
    }
  }
  for (const auto& n : declared) {
    for (const auto& e : n.desc.edges()) {
      if (!declaredIndex.count(e.source)) {
        fail(ErrorCode::UnknownNeuron, "neuron '" + n.name +
                                           "' references undeclared neuron '" +
                                           e.source + "'");
      }
    }
  }

  // Pre-order DFS from the terminals defines membership, the traversal rank
  // of every neuron, and the input order.
  std::map<std::string, std::size_t> traversal;
  std::vector<std::string> inputNames;
  std::function<void(const std::string&)> visit =
      [&](const std::string& name) {
        if (traversal.count(name)) return;
        traversal.emplace(name, traversal.size());
        const Neuron& n = declared[declaredIndex.at(name)];
        if (isInput(n)) inputNames.push_back(name);
        for (const auto& e : n.desc.edges()) visit(e.source);
      };
  for (const auto& t : terminals) visit(t);

  for (const auto& n : declared) {
    if (!traversal.count(n.name)) {
      if (dropped) dropped->push_back(n.name);
      continue;
    }
    impl->byName.emplace(n.name, impl->neurons.size());
    impl->neurons.push_back(n);
  }
  impl->terminals = std::move(terminals);
  impl->traversal = std::move(traversal);
  for (const auto& name : inputNames) {
    impl->inputs.push_back(impl->byName.at(name));
  }

  // Cycle check over the reachable set; reports one cycle by name.
  {
    enum class Color { White, Gray, Black };
    std::vector<Color> color(impl->neurons.size(), Color::White);
    std::vector<std::string> stack;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      color[i] = Color::Gray;
      stack.push_back(impl->neurons[i].name);
      for (const auto& e : impl->neurons[i].desc.edges()) {
        std::size_t j = impl->byName.at(e.source);
        if (color[j] == Color::Gray) {
          auto start = std::find(stack.begin(), stack.end(), e.source);
          std::string cycle;
          for (auto it = start; it != stack.end(); ++it) {
            if (!cycle.empty()) cycle += " -> ";
            cycle += *it;
          }
          fail(ErrorCode::CycleError,
               "cycle: " + cycle + " -> " + e.source);
        }
        if (color[j] == Color::White) dfs(j);
      }
      stack.pop_back();
      color[i] = Color::Black;
    };
    for (std::size_t i = 0; i < impl->neurons.size(); ++i) {
      if (color[i] == Color::White) dfs(i);
    }
  }

  // Kahn's algorithm, declaration order breaking ties among ready neurons.
  {
    std::vector<std::size_t> indegree(impl->neurons.size(), 0);
    for (const auto& n : impl->neurons) {
      indegree[impl->byName.at(n.name)] = n.desc.edges().size();
    }
    std::vector<bool> done(impl->neurons.size(), false);
    while (impl->topo.size() < impl->neurons.size()) {
      for (std::size_t i = 0; i < impl->neurons.size(); ++i) {
        if (done[i] || indegree[i] != 0) continue;
        done[i] = true;
        impl->topo.push_back(i);
        for (std::size_t j = 0; j < impl->neurons.size(); ++j) {
          for (const auto& e : impl->neurons[j].desc.edges()) {
            if (impl->byName.at(e.source) == i) indegree[j]--;
          }
        }
        break;
      }
    }
  }

  return Graph(std::move(impl));
}

const ValueDomain& Graph::domain() const { return impl_->domain; }

const std::vector<Neuron>& Graph::neurons() const { return impl_->neurons; }

const std::vector<std::string>& Graph::terminals() const {
  return impl_->terminals;
}

bool Graph::contains(const std::string& name) const {
  return impl_->byName.count(name) > 0;
}

std::size_t Graph::indexOf(const std::string& name) const {
  auto it = impl_->byName.find(name);
  if (it == impl_->byName.end()) {
    fail(ErrorCode::NameNotFound, "no neuron named '" + name + "'");
  }
  return it->second;
}

const Neuron& Graph::neuronAt(std::size_t index) const {
  return impl_->neurons.at(index);
}

const Neuron& Graph::neuronIn(const std::string& name) const {
  return impl_->neurons[indexOf(name)];
}

std::vector<const Neuron*> Graph::preds(const Neuron& n) const {
  std::vector<const Neuron*> out;
  out.reserve(n.desc.edges().size());
  for (const auto& e : n.desc.edges()) {
    out.push_back(&neuronIn(e.source));
  }
  return out;
}

std::vector<const Neuron*> Graph::preds(const std::string& name) const {
  return preds(neuronIn(name));
}

std::vector<const Neuron*> Graph::upstream(const Neuron& n) const {
  std::vector<const Neuron*> out;
  std::set<std::string> seen{n.name};
  std::function<void(const Neuron&)> visit = [&](const Neuron& cur) {
    for (const auto& e : cur.desc.edges()) {
      if (!seen.insert(e.source).second) continue;
      const Neuron& p = neuronIn(e.source);
      out.push_back(&p);
      visit(p);
    }
  };
  visit(n);
  return out;
}

std::vector<const Neuron*> Graph::upstream(const std::string& name) const {
  return upstream(neuronIn(name));
}

const std::vector<std::size_t>& Graph::topoOrder() const {
  return impl_->topo;
}

const std::vector<std::size_t>& Graph::inputOrder() const {
  return impl_->inputs;
}

std::size_t Graph::inputCount() const { return impl_->inputs.size(); }

std::vector<const Neuron*> Graph::inputNeurons() const {
  std::vector<const Neuron*> out;
  out.reserve(impl_->inputs.size());
  for (std::size_t i : impl_->inputs) out.push_back(&impl_->neurons[i]);
  return out;
}

std::size_t Graph::traversalIndex(const std::string& name) const {
  auto it = impl_->traversal.find(name);
  if (it == impl_->traversal.end()) {
    fail(ErrorCode::NameNotFound, "no neuron named '" + name + "'");
  }
  return it->second;
}

bool Graph::operator==(const Graph& other) const {
  if (impl_ == other.impl_) return true;
  if (!(impl_->domain == other.impl_->domain)) return false;
  if (impl_->terminals != other.impl_->terminals) return false;
  if (impl_->neurons.size() != other.impl_->neurons.size()) return false;
  for (const auto& n : impl_->neurons) {
    auto it = other.impl_->byName.find(n.name);
    if (it == other.impl_->byName.end()) return false;
    const Neuron& o = other.impl_->neurons[it->second];
    if (n.desc.identity() != o.desc.identity()) return false;
  }
  return true;
}

Diagram::Diagram(Graph graph, std::vector<Value> inputs)
    : graph_(std::move(graph)), inputs_(std::move(inputs)) {
  if (inputs_.size() != graph_.inputCount()) {
    fail(ErrorCode::ArityError,
         "expected " + std::to_string(graph_.inputCount()) +
             " input values, got " + std::to_string(inputs_.size()));
  }
  for (const Value& v : inputs_) {
    if (v.domain() != graph_.domain()) {
      fail(ErrorCode::DomainError, "input value '" + v.name() +
                                       "' is not in domain '" +
                                       graph_.domain().name() + "'");
    }
  }
}

Diagram Diagram::changeInputs(std::vector<Value> newInputs) const {
  return Diagram(graph_, std::move(newInputs));
}

bool Diagram::operator==(const Diagram& other) const {
  return graph_ == other.graph_ && inputs_ == other.inputs_;
}

}  // namespace ncause
