#include "ncause/eval.hpp"

#include <cassert>

#include "ncause/error.hpp"

namespace ncause {

std::string formatLiteral(const Literal& lit) {
  return lit.neuron + ":" + lit.value.name();
}

Valuation::Valuation(Graph graph, std::vector<Value> byIndex)
    : graph_(std::move(graph)), byIndex_(std::move(byIndex)) {}

const Value& Valuation::at(const std::string& name) const {
  return byIndex_[graph_.indexOf(name)];
}

const Value& Valuation::at(std::size_t index) const {
  return byIndex_.at(index);
}

std::vector<Literal> Valuation::inTopoOrder() const {
  std::vector<Literal> out;
  out.reserve(byIndex_.size());
  for (std::size_t i : graph_.topoOrder()) {
    out.push_back({graph_.neuronAt(i).name, byIndex_[i]});
  }
  return out;
}

Valuation evaluate(const Diagram& d) {
  const Graph& g = d.graph();
  std::vector<Value> values(g.neurons().size(), g.domain().neutral());
  std::vector<bool> assigned(g.neurons().size(), false);

  const auto& order = g.inputOrder();
  for (std::size_t i = 0; i < order.size(); ++i) {
    values[order[i]] = d.inputs()[i];
    assigned[order[i]] = true;
  }

  for (std::size_t i : g.topoOrder()) {
    const Neuron& n = g.neuronAt(i);
    if (isInput(n)) continue;
    std::vector<Value> predValues;
    predValues.reserve(n.desc.edges().size());
    for (const auto& e : n.desc.edges()) {
      std::size_t j = g.indexOf(e.source);
      assert(assigned[j]);
      predValues.push_back(values[j]);
    }
    Value v = n.desc.callFire(predValues);
    if (v.domain() != g.domain()) {
      fail(ErrorCode::DomainError, "firing function of '" + n.name +
                                       "' produced a value outside domain '" +
                                       g.domain().name() + "'");
    }
    values[i] = v;
    assigned[i] = true;
  }
  return Valuation(g, std::move(values));
}

Value stateIn(const std::string& name, const Diagram& d) {
  d.graph().indexOf(name);  // NameNotFound before the full evaluation
  return evaluate(d).at(name);
}

std::vector<Value> asFunction(const Graph& g, std::vector<Value> inputs) {
  Valuation val = evaluate(Diagram(g, std::move(inputs)));
  std::vector<Value> out;
  out.reserve(g.terminals().size());
  for (const auto& t : g.terminals()) out.push_back(val.at(t));
  return out;
}

std::vector<std::vector<Value>> enumerateInputTuples(const Graph& g,
                                                     bool force) {
  const std::size_t k = g.inputCount();
  const std::size_t m = g.domain().size();

  constexpr std::uint64_t kHardCap = 1ull << 32;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > kHardCap / m) {
      fail(ErrorCode::BlowupError, "input tuple count does not fit in memory");
    }
    total *= m;
  }
  if (total > kEnumerationLimit && !force) {
    fail(ErrorCode::BlowupError,
         "enumerating " + std::to_string(m) + "^" + std::to_string(k) +
             " input tuples exceeds the limit of " +
             std::to_string(kEnumerationLimit) + " (use force to override)");
  }

  // Odometer with the last input varying fastest.
  std::vector<std::vector<Value>> tuples;
  std::vector<std::size_t> digits(k, 0);
  while (true) {
    std::vector<Value> tuple;
    tuple.reserve(k);
    for (std::size_t dgt : digits) tuple.push_back(g.domain().value(dgt));
    tuples.push_back(std::move(tuple));
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < m) break;
      digits[pos] = 0;
      if (pos == 0) return tuples;
    }
    if (k == 0) return tuples;
  }
}

Effects effects(const Graph& g, bool force) {
  Effects out;
  std::vector<const Neuron*> inputs = g.inputNeurons();
  for (auto& tuple : enumerateInputTuples(g, force)) {
    EffectsRow row;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      row.inputs.push_back({inputs[i]->name, tuple[i]});
    }
    std::vector<Value> results = asFunction(g, tuple);
    for (std::size_t i = 0; i < results.size(); ++i) {
      row.outputs.push_back({g.terminals()[i], results[i]});
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<Diagram> allDiagrams(const Graph& g, bool force) {
  std::vector<Diagram> out;
  for (auto& tuple : enumerateInputTuples(g, force)) {
    out.emplace_back(g, std::move(tuple));
  }
  return out;
}

namespace {

std::string joinLiterals(const std::vector<Literal>& lits) {
  std::string out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) out += ",";
    out += formatLiteral(lits[i]);
  }
  return out;
}

}  // namespace

std::string formatEffects(const Effects& e) {
  std::string out;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (i) out += "\n";
    out += "[" + joinLiterals(e.rows[i].inputs) + "] -> [" +
           joinLiterals(e.rows[i].outputs) + "]";
  }
  return out;
}

}  // namespace ncause
