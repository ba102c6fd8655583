#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncause/eval.hpp"

namespace ncause {

/// A disjunction of conjunctions of literals. The empty conjunction is the
/// unit "True"; the empty disjunction is "False". Engine results are always
/// normalized: no duplicate or contradictory literals within a conjunction,
/// no conjunction subsuming another, canonical ordering.
class Dnf {
 public:
  Dnf() = default;  // False
  explicit Dnf(std::vector<std::vector<Literal>> conjunctions)
      : conjunctions_(std::move(conjunctions)) {}

  static Dnf unit() {
    return Dnf(std::vector<std::vector<Literal>>{{}});
  }

  const std::vector<std::vector<Literal>>& conjunctions() const {
    return conjunctions_;
  }
  bool isFalse() const { return conjunctions_.empty(); }
  bool isUnit() const {
    return conjunctions_.size() == 1 && conjunctions_[0].empty();
  }

  bool operator==(const Dnf& other) const {
    return conjunctions_ == other.conjunctions_;
  }
  bool operator!=(const Dnf& other) const { return !(*this == other); }

 private:
  std::vector<std::vector<Literal>> conjunctions_;
};

/// Orders a literal: first by neuron rank, then by value rank.
using LiteralKey = std::function<std::pair<std::size_t, std::size_t>(
    const Literal&)>;

/// Deduplicates literals, drops conjunctions carrying two values for one
/// neuron, prunes conjunctions that are supersets of another, and sorts
/// literals and conjunctions canonically. Idempotent.
Dnf normalizeDnf(Dnf x, const LiteralKey& key);

/// Normalization keyed by the graph's traversal index.
Dnf normalizeDnf(const Graph& g, Dnf x);

/// `True`, `False`, or conjunctions joined with " & " and disjuncts with
/// " | ".
std::string formatDnf(const Dnf& dnf);

/// One terminal's causal statement: the DNF of action/exogenous literals
/// explaining the terminal's value in the diagram.
struct CauseStatement {
  Dnf cause;
  Literal effect;

  bool operator==(const CauseStatement& other) const {
    return cause == other.cause && effect == other.effect;
  }
};

/// Per-terminal cause statements, in terminal order.
using Causes = std::vector<CauseStatement>;

/// Local counterfactual analysis: the minimal sets of immediate
/// predecessors which, held at their actual values, force the neuron's
/// actual value under every assignment of the remaining predecessors over
/// the full domain. Predecessors with duplicate edges are overridden as one
/// neuron. Throws ArityTooLarge beyond 16 distinct predecessors.
Dnf localCause(const Diagram& d, const std::string& neuron);

/// Recursive causal-chain expansion from the terminal: literals on action
/// neurons or neurons without firing functions are kept; literals on other
/// neurons are replaced by the expansion of their local cause, distributed
/// into DNF and normalized. A terminal that is itself an action or
/// exogenous neuron is its own cause.
CauseStatement causesOf(const Diagram& d, const std::string& terminal);

/// causesOf for every terminal, in terminal order.
Causes causes(const Diagram& d);

/// causes of every diagram generable from the graph, in the canonical
/// enumeration order shared with effects().
std::vector<Causes> allCauses(const Graph& g, bool force = false);

std::string formatCauseStatement(const CauseStatement& statement);

/// One line per terminal, e.g. `Gen:False & Maj:True ==> Pvt:True`.
std::string formatCauses(const Causes& causes);

/// A literal of the oracle's result, identified by predecessor position.
struct SlotLiteral {
  std::size_t slot;
  Value value;

  bool operator==(const SlotLiteral& other) const {
    return slot == other.slot && value == other.value;
  }
};

/// Independent route to the satisfied prime implicants of a firing function
/// at an actual tuple: tabulate the function over every domain tuple, test
/// every subset for sufficiency against the table, then prune non-minimal
/// subsets. Conjunctions sorted by slot sets. Throws ArityTooLarge beyond
/// 10 slots.
std::vector<std::vector<SlotLiteral>> primeImplicantOracle(
    const FiringFunction& fire, std::span<const Value> actuals,
    const ValueDomain& domain);

}  // namespace ncause
