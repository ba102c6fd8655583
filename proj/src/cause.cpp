#include "ncause/cause.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "ncause/error.hpp"

namespace ncause {

namespace {

using Conjunction = std::vector<Literal>;

bool isSubsetOf(const Conjunction& small, const Conjunction& big) {
  return std::all_of(small.begin(), small.end(), [&](const Literal& lit) {
    return std::find(big.begin(), big.end(), lit) != big.end();
  });
}

}  // namespace

Dnf normalizeDnf(Dnf x, const LiteralKey& key) {
  std::vector<Conjunction> conjs;
  for (const Conjunction& raw : x.conjunctions()) {
    Conjunction conj;
    bool contradictory = false;
    for (const Literal& lit : raw) {
      auto same = std::find_if(conj.begin(), conj.end(), [&](const Literal& l) {
        return l.neuron == lit.neuron;
      });
      if (same != conj.end()) {
        if (!(same->value == lit.value)) {
          contradictory = true;
          break;
        }
        continue;  // duplicate literal
      }
      conj.push_back(lit);
    }
    if (contradictory) continue;
    std::sort(conj.begin(), conj.end(), [&](const Literal& a, const Literal& b) {
      return key(a) < key(b);
    });
    conjs.push_back(std::move(conj));
  }

  // Antichain: drop duplicates and proper supersets of another conjunction.
  std::vector<bool> redundant(conjs.size(), false);
  for (std::size_t i = 0; i < conjs.size(); ++i) {
    for (std::size_t j = 0; j < conjs.size(); ++j) {
      if (i == j) continue;
      if (conjs[j].size() < conjs[i].size() && isSubsetOf(conjs[j], conjs[i])) {
        redundant[i] = true;
        break;
      }
      if (j < i && conjs[j] == conjs[i]) {
        redundant[i] = true;
        break;
      }
    }
  }
  std::vector<Conjunction> kept;
  for (std::size_t i = 0; i < conjs.size(); ++i) {
    if (!redundant[i]) kept.push_back(std::move(conjs[i]));
  }

  std::sort(kept.begin(), kept.end(),
            [&](const Conjunction& a, const Conjunction& b) {
              return std::lexicographical_compare(
                  a.begin(), a.end(), b.begin(), b.end(),
                  [&](const Literal& x_, const Literal& y_) {
                    return key(x_) < key(y_);
                  });
            });
  return Dnf(std::move(kept));
}

Dnf normalizeDnf(const Graph& g, Dnf x) {
  return normalizeDnf(std::move(x), [&g](const Literal& lit) {
    return std::make_pair(g.traversalIndex(lit.neuron), lit.value.index());
  });
}

std::string formatDnf(const Dnf& dnf) {
  if (dnf.isFalse()) return "False";
  if (dnf.isUnit()) return "True";
  std::string out;
  for (std::size_t i = 0; i < dnf.conjunctions().size(); ++i) {
    if (i) out += " | ";
    const auto& conj = dnf.conjunctions()[i];
    for (std::size_t j = 0; j < conj.size(); ++j) {
      if (j) out += " & ";
      out += formatLiteral(conj[j]);
    }
  }
  return out;
}

namespace {

constexpr std::size_t kMaxLocalArity = 16;
constexpr std::size_t kMaxOracleArity = 10;

/// Distinct predecessor neurons in first-occurrence edge order, with the
/// slot positions each one feeds.
struct PredSlots {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> slots;  // per distinct predecessor
  std::size_t slotCount = 0;
};

PredSlots distinctPreds(const Neuron& n) {
  PredSlots out;
  out.slotCount = n.desc.edges().size();
  for (std::size_t s = 0; s < n.desc.edges().size(); ++s) {
    const std::string& src = n.desc.edges()[s].source;
    auto it = std::find(out.names.begin(), out.names.end(), src);
    std::size_t idx;
    if (it == out.names.end()) {
      idx = out.names.size();
      out.names.push_back(src);
      out.slots.emplace_back();
    } else {
      idx = static_cast<std::size_t>(it - out.names.begin());
    }
    out.slots[idx].push_back(s);
  }
  return out;
}

/// True when fixing the masked predecessors at their actual values forces
/// `target` under every assignment of the unfixed predecessors.
bool sufficient(const Description& desc, const PredSlots& preds,
                const std::vector<Value>& actuals, const Value& target,
                const ValueDomain& domain, std::uint32_t mask) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < preds.names.size(); ++i) {
    if (!(mask & (1u << i))) free.push_back(i);
  }
  std::vector<Value> slotValues(preds.slotCount, domain.neutral());
  auto assignPred = [&](std::size_t pred, const Value& v) {
    for (std::size_t s : preds.slots[pred]) slotValues[s] = v;
  };
  for (std::size_t i = 0; i < preds.names.size(); ++i) {
    if (mask & (1u << i)) assignPred(i, actuals[i]);
  }

  std::vector<std::size_t> digits(free.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      assignPred(free[i], domain.value(digits[i]));
    }
    if (!(desc.callFire(slotValues) == target)) return false;
    std::size_t pos = free.size();
    while (true) {
      if (pos == 0) return true;
      --pos;
      if (++digits[pos] < domain.size()) break;
      digits[pos] = 0;
    }
  }
}

Dnf localCauseImpl(const Graph& g, const Valuation& val, const Neuron& n) {
  PredSlots preds = distinctPreds(n);
  const std::size_t k = preds.names.size();
  if (k > kMaxLocalArity) {
    fail(ErrorCode::ArityTooLarge,
         "neuron '" + n.name + "' has " + std::to_string(k) +
             " distinct predecessors (limit " +
             std::to_string(kMaxLocalArity) + ")");
  }
  std::vector<Value> actuals;
  actuals.reserve(k);
  for (const auto& name : preds.names) actuals.push_back(val.at(name));
  const Value& target = val.at(n.name);
  const ValueDomain& domain = g.domain();

  // Subsets by ascending size; supersets of an accepted implicant are
  // minimal-by-construction skips.
  std::vector<std::uint32_t> found;
  std::vector<Conjunction> result;
  for (std::size_t size = 0; size <= k; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      bool skip = std::any_of(found.begin(), found.end(),
                              [&](std::uint32_t f) { return (f & mask) == f; });
      if (skip) continue;
      if (!sufficient(n.desc, preds, actuals, target, domain, mask)) continue;
      found.push_back(mask);
      Conjunction conj;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i)) conj.push_back({preds.names[i], actuals[i]});
      }
      result.push_back(std::move(conj));
    }
  }
  return normalizeDnf(g, Dnf(std::move(result)));
}

/// Whether the chain expansion keeps a literal on this neuron instead of
/// recursing: actions halt the recursion, and neurons without firing
/// functions have nothing to recurse into. Exogenous law neurons with a
/// firing function (constants) expand to their local cause, the unit DNF,
/// so they never appear as causes.
bool isChainBase(const Neuron& n) {
  return n.desc.kind() == Kind::Action || !n.desc.hasFire();
}

class ChainExpander {
 public:
  ChainExpander(const Graph& g, const Valuation& val) : g_(g), val_(val) {}

  const Dnf& expand(const Neuron& n) {
    auto it = memo_.find(n.name);
    if (it != memo_.end()) return it->second;
    Dnf result;
    if (isChainBase(n)) {
      result = Dnf({{Literal{n.name, val_.at(n.name)}}});
    } else {
      Dnf local = localCauseImpl(g_, val_, n);
      std::vector<Conjunction> out;
      for (const Conjunction& conj : local.conjunctions()) {
        // Distribute the expansion of every literal into DNF. An empty
        // expansion kills the host conjunction.
        std::vector<Conjunction> acc = {{}};
        for (const Literal& lit : conj) {
          const Dnf& sub = expand(g_.neuronIn(lit.neuron));
          std::vector<Conjunction> next;
          for (const Conjunction& partial : acc) {
            for (const Conjunction& subConj : sub.conjunctions()) {
              Conjunction merged = partial;
              merged.insert(merged.end(), subConj.begin(), subConj.end());
              next.push_back(std::move(merged));
            }
          }
          acc = std::move(next);
          if (acc.empty()) break;
        }
        out.insert(out.end(), std::make_move_iterator(acc.begin()),
                   std::make_move_iterator(acc.end()));
      }
      result = normalizeDnf(g_, Dnf(std::move(out)));
    }
    return memo_.emplace(n.name, std::move(result)).first->second;
  }

 private:
  const Graph& g_;
  const Valuation& val_;
  std::map<std::string, Dnf> memo_;
};

CauseStatement causesOfImpl(const Graph& g, const Valuation& val,
                            const std::string& terminal) {
  const Neuron& t = g.neuronIn(terminal);
  Literal effect{terminal, val.at(terminal)};
  if (isExo(t)) {
    // Degenerate causal chain: the terminal explains itself.
    return {Dnf({{effect}}), effect};
  }
  ChainExpander expander(g, val);
  return {expander.expand(t), effect};
}

}  // namespace

Dnf localCause(const Diagram& d, const std::string& neuron) {
  const Graph& g = d.graph();
  const Neuron& n = g.neuronIn(neuron);
  if (!n.desc.hasFire()) {
    fail(ErrorCode::DomainError,
         "neuron '" + neuron + "' has no firing function to analyze");
  }
  return localCauseImpl(g, evaluate(d), n);
}

CauseStatement causesOf(const Diagram& d, const std::string& terminal) {
  return causesOfImpl(d.graph(), evaluate(d), terminal);
}

Causes causes(const Diagram& d) {
  Valuation val = evaluate(d);
  Causes out;
  for (const auto& t : d.graph().terminals()) {
    out.push_back(causesOfImpl(d.graph(), val, t));
  }
  return out;
}

std::vector<Causes> allCauses(const Graph& g, bool force) {
  std::vector<Causes> out;
  for (const Diagram& d : allDiagrams(g, force)) {
    out.push_back(causes(d));
  }
  return out;
}

std::string formatCauseStatement(const CauseStatement& statement) {
  return formatDnf(statement.cause) + " ==> " +
         formatLiteral(statement.effect);
}

std::string formatCauses(const Causes& causes) {
  std::string out;
  for (std::size_t i = 0; i < causes.size(); ++i) {
    if (i) out += "\n";
    out += formatCauseStatement(causes[i]);
  }
  return out;
}

std::vector<std::vector<SlotLiteral>> primeImplicantOracle(
    const FiringFunction& fire, std::span<const Value> actuals,
    const ValueDomain& domain) {
  const std::size_t k = actuals.size();
  if (k > kMaxOracleArity) {
    fail(ErrorCode::ArityTooLarge,
         "oracle arity " + std::to_string(k) + " exceeds the limit of " +
             std::to_string(kMaxOracleArity));
  }
  const std::size_t m = domain.size();

  // Tabulate the function over every tuple; slot 0 is the most significant
  // digit.
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= m;
  std::vector<std::size_t> table(total);
  std::vector<Value> tuple(k, domain.neutral());
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    for (std::size_t i = k; i > 0; --i) {
      tuple[i - 1] = domain.value(rest % m);
      rest /= m;
    }
    table[t] = fire(tuple).index();
  }
  const std::size_t target = fire(actuals).index();

  // A subset is sufficient when every tuple agreeing with the actuals on
  // the subset's slots hits the target.
  std::vector<std::uint32_t> sufficientMasks;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool ok = true;
    for (std::size_t t = 0; t < total && ok; ++t) {
      std::size_t rest = t;
      bool agrees = true;
      for (std::size_t i = k; i > 0; --i) {
        std::size_t digit = rest % m;
        rest /= m;
        if ((mask & (1u << (i - 1))) && digit != actuals[i - 1].index()) {
          agrees = false;
          break;
        }
      }
      if (agrees && table[t] != target) ok = false;
    }
    if (ok) sufficientMasks.push_back(mask);
  }

  std::vector<std::vector<SlotLiteral>> out;
  for (std::uint32_t mask : sufficientMasks) {
    bool minimal =
        std::none_of(sufficientMasks.begin(), sufficientMasks.end(),
                     [&](std::uint32_t other) {
                       return other != mask && (other & mask) == other;
                     });
    if (!minimal) continue;
    std::vector<SlotLiteral> conj;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) conj.push_back({i, actuals[i]});
    }
    out.push_back(std::move(conj));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<SlotLiteral>& a,
               const std::vector<SlotLiteral>& b) {
              return std::lexicographical_compare(
                  a.begin(), a.end(), b.begin(), b.end(),
                  [](const SlotLiteral& x, const SlotLiteral& y) {
                    return x.slot < y.slot;
                  });
            });
  return out;
}

}  // namespace ncause
