#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncause/error.hpp"
#include "ncause/style.hpp"
#include "ncause/values.hpp"

namespace ncause {

/// Whether a neuron marks a decision point (Action) or a hard-wired
/// relationship (Law). Cause inference stops recursing at actions; laws
/// are drawn with a section-mark suffix.
enum class Kind { Action, Law };

const char* kindName(Kind k);

/// An incoming edge: the source neuron by name plus the edge's visual
/// style. The destination is implicit (the neuron owning the description).
struct EdgeRef {
  std::string source;
  Style style;

  bool operator==(const EdgeRef&) const = default;
};

/// Total function from predecessor values (one per edge, in edge order)
/// to the neuron's value, all in the graph's domain.
using FiringFunction = std::function<Value(std::span<const Value>)>;

/// One neuron's behavior behind a uniform interface: kind, optional firing
/// function, node style, and incoming edges. Input descriptions have no
/// firing function and no edges. The identity string is a canonical
/// rendering of the builder expression, used for structural graph equality.
class Description {
 public:
  Description(Kind kind, std::optional<FiringFunction> fire, Style style,
              std::vector<EdgeRef> edges, std::string identity);

  Kind kind() const { return kind_; }
  bool hasFire() const { return fire_.has_value(); }
  const std::optional<FiringFunction>& fire() const { return fire_; }
  const Style& style() const { return style_; }
  const std::vector<EdgeRef>& edges() const { return edges_; }
  const std::string& identity() const { return identity_; }

  Value callFire(std::span<const Value> predecessorValues) const;

 private:
  Kind kind_;
  std::optional<FiringFunction> fire_;
  Style style_;
  std::vector<EdgeRef> edges_;
  std::string identity_;
};

// ---------------------------------------------------------------------------
// Builders

/// Exogenous neuron whose value comes from the diagram's input vector.
Description input();

/// Exogenous neuron pinned to a fixed value. A law by default, so it never
/// shows up as a cause.
Description constVal(Value v);

/// Standard neuron with stimulating (plain-arrowhead) edges. Boolean: fires
/// iff any predecessor fires. Other domains: plurality vote among the
/// non-neutral values present, neutral on a tie or when none are present
/// (which reduces to disjunction on booleans).
Description stimBy(const ValueDomain& domain, std::vector<std::string> sources);

/// Fires iff at least one predecessor did not fire; hollow-arrowhead edges.
/// Boolean only.
Description unstimBy(const ValueDomain& domain,
                     std::vector<std::string> sources);

/// Thick-bordered neuron firing iff at least `threshold` predecessors fire.
/// Boolean only. Throws BadThreshold unless 0 < threshold <= |sources|.
Description thick(const ValueDomain& domain, std::size_t threshold,
                  std::vector<std::string> sources);

/// Diamond-shaped neuron firing iff exactly one predecessor fires.
/// Boolean only.
Description xorBy(const ValueDomain& domain, std::vector<std::string> sources);

/// Pentagon-shaped neuron taking the first non-neutral predecessor value in
/// edge order (predecessors listed in decreasing rank), else neutral.
Description byRank(const ValueDomain& domain, std::vector<std::string> sources);

// ---------------------------------------------------------------------------
// Decorators and composition

/// Adds inhibiting (dot-arrowhead) edges. The wrapped result is overridden
/// to the neutral value whenever any inhibitor carries a non-neutral value;
/// on booleans this is exactly "and none of the inhibitors fire".
/// Throws UndecoratableInput when `d` has no firing function.
Description inhibBy(Description d, const ValueDomain& domain,
                    std::vector<std::string> inhibitors);

/// Replaces only the kind; every other facet is deferred to `d`.
Description isKind(Description d, Kind k);

/// Combines two descriptions: edges concatenated, firing functions joined
/// with disjunction/conjunction, kind and clashing style keys taken from the
/// right operand. Boolean only. Throws UndecoratableInput when either side
/// has no firing function.
Description orD(Description l, Description r, const ValueDomain& domain);
Description andD(Description l, Description r, const ValueDomain& domain);

/// Split-and-combine helper used by the decorators: the resulting function
/// applies the wrapped firing function to the first |d.edges| values,
/// summarizes the rest, and combines the two results.
template <typename Combine, typename Summarize>
FiringFunction extend(const Description& d, Combine combine,
                      Summarize summarize) {
  if (!d.hasFire()) {
    fail(ErrorCode::UndecoratableInput,
         "cannot extend a description without a firing function");
  }
  return [base = *d.fire(), split = d.edges().size(), combine,
          summarize](std::span<const Value> vs) -> Value {
    return combine(base(vs.subspan(0, split)), summarize(vs.subspan(split)));
  };
}

// ---------------------------------------------------------------------------
// Builder registry

/// Argument shapes a builder keyword can take in the surface language.
enum class BuilderShape {
  Bare,        // keyword
  Case,        // keyword(CaseName)
  CountNames,  // keyword(k; a, b, ...)
  Names,       // keyword(a, b, ...)
};

struct BuilderCall {
  std::optional<std::size_t> count;
  std::vector<std::string> names;
  std::string caseName;
};

/// Maps surface keywords to description factories. The standard registry
/// covers the built-in builders and their conditional-logic aliases; users
/// can register new builders to extend the notation.
class BuilderRegistry {
 public:
  using Factory =
      std::function<Description(const ValueDomain&, const BuilderCall&)>;

  BuilderRegistry() = default;

  void add(const std::string& keyword, BuilderShape shape, Factory make);
  bool contains(const std::string& keyword) const;
  BuilderShape shapeOf(const std::string& keyword) const;  // UnknownBuilder

  /// Builds a description. Throws UnknownBuilder for unregistered keywords
  /// and forwards whatever the factory throws.
  Description make(const std::string& keyword, const ValueDomain& domain,
                   const BuilderCall& call) const;

  static const BuilderRegistry& standard();

 private:
  struct Entry {
    BuilderShape shape;
    Factory make;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace ncause
