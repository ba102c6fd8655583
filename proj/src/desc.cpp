#include "ncause/desc.hpp"

#include <algorithm>
#include <sstream>

namespace ncause {

const char* kindName(Kind k) { return k == Kind::Action ? "action" : "law"; }

Description::Description(Kind kind, std::optional<FiringFunction> fire,
                         Style style, std::vector<EdgeRef> edges,
                         std::string identity)
    : kind_(kind),
      fire_(std::move(fire)),
      style_(std::move(style)),
      edges_(std::move(edges)),
      identity_(std::move(identity)) {}

Value Description::callFire(std::span<const Value> predecessorValues) const {
  if (!fire_) {
    fail(ErrorCode::DomainError,
         "description '" + identity_ + "' has no firing function");
  }
  return (*fire_)(predecessorValues);
}

namespace {

std::string joinNames(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

std::vector<EdgeRef> plainEdges(const std::vector<std::string>& sources) {
  std::vector<EdgeRef> edges;
  edges.reserve(sources.size());
  for (const auto& s : sources) edges.push_back({s, Style{}});
  return edges;
}

void requireBoolean(const ValueDomain& domain, const std::string& what) {
  if (!domain.isBoolean()) {
    fail(ErrorCode::DomainMismatch,
         what + " requires the boolean domain, got '" + domain.name() + "'");
  }
}

/// Plurality vote among the non-neutral values present; neutral on a tie or
/// when every predecessor is neutral. Disjunction on booleans.
FiringFunction resolveFire(ValueDomain domain) {
  return [domain](std::span<const Value> vs) -> Value {
    std::vector<std::size_t> counts(domain.size(), 0);
    for (const Value& v : vs) counts[v.index()]++;
    std::size_t bestIndex = 0;
    std::size_t bestCount = 0;
    bool tie = false;
    for (std::size_t i = 1; i < counts.size(); ++i) {
      if (counts[i] > bestCount) {
        bestCount = counts[i];
        bestIndex = i;
        tie = false;
      } else if (counts[i] == bestCount && counts[i] > 0) {
        tie = true;
      }
    }
    if (bestCount == 0 || tie) return domain.neutral();
    return domain.value(bestIndex);
  };
}

}  // namespace

Description input() {
  return Description(Kind::Action, std::nullopt, Style{}, {}, "input");
}

Description constVal(Value v) {
  return Description(
      Kind::Law,
      FiringFunction([v](std::span<const Value>) { return v; }), Style{}, {},
      "const(" + v.name() + ")");
}

Description stimBy(const ValueDomain& domain,
                   std::vector<std::string> sources) {
  std::string identity = "stim(" + joinNames(sources) + ")";
  return Description(Kind::Law, resolveFire(domain), Style{},
                     plainEdges(sources), std::move(identity));
}

Description unstimBy(const ValueDomain& domain,
                     std::vector<std::string> sources) {
  requireBoolean(domain, "unstim");
  std::vector<EdgeRef> edges;
  for (const auto& s : sources) edges.push_back({s, {{"arrowhead", "empty"}}});
  FiringFunction fire = [domain](std::span<const Value> vs) -> Value {
    for (const Value& v : vs) {
      if (v.isNeutral()) return domain.value(1);
    }
    return domain.neutral();
  };
  return Description(Kind::Law, std::move(fire), Style{}, std::move(edges),
                     "unstim(" + joinNames(sources) + ")");
}

Description thick(const ValueDomain& domain, std::size_t threshold,
                  std::vector<std::string> sources) {
  requireBoolean(domain, "thick");
  if (threshold == 0 || threshold > sources.size()) {
    fail(ErrorCode::BadThreshold,
         "thick threshold " + std::to_string(threshold) +
             " must be between 1 and " + std::to_string(sources.size()));
  }
  FiringFunction fire = [domain, threshold](std::span<const Value> vs) {
    std::size_t firing = 0;
    for (const Value& v : vs) {
      if (!v.isNeutral()) firing++;
    }
    return domain.value(firing >= threshold ? 1 : 0);
  };
  std::string identity =
      "thick(" + std::to_string(threshold) + ";" + joinNames(sources) + ")";
  return Description(Kind::Law, std::move(fire), {{"penwidth", "3"}},
                     plainEdges(sources), std::move(identity));
}

Description xorBy(const ValueDomain& domain,
                  std::vector<std::string> sources) {
  requireBoolean(domain, "xor");
  FiringFunction fire = [domain](std::span<const Value> vs) {
    std::size_t firing = 0;
    for (const Value& v : vs) {
      if (!v.isNeutral()) firing++;
    }
    return domain.value(firing == 1 ? 1 : 0);
  };
  return Description(Kind::Law, std::move(fire), {{"shape", "diamond"}},
                     plainEdges(sources), "xor(" + joinNames(sources) + ")");
}

Description byRank(const ValueDomain& domain,
                   std::vector<std::string> sources) {
  FiringFunction fire = [domain](std::span<const Value> vs) -> Value {
    for (const Value& v : vs) {
      if (!v.isNeutral()) return v;
    }
    return domain.neutral();
  };
  return Description(Kind::Law, std::move(fire), {{"shape", "pentagon"}},
                     plainEdges(sources), "byrank(" + joinNames(sources) + ")");
}

Description inhibBy(Description d, const ValueDomain& domain,
                    std::vector<std::string> inhibitors) {
  if (!d.hasFire()) {
    fail(ErrorCode::UndecoratableInput,
         "cannot add inhibiting edges to an input description");
  }
  std::vector<EdgeRef> edges = d.edges();
  for (const auto& s : inhibitors) {
    edges.push_back({s, {{"arrowhead", "dot"}}});
  }
  FiringFunction fire = extend(
      d,
      [domain](const Value& v, bool overridden) {
        return overridden ? domain.neutral() : v;
      },
      [](std::span<const Value> back) {
        return std::any_of(back.begin(), back.end(),
                           [](const Value& v) { return !v.isNeutral(); });
      });
  std::string identity =
      "inhib(" + d.identity() + ";" + joinNames(inhibitors) + ")";
  return Description(d.kind(), std::move(fire), d.style(), std::move(edges),
                     std::move(identity));
}

Description isKind(Description d, Kind k) {
  std::string identity =
      "kind(" + d.identity() + ";" + std::string(kindName(k)) + ")";
  return Description(k, d.fire(), d.style(), d.edges(), std::move(identity));
}

namespace {

Description combineD(Description l, Description r, const ValueDomain& domain,
                     bool isOr) {
  requireBoolean(domain, isOr ? "'||'" : "'&&'");
  if (!l.hasFire() || !r.hasFire()) {
    fail(ErrorCode::UndecoratableInput,
         "both operands of a composition need firing functions");
  }
  std::vector<EdgeRef> edges = l.edges();
  edges.insert(edges.end(), r.edges().begin(), r.edges().end());
  FiringFunction rightFire = *r.fire();
  FiringFunction fire = extend(
      l,
      [domain, isOr](const Value& a, const Value& b) {
        bool lv = a.index() != 0;
        bool rv = b.index() != 0;
        return domain.value((isOr ? (lv || rv) : (lv && rv)) ? 1 : 0);
      },
      [rightFire](std::span<const Value> back) { return rightFire(back); });
  std::string identity = std::string(isOr ? "or(" : "and(") + l.identity() +
                         "," + r.identity() + ")";
  return Description(r.kind(), std::move(fire),
                     mergeStyles(l.style(), r.style()), std::move(edges),
                     std::move(identity));
}

}  // namespace

Description orD(Description l, Description r, const ValueDomain& domain) {
  return combineD(std::move(l), std::move(r), domain, true);
}

Description andD(Description l, Description r, const ValueDomain& domain) {
  return combineD(std::move(l), std::move(r), domain, false);
}

// ---------------------------------------------------------------------------
// Builder registry

void BuilderRegistry::add(const std::string& keyword, BuilderShape shape,
                          Factory make) {
  entries_[keyword] = Entry{shape, std::move(make)};
}

bool BuilderRegistry::contains(const std::string& keyword) const {
  return entries_.count(keyword) > 0;
}

BuilderShape BuilderRegistry::shapeOf(const std::string& keyword) const {
  auto it = entries_.find(keyword);
  if (it == entries_.end()) {
    fail(ErrorCode::UnknownBuilder, "unknown builder '" + keyword + "'");
  }
  return it->second.shape;
}

Description BuilderRegistry::make(const std::string& keyword,
                                  const ValueDomain& domain,
                                  const BuilderCall& call) const {
  auto it = entries_.find(keyword);
  if (it == entries_.end()) {
    fail(ErrorCode::UnknownBuilder, "unknown builder '" + keyword + "'");
  }
  return it->second.make(domain, call);
}

const BuilderRegistry& BuilderRegistry::standard() {
  static const BuilderRegistry reg = [] {
    BuilderRegistry r;
    r.add("input", BuilderShape::Bare,
          [](const ValueDomain&, const BuilderCall&) { return input(); });
    r.add("const", BuilderShape::Case,
          [](const ValueDomain& d, const BuilderCall& c) {
            return constVal(d.parse(c.caseName));
          });
    auto stim = [](const ValueDomain& d, const BuilderCall& c) {
      return stimBy(d, c.names);
    };
    auto unstim = [](const ValueDomain& d, const BuilderCall& c) {
      return unstimBy(d, c.names);
    };
    r.add("stim", BuilderShape::Names, stim);
    r.add("if_", BuilderShape::Names, stim);
    r.add("ifany", BuilderShape::Names, stim);
    r.add("unstim", BuilderShape::Names, unstim);
    r.add("ifnot", BuilderShape::Names, unstim);
    r.add("thick", BuilderShape::CountNames,
          [](const ValueDomain& d, const BuilderCall& c) {
            return thick(d, c.count.value_or(0), c.names);
          });
    r.add("ifall", BuilderShape::Names,
          [](const ValueDomain& d, const BuilderCall& c) {
            return thick(d, c.names.size(), c.names);
          });
    r.add("xor", BuilderShape::Names,
          [](const ValueDomain& d, const BuilderCall& c) {
            return xorBy(d, c.names);
          });
    r.add("byrank", BuilderShape::Names,
          [](const ValueDomain& d, const BuilderCall& c) {
            return byRank(d, c.names);
          });
    return r;
  }();
  return reg;
}

}  // namespace ncause
