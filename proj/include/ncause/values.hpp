#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncause/style.hpp"

namespace ncause {

class Value;

/// A named, finite, ordered set of values a neuron can take on, with a fill
/// style per value. Case 0 plays the "not firing" role for builders that
/// need a neutral case (booleans: False).
class ValueDomain {
 public:
  /// The built-in boolean domain: False (no fill), True (gray fill).
  static ValueDomain boolean();

  /// Declares a new domain. Enumeration order is declaration order.
  /// Throws EmptyDomain (fewer than two cases) or DuplicateCase.
  static ValueDomain declare(std::string name,
                             std::vector<std::pair<std::string, Style>> cases);

  const std::string& name() const;
  std::size_t size() const;
  const std::string& caseName(std::size_t index) const;
  const Style& caseStyle(std::size_t index) const;

  Value value(std::size_t index) const;
  Value neutral() const;  // case 0
  std::vector<Value> enumerate() const;

  /// The value whose case name matches `text`. The boolean domain also
  /// accepts "true"/"false" case-insensitively. Throws UnknownCase.
  Value parse(const std::string& text) const;

  bool isBoolean() const;

  /// Structural equality: name, case names, and case styles.
  bool operator==(const ValueDomain& other) const;
  bool operator!=(const ValueDomain& other) const { return !(*this == other); }

 private:
  struct Data;
  explicit ValueDomain(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
  friend class Value;
};

/// One value of a domain: the domain plus a 0-based case index.
class Value {
 public:
  Value(ValueDomain domain, std::size_t index);

  const ValueDomain& domain() const { return domain_; }
  std::size_t index() const { return index_; }
  const std::string& name() const;
  bool isNeutral() const { return index_ == 0; }

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }

 private:
  ValueDomain domain_;
  std::size_t index_;
};

Value boolValue(bool b);
/// Throws DomainMismatch when the value is not boolean.
bool asBool(const Value& v);

}  // namespace ncause
