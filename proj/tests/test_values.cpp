#include <doctest.h>

#include "ncause/error.hpp"
#include "ncause/values.hpp"
#include "testutil.hpp"

using namespace ncause;
using test::orderDomain;

TEST_CASE("boolean domain enumerates False then True") {
  ValueDomain bools = ValueDomain::boolean();
  auto values = bools.enumerate();
  REQUIRE(values.size() == 2);
  CHECK(values[0].name() == "False");
  CHECK(values[1].name() == "True");
  CHECK(values[0].isNeutral());
  CHECK_FALSE(values[1].isNeutral());
}

TEST_CASE("boolean fill styles") {
  ValueDomain bools = ValueDomain::boolean();
  CHECK(bools.caseStyle(0).empty());
  Style t = resolveStyle(bools.caseStyle(1));
  REQUIRE(t.size() == 2);
  CHECK(t[0] == StyleAttr{"style", "filled"});
  CHECK(t[1] == StyleAttr{"fillcolor", "gray"});
}

TEST_CASE("declared Order domain") {
  ValueDomain order = orderDomain();
  auto values = order.enumerate();
  REQUIRE(values.size() == 3);
  CHECK(values[0].name() == "None");
  CHECK(values[1].name() == "Charge");
  CHECK(values[2].name() == "Retreat");
  CHECK(hasStyleKey(order.caseStyle(1), "fillcolor"));
  CHECK(resolveStyle(order.caseStyle(2))[1].second == "orangered");
}

TEST_CASE("two-case domain behaves like a renamed boolean under enumeration") {
  ValueDomain lamp =
      ValueDomain::declare("Lamp", {{"Off", Style{}}, {"On", Style{}}});
  auto values = lamp.enumerate();
  REQUIRE(values.size() == 2);
  CHECK(values[0].isNeutral());
  CHECK(values[1].index() == 1);
  CHECK_FALSE(lamp.isBoolean());
}

TEST_CASE("domain declaration errors") {
  try {
    ValueDomain::declare("X", {});
    FAIL("expected EmptyDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDomain);
  }
  try {
    ValueDomain::declare("X", {{"A", Style{}}, {"A", Style{}}});
    FAIL("expected DuplicateCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateCase);
  }
}

TEST_CASE("parse accepts case names, booleans case-insensitively") {
  ValueDomain bools = ValueDomain::boolean();
  CHECK(bools.parse("true") == boolValue(true));
  CHECK(bools.parse("FALSE") == boolValue(false));
  CHECK(bools.parse("True") == boolValue(true));

  ValueDomain order = orderDomain();
  CHECK(order.parse("Charge").index() == 1);
  try {
    order.parse("Flee");
    FAIL("expected UnknownCase");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCase);
  }
  // non-boolean domains match case names exactly
  CHECK_THROWS_AS(order.parse("charge"), Error);
}

TEST_CASE("print/parse round-trip over all values") {
  for (const ValueDomain& d : {ValueDomain::boolean(), orderDomain()}) {
    std::set<std::string> seen;
    for (const Value& v : d.enumerate()) {
      CHECK(d.parse(v.name()) == v);
      CHECK(seen.insert(v.name()).second);
    }
  }
}

TEST_CASE("value equality is domain plus index") {
  CHECK(boolValue(true) == boolValue(true));
  CHECK(boolValue(true) != boolValue(false));
  CHECK(orderDomain().value(1) != boolValue(true));
  // structurally equal domains compare equal even across instances
  CHECK(orderDomain().value(2) == orderDomain().value(2));
}

TEST_CASE("asBool rejects non-boolean values") {
  CHECK(asBool(boolValue(true)));
  CHECK_THROWS_AS(asBool(orderDomain().value(1)), Error);
}
