#include <doctest.h>

#include "properties.hpp"

using namespace ncause::test;

namespace {

void expectPass(const std::optional<std::string>& failure) {
  if (failure) FAIL_CHECK(*failure);
}

}  // namespace

TEST_CASE("property: localCause equals the prime-implicant oracle") {
  expectPass(propLocalCauseMatchesOracle(0x5eed0001, 300));
}

TEST_CASE("property: DNF normalization idempotence and antichain") {
  expectPass(propDnfNormalization(0x5eed0002, 500));
}

TEST_CASE("property: evaluation consistency") {
  expectPass(propEvaluationConsistency(0x5eed0003, 300));
}

TEST_CASE("property: changeInputs preserves the graph") {
  expectPass(propChangeInputsPreservesGraph(0x5eed0004, 300));
}

TEST_CASE("property: effects rows agree with asFunction") {
  expectPass(propEffectsMatchAsFunction(0x5eed0005, 200));
}
