#include <gtest/gtest.h>

#include <cstdlib>

#include "nilcantor/errors.hpp"
#include "nilcantor/oracle.hpp"

using namespace nilcantor;
using namespace nilcantor::oracle;

TEST(Oracle, CoreExamples) {
  EXPECT_EQ(core_by_enumeration(Box(2, 2, 4)), Box(4, 4, 4));
  EXPECT_EQ(core_by_enumeration(Box(2, 3, 6)), Box(6, 6, 6));
  EXPECT_EQ(core_by_enumeration(Box(1, 1, 1)), Box(1, 1, 1));
  EXPECT_EQ(relative_core_by_enumeration(Box(2, 4, 4), Box(6, 36, 36)), Box(18, 36, 36));
}

TEST(Oracle, FixingScanOfTheWholeGroupIsTheCore) {
  // With outer = Γ the fixer of all cosets is core(inner), which has index
  // |N / core| inside the scan modulus N.
  for (const Box& inner : {Box(2, 2, 4), Box(2, 3, 6), Box(3, 1, 3)}) {
    auto fixed = fixing_scan(Box::whole(), inner);
    Box c = core(inner);
    for (const auto& g : fixed) EXPECT_TRUE(c.contains(g)) << inner.to_string();
    Box n(inner.ma() * inner.mc(), inner.mb() * inner.mc(), inner.mc());
    EXPECT_EQ(Integer(std::to_string(fixed.size())), index_in(c, n)) << inner.to_string();
  }
}

TEST(Oracle, CosetPartition) {
  CosetPartition part(Box(2, 2, 4));
  EXPECT_EQ(part.points().size(), 4u * 4u * 8u);
  EXPECT_EQ(part.class_count(), 16u);
  for (std::size_t i = 0; i < part.points().size(); ++i)
    EXPECT_EQ(part.class_of(part.points()[i]), part.classes()[i]);
  EXPECT_EQ(part.class_of({100, 100, 100}), part.class_of({0, 0, 0}));
}

TEST(Oracle, ClosedFormsAgreeOnSmallBoxes) {
  for (const auto& [outer, inner] : random_nested_pairs(80, 8, 3)) {
    auto check = check_closed_forms(outer, inner);
    EXPECT_TRUE(check.ok()) << outer.to_string() << " " << inner.to_string();
  }
}

TEST(Oracle, AllBoxesAreValidAndComplete) {
  auto boxes = all_boxes(4);
  for (const Box& b : boxes) {
    EXPECT_TRUE(divides(b.mc(), b.ma() * b.mb()));
    EXPECT_LE(b.ma(), 4);
  }
  std::size_t expected = 0;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c) expected += (a * b) % c == 0;
  EXPECT_EQ(boxes.size(), expected);
}

TEST(Oracle, RandomPairsAreSeededAndNested) {
  auto x = random_nested_pairs(50, 12, 9), y = random_nested_pairs(50, 12, 9);
  ASSERT_EQ(x.size(), 50u);
  EXPECT_EQ(x, y);
  for (const auto& [outer, inner] : x) EXPECT_TRUE(outer.includes(inner));
}

TEST(OracleBudget, ParseAndValidate) {
  auto b = OracleBudget::parse("max_modulus=20, seed=7");
  EXPECT_EQ(b.max_modulus, 20u);
  EXPECT_EQ(b.seed, 7u);
  EXPECT_EQ(b.random_trials, 1000u);
  EXPECT_THROW(OracleBudget::parse("colour=3"), ContractError);
  EXPECT_THROW(OracleBudget::parse("max_modulus=x"), ContractError);
  EXPECT_THROW(OracleBudget::parse("max_modulus=0").validate(), ContractError);
}

TEST(OracleBudget, Environment) {
  ::setenv("NILCANTOR_ORACLE_BUDGET", "random_trials=5", 1);
  EXPECT_EQ(OracleBudget::from_environment().random_trials, 5u);
  ::unsetenv("NILCANTOR_ORACLE_BUDGET");
  EXPECT_EQ(OracleBudget::from_environment().random_trials, 1000u);
}

TEST(OracleBudget, LimitsRaiseResourceError) {
  EXPECT_THROW(core_by_enumeration(Box(16, 16, 16)), ResourceError);
  OracleBudget tiny;
  tiny.max_group_order = 10;
  EXPECT_THROW(fixing_scan(Box(2, 2, 4), Box(4, 4, 4), tiny), ResourceError);
}
