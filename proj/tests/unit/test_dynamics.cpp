#include <gtest/gtest.h>

#include "nilcantor/dynamics.hpp"
#include "nilcantor/errors.hpp"
#include "nilcantor/oracle.hpp"
#include "reference.hpp"

using namespace nilcantor;

namespace {

ChainSpec wild23() { return wild_chain(2, 1, {}); }
ChainSpec stable_52() { return stable_chain({2, 3}, {1, 1}, {2, 2}, {5}); }

// Product of q_i^(n-r) for l < i <= l'.
Integer family_product(const ChainSpec& chain, Level l, Level lp) {
  Integer out = 1;
  for (Level i = l + 1; i <= lp; ++i) out *= chain.family_prime(i);
  return out;
}

}  // namespace

TEST(Kernel, Examples) {
  EXPECT_EQ(trivial_action_kernel(wild23(), 1, 2), Box(18, 36, 36));
  EXPECT_EQ(trivial_action_kernel(wild23(), 2, 2), box_at(wild23(), 2));
  EXPECT_EQ(trivial_action_kernel(example_41(2), 0, 3), core_at(example_41(2), 3));
  EXPECT_THROW(trivial_action_kernel(wild23(), 3, 2), ContractError);
}

TEST(Kernel, BetweenCoreAndBoxAndAntitone) {
  for (const auto& chain : {example_41(2), example_42(2, 3), stable_52(), wild23(), wild_chain(3, 1, {7})}) {
    for (Level d = 1; d <= 5; ++d) {
      for (Level l = 0; l <= d; ++l) {
        Box k = trivial_action_kernel(chain, l, d);
        ASSERT_TRUE(k.includes(core_at(chain, d)));
        ASSERT_TRUE(box_at(chain, d).includes(k));
        if (l > 0) ASSERT_TRUE(k.includes(trivial_action_kernel(chain, l - 1, d)));
      }
    }
  }
}

TEST(Kernel, MatchesFixingScan) {
  oracle::OracleBudget budget;
  for (const auto& chain : {example_41(2), example_42(2, 3), wild23()}) {
    for (Level d = 1; d <= 2; ++d) {
      for (Level l = 0; l <= d; ++l) {
        Box k = trivial_action_kernel(chain, l, d);
        FiniteQuotient q = quotient_at(chain, d);
        auto fixed = oracle::fixing_scan(chain, l, d, budget);
        ASSERT_EQ(Integer(std::to_string(fixed.size())), index_in(k, q.kernel())) << chain.label() << l << d;
        for (const auto& g : fixed) ASSERT_TRUE(k.contains(g));
      }
    }
  }
}

TEST(LqaWitness, WildFamilyExample) {
  auto r = lqa_witness(wild23(), 1, 2, 2);
  EXPECT_EQ(r.kernel_order, 3);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, (Element{6, 0, 0}));
  EXPECT_EQ(r.kernel_box, trivial_action_kernel(wild23(), 2, 2));
  EXPECT_EQ(r.comparison_box, trivial_action_kernel(wild23(), 1, 2));
  EXPECT_TRUE(r.surjective);
  EXPECT_EQ(r.limit_order, 3);
  EXPECT_THROW(lqa_witness(wild23(), 2, 2, 3), ContractError);
  EXPECT_THROW(lqa_witness(wild23(), 1, 3, 2), ContractError);
}

TEST(LqaWitness, StableChainHasTrivialKernels) {
  auto chain = stable_52();
  for (Level l = 1; l <= 3; ++l)
    for (Level lp = l + 1; lp <= 4; ++lp)
      for (Level d = lp; d <= 4; ++d) {
        auto r = lqa_witness(chain, l, lp, d);
        EXPECT_EQ(r.kernel_order, 1);
        EXPECT_FALSE(r.witness.has_value());
      }
}

TEST(LqaWitness, OrdersFollowTheFamilyProduct) {
  for (const auto& chain : {wild23(), wild_chain(3, 1, {}), wild_chain(2, 1, {2})}) {
    std::uint64_t delta = family_defect(chain);
    auto n = chain.family()->base[1];
    auto r = chain.family()->base[0];
    ASSERT_EQ(delta, n - r);
    for (Level l = 1; l <= 3; ++l)
      for (Level lp = l + 1; lp <= 4; ++lp) {
        Integer expected = 1;
        for (Level i = l + 1; i <= lp; ++i) expected *= pow(chain.family_prime(i), n - r);
        ASSERT_EQ(eventual_kernel_order(chain, l, lp), expected);
        for (Level d = lp; d <= 5; ++d) ASSERT_EQ(lqa_witness(chain, l, lp, d).kernel_order, expected);
      }
  }
  EXPECT_EQ(family_product(wild23(), 1, 3), 15);
}

// The witness fixes every depth-d coset inside U_l' and moves one inside U_l.
TEST(LqaWitness, WitnessActsAsClaimed) {
  for (const auto& chain : {wild23(), example_41(2), example_42(2, 3)}) {
    for (Level l = 1; l <= 2; ++l)
      for (Level lp = l + 1; lp <= 3; ++lp) {
        Level d = lp;
        auto r = lqa_witness(chain, l, lp, d);
        if (!r.witness) continue;
        Box inner = box_at(chain, d);
        if (index_in(Box::whole(), inner) > 50'000) continue;
        CosetSpace space(inner);
        const Element& w = *r.witness;
        bool fixes_small = true, moves_big = false;
        for (const auto& x : space.representatives()) {
          bool moved = act(space, w, x) != x;
          if (box_at(chain, lp).contains(x)) fixes_small = fixes_small && !moved;
          if (box_at(chain, l).contains(x)) moves_big = moves_big || moved;
        }
        EXPECT_TRUE(fixes_small) << chain.label();
        EXPECT_TRUE(moves_big) << chain.label();
      }
  }
}

TEST(Wildness, WildFamily) {
  auto cert = wildness_certificate(wild_chain(2, 1, {}), 3, 5);
  ASSERT_TRUE(std::holds_alternative<WildEvidence>(cert.verdict)) << verdict_name(cert.verdict);
  EXPECT_EQ(cert.grade, EvidenceGrade::ScheduleCertified);
  std::map<std::pair<Level, Level>, Integer> expected{{{1, 2}, 3}, {{1, 3}, 15}, {{2, 3}, 5}};
  ASSERT_EQ(cert.pairs.size(), 3u);
  for (const auto& p : cert.pairs) {
    EXPECT_TRUE(p.persistent);
    for (const auto& r : p.by_depth) EXPECT_EQ(r.kernel_order, (expected[{p.level, p.level_prime}]));
  }
}

TEST(Wildness, StableExamples) {
  for (const auto& chain : {stable_52(), example_41(2), example_42(2, 3)}) {
    auto cert = wildness_certificate(chain, 3, 4);
    auto* s = std::get_if<StableCertified>(&cert.verdict);
    ASSERT_NE(s, nullptr) << chain.label() << " " << verdict_name(cert.verdict);
    EXPECT_LE(s->stable_from, 2u);
  }
  EXPECT_THROW(wildness_certificate(stable_52(), 1, 4), ContractError);
  EXPECT_THROW(wildness_certificate(stable_52(), 3, 2), ContractError);
}

TEST(Wildness, LateStabilizationIsInconclusive) {
  // Before level 4 the c base of 2 is not yet offset by b, so the fixer
  // limits at 2 still move between levels 3 and 4.
  const CoordinateSchedule a2{1, 1, 0}, b2{4, 5, 1}, c2{4, 6, 0}, sloped{1, 0, 1};
  auto chain = ChainSpec::create("late", {{2, {a2, b2, c2}}, {3, {sloped, sloped, sloped}}}, std::nullopt, false);
  EXPECT_EQ(explicit_stabilization_level(chain), 4u);
  auto cert = wildness_certificate(chain, 3, 4);
  EXPECT_TRUE(std::holds_alternative<Inconclusive>(cert.verdict)) << verdict_name(cert.verdict);
  auto later = wildness_certificate(chain, 6, 7);
  EXPECT_TRUE(std::holds_alternative<StableCertified>(later.verdict)) << verdict_name(later.verdict);
}

TEST(Freeness, WildFamilyIsFree) {
  auto cert = freeness_certificate(wild23(), 1, 100, 6);
  auto* f = std::get_if<FreeCertified>(&cert.verdict);
  ASSERT_NE(f, nullptr) << verdict_name(cert.verdict);
  EXPECT_LE(f->max_escape_depth, 6u);
  EXPECT_EQ(escape_depth(wild23(), 1, {0, 0, 4}, 6), 2u);
  EXPECT_EQ(escape_depth(wild23(), 1, {2, 0, 0}, 6), 2u);
  EXPECT_EQ(escape_depth(wild23(), 1, {1, 0, 0}, 6), 1u);
}

TEST(Freeness, ConstantCentreIsNotFree) {
  CoordinateSchedule sloped{1, 0, 1}, constant{1, 2, 0};
  auto chain = ChainSpec::create("flat-c", {{2, {sloped, sloped, constant}}}, std::nullopt, false);
  auto cert = freeness_certificate(chain, 1, 10, 5);
  auto* nf = std::get_if<NotFree>(&cert.verdict);
  ASSERT_NE(nf, nullptr) << verdict_name(cert.verdict);
  EXPECT_EQ(nf->coordinate, Coord::C);
  EXPECT_EQ(nf->witness, (Element{0, 0, 4}));
}

TEST(Freeness, ShallowDepthIsInconclusive) {
  auto cert = freeness_certificate(wild23(), 1, 100, 2);
  EXPECT_TRUE(std::holds_alternative<Inconclusive>(cert.verdict));
}

TEST(Discriminant, Examples) {
  auto ex41 = discriminant_limit_report(example_41(2), 1, 4);
  EXPECT_EQ(ex41.orders, (std::vector<Integer>{4, 1, 1, 1}));
  EXPECT_TRUE(ex41.stabilized);
  EXPECT_EQ(ex41.limit_order, 1);

  auto ex42 = discriminant_limit_report(example_42(2, 3), 1, 4);
  EXPECT_EQ(ex42.orders, (std::vector<Integer>{6, 6, 6, 6}));
  EXPECT_TRUE(ex42.stabilized);

  auto single = discriminant_limit_report(example_42(2, 3), 3, 3);
  EXPECT_EQ(single.orders.size(), 1u);
  EXPECT_EQ(single.orders[0], discriminant_level(example_42(2, 3), 3).order());

  auto st = discriminant_limit_report(stable_52(), 1, 3);
  EXPECT_TRUE(st.stabilized);
  EXPECT_EQ(st.orders.back(), 6);
}

// Chains with finitely many primes never yield WildEvidence.
TEST(Wildness, FiniteSpectrumNeverWild) {
  std::mt19937_64 rng(31);
  const std::vector<Prime> pool{2, 3, 5, 7};
  int built = 0;
  while (built < 30) {
    std::vector<PrimeSchedule> schedules;
    for (Prime p : pool) {
      if (ref::uniform(rng, 0, 1)) continue;
      PrimeSchedule s{p, {}};
      for (auto& c : s.coords) c = {static_cast<Level>(ref::uniform(rng, 1, 3)), static_cast<std::uint64_t>(ref::uniform(rng, 0, 2)),
                                    static_cast<std::uint64_t>(ref::uniform(rng, 0, 2))};
      schedules.push_back(s);
    }
    try {
      auto chain = ChainSpec::create("random", schedules, std::nullopt, false);
      ++built;
      auto cert = wildness_certificate(chain, 3, 5);
      ASSERT_FALSE(std::holds_alternative<WildEvidence>(cert.verdict)) << chain.to_config();
    } catch (const ContractError&) {
    }
  }
}
