#include <gtest/gtest.h>

#include "nilcantor/errors.hpp"
#include "nilcantor/oracle.hpp"
#include "nilcantor/towers.hpp"
#include "reference.hpp"

using namespace nilcantor;

namespace {

ChainSpec stable_52() { return stable_chain({2, 3}, {1, 1}, {2, 2}, {5}); }

Element random_residue(std::mt19937_64& rng, const FiniteQuotient& q) {
  return {ref::uniform(rng, 0, to_int64(q.a_mod()) - 1), ref::uniform(rng, 0, to_int64(q.b_mod()) - 1),
          ref::uniform(rng, 0, to_int64(q.c_mod()) - 1)};
}

}  // namespace

TEST(Chain, BoxExamples) {
  EXPECT_EQ(box_at(example_41(2), 2), Box(4, 4, 16));
  EXPECT_EQ(box_at(example_42(2, 3), 1), Box(2, 3, 6));
  EXPECT_EQ(box_at(wild_chain(2, 1, {}), 2), Box(6, 36, 36));
  EXPECT_EQ(box_at(stable_52(), 1), Box(30, 180, 180));
  EXPECT_THROW(box_at(example_41(2), 0), ContractError);
}

TEST(Chain, CoreExamples) {
  auto ex41 = example_41(2);
  for (Level l = 1; l <= 4; ++l) {
    EXPECT_EQ(core_at(ex41, l), Box(pow(2, 2 * l), pow(2, 2 * l), pow(2, 2 * l)));
  }
  auto s = stable_52();
  for (Level l = 1; l <= 4; ++l) {
    Integer n = 36 * pow(5, l);
    EXPECT_EQ(core_at(s, l), Box(n, n, n));
  }
}

TEST(Chain, QuotientAndDiscriminantExamples) {
  EXPECT_EQ(quotient_at(example_42(2, 3), 1).order(), 216);
  EXPECT_EQ(quotient_at(example_41(2), 1).order(), 64);
  EXPECT_EQ(discriminant_level(example_41(2), 1).order(), 4);
  EXPECT_EQ(discriminant_level(example_42(2, 3), 1).order(), 6);
  EXPECT_EQ(discriminant_level(stable_52(), 1).order(), 6);
  EXPECT_EQ(FiniteQuotient(8, 8, 8).order(), 512);
}

TEST(Chain, StableImageExamples) {
  EXPECT_TRUE(stable_image(example_41(2), 1, 2).is_trivial());
  EXPECT_EQ(stable_image(example_42(2, 3), 1, 2).order(), 6);
  auto ex42 = example_42(2, 3);
  EXPECT_TRUE(stable_image(ex42, 2, 2).same_as(discriminant_level(ex42, 2)));
  EXPECT_THROW(stable_image(ex42, 2, 1), ContractError);
}

TEST(Chain, BoxFastPathMatchesClosure) {
  ClosureOptions enumerate{true, 1'000'000};
  for (const auto& chain : {example_41(2), example_42(2, 3), stable_52(), wild_chain(2, 1, {})}) {
    for (Level l = 1; l <= 2; ++l) {
      auto fast = discriminant_level(chain, l);
      auto slow = discriminant_level(chain, l, enumerate);
      ASSERT_EQ(fast.order(), slow.order()) << chain.label() << " l=" << l;
      ASSERT_TRUE(fast.same_as(slow));
      ASSERT_TRUE(slow.same_as(fast));
      for (Level d = l; d <= 3; ++d) {
        auto img = stable_image(chain, l, d);
        if (img.ambient().order() > 200'000) continue;
        ASSERT_TRUE(img.same_as(stable_image(chain, l, d, enumerate))) << chain.label() << " " << l << "," << d;
      }
    }
  }
}

TEST(Chain, ClosureRespectsCap) {
  EXPECT_THROW(discriminant_level(example_41(2), 3, ClosureOptions{true, 10}), ResourceError);
}

TEST(Chain, SteinitzOrderExamples) {
  auto ex41 = steinitz_order(example_41(2), 4);
  EXPECT_EQ(ex41.finite.to_string(), "2^16");
  EXPECT_EQ(ex41.limit.to_string(), "2^inf");
  EXPECT_EQ(ex41.certified_infinite, (std::set<Prime>{2}));
  EXPECT_EQ(steinitz_order(example_42(2, 3), 3).limit.to_string(), "2^inf * 3^inf");
  // |X_l| = M_l·N_l² puts r + 2n = 5 on each of 2 and 3.
  EXPECT_EQ(steinitz_order(stable_52(), 4).limit.to_string(), "2^5 * 3^5 * 5^inf");
  EXPECT_EQ(steinitz_order(stable_52(), 4).finite.multiplicity(5), Multiplicity(12));
  auto wild = steinitz_order(wild_chain(2, 1, {}), 3);
  ASSERT_TRUE(wild.limit.tail().has_value());
  EXPECT_EQ(wild.limit.tail()->exponent, 5u);
  EXPECT_EQ(wild.finite.to_string(), "2^5 * 3^5 * 5^5");
}

TEST(Chain, ValidationNamesTheViolation) {
  CoordinateSchedule zero{}, one{1, 0, 1}, two{1, 0, 2};
  EXPECT_THROW(ChainSpec::create("x", {{4, {one, one, one}}}), ContractError);
  EXPECT_THROW(ChainSpec::create("x", {{2, {one, one, one}}, {2, {one, one, one}}}), ContractError);
  EXPECT_THROW(ChainSpec::create("x", {{2, {zero, zero, zero}}}), ContractError);
  // c grows faster than a + b: no longer a subgroup.
  EXPECT_THROW(ChainSpec::create("x", {{2, {one, zero, two}}}), ContractError);
  // Bounded b coordinate.
  try {
    ChainSpec::create("x", {{2, {one, zero, one}}});
    FAIL();
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("coordinate b"), std::string::npos);
  }
  EXPECT_NO_THROW(ChainSpec::create("x", {{2, {one, zero, one}}}, std::nullopt, false));
  // Constant schedules never descend.
  const CoordinateSchedule flat{1, 1, 0};
  EXPECT_THROW(ChainSpec::create("x", {{2, {flat, flat, flat}}}, std::nullopt, false), ContractError);
  EXPECT_THROW(wild_chain(2, 2, {}), ContractError);
  EXPECT_THROW(stable_chain({2}, {3}, {2}, {5}), ContractError);
  EXPECT_THROW(stable_chain({2}, {1}, {2}, {2}), ContractError);
  EXPECT_THROW(stable_chain({2}, {1}, {2}, {}), ContractError);
}

TEST(Chain, BuiltinReferences) {
  EXPECT_EQ(resolve_builtin("ex41(2)").label(), "ex41(2)");
  EXPECT_EQ(box_at(resolve_builtin("ex42(2,3)"), 1), Box(2, 3, 6));
  EXPECT_EQ(box_at(resolve_builtin("stable(2,3;1,1;2,2;5)"), 1), box_at(stable_52(), 1));
  EXPECT_EQ(box_at(resolve_builtin("wild(2;1;)"), 2), Box(6, 36, 36));
  EXPECT_EQ(resolve_builtin("wild(2;1;;branch(01;0))").family()->set.id(), "branch(01;0)");
  EXPECT_THROW(resolve_builtin("ex43(2)"), ContractError);
  EXPECT_THROW(resolve_builtin("ex41"), ContractError);
}

TEST(Chain, FamilyPrimesSkipExplicitOnes) {
  auto chain = wild_chain(2, 1, {3});
  EXPECT_EQ(chain.family_prime(1), 2u);
  EXPECT_EQ(chain.family_prime(2), 5u);
  EXPECT_EQ(chain.family_prime(3), 7u);
}

TEST(ChainConfig, RoundTrips) {
  for (const auto& chain : {example_41(3), example_42(2, 5), stable_52(), wild_chain(3, 1, {5, 7}),
                            resolve_builtin("wild(2;1;;branch(01;0))")}) {
    auto text = chain.to_config();
    auto back = ChainSpec::parse_config(text);
    EXPECT_EQ(back.to_config(), text);
    EXPECT_EQ(back.label(), chain.label());
    for (Level l = 1; l <= 4; ++l) EXPECT_EQ(box_at(back, l), box_at(chain, l));
  }
}

TEST(ChainConfig, ParsesHandWrittenFiles) {
  auto chain = ChainSpec::parse_config(R"(# ex41 at p = 2
label my chain
prime=2 coord=a start=1 base=0 slope=1
prime=2 coord=b start=1 slope=1

prime=2 coord=c start=1 base=0 slope=2
)");
  EXPECT_EQ(chain.label(), "my chain");
  EXPECT_EQ(box_at(chain, 3), Box(8, 8, 64));

  auto bounded = ChainSpec::parse_config(
      "trivial_intersection=false\nprime=2 coord=a slope=1 start=1\nprime=2 coord=b slope=1 start=1\n"
      "prime=2 coord=c base=2 start=1\n");
  EXPECT_FALSE(bounded.trivial_intersection());
  EXPECT_EQ(box_at(bounded, 5), Box(32, 32, 4));
}

TEST(ChainConfig, ErrorsCarryLineAndColumn) {
  auto message = [](const std::string& text) {
    try {
      ChainSpec::parse_config(text);
    } catch (const ContractError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message("prime=2 coord=a slope=1\nprime=2 coord=d slope=1\n"),
            "line 2, column 9: coord must be a, b or c");
  EXPECT_EQ(message("prime=4 coord=a\n"), "line 1, column 1: 4 is not prime");
  EXPECT_EQ(message("\n  bogus line\n"), "line 2, column 3: unrecognized line starting with 'bogus'");
  EXPECT_EQ(message("prime=2 coord=a slope=x\n"), "line 1, column 17: expected a nonnegative integer in 'slope=x'");
  EXPECT_EQ(message("prime=2 coord=a colour=red\n"), "line 1, column 17: unknown key 'colour'");
  EXPECT_EQ(message("family qi coord=a start=i base=1 slope=1\n"), "line 1, column 34: family slope must be 0");
  EXPECT_EQ(message("prime=2 coord=a slope=1\nprime=2 coord=a slope=2\n"),
            "line 2, column 9: coordinate given twice for prime 2");
  // Schedule violations are reported after parsing.
  EXPECT_NE(message("prime=2 coord=a slope=1 start=1\n").find("coordinate b"), std::string::npos);
}

TEST(FiniteQuotient, ProductIsWellDefinedOnResidues) {
  std::mt19937_64 rng(21);
  for (auto [a, b, c] : std::vector<std::array<int, 3>>{{4, 4, 4}, {6, 6, 6}, {12, 18, 6}, {8, 4, 2}}) {
    FiniteQuotient q(a, b, c);
    for (int i = 0; i < 300; ++i) {
      Element x = random_residue(rng, q), y = random_residue(rng, q);
      // Shift both representatives by random multiples of the moduli.
      Element x2{x.a + a * ref::uniform(rng, -5, 5), x.b + b * ref::uniform(rng, -5, 5), x.c + c * ref::uniform(rng, -5, 5)};
      Element y2{y.a + a * ref::uniform(rng, -5, 5), y.b + b * ref::uniform(rng, -5, 5), y.c + c * ref::uniform(rng, -5, 5)};
      ASSERT_EQ(q.multiply(x, y), q.reduce(multiply(x2, y2)));
      ASSERT_TRUE(q.multiply(x, q.inverse(x)).is_identity());
    }
  }
  EXPECT_THROW(FiniteQuotient(4, 4, 8), ContractError);
  EXPECT_THROW(FiniteQuotient::of(Box(2, 2, 4)), ContractError);
}

TEST(FiniteQuotient, ConnectingMapIsAHomomorphism) {
  std::mt19937_64 rng(22);
  auto ex42 = example_42(2, 3);
  for (Level l = 1; l <= 3; ++l) {
    auto map = connecting_map(ex42, l);
    ASSERT_TRUE(map.apply(Element::identity()).is_identity());
    for (int i = 0; i < 1000; ++i) {
      Element x = random_residue(rng, map.source), y = random_residue(rng, map.source);
      ASSERT_EQ(map.apply(map.source.multiply(x, y)), map.target.multiply(map.apply(x), map.apply(y)));
    }
  }
  auto map = connecting_map(ex42, 1);
  EXPECT_EQ(map.apply({4, 0, 0}), (Element{4, 0, 0}));
  EXPECT_EQ(map.apply({7, 0, 0}), (Element{1, 0, 0}));
  EXPECT_THROW(map.apply({36, 0, 0}), ContractError);
}

TEST(FiniteQuotient, LagrangeAndContainment) {
  for (const auto& chain : {example_41(2), example_42(2, 3), stable_52(), wild_chain(2, 1, {})}) {
    for (Level l = 1; l <= 4; ++l) {
      Box b = box_at(chain, l), c = core_at(chain, l);
      ASSERT_TRUE(b.includes(c));
      ASSERT_EQ(index_in(Box::whole(), c), quotient_at(chain, l).order());
      ASSERT_EQ(discriminant_level(chain, l).order() * index_in(Box::whole(), b), quotient_at(chain, l).order());
      ASSERT_TRUE(box_at(chain, l).includes(box_at(chain, l + 1)));
      ASSERT_FALSE(box_at(chain, l + 1).includes(box_at(chain, l)));
    }
  }
}

TEST(FiniteQuotient, StableImagesDescend) {
  for (const auto& chain : {example_41(2), example_42(2, 3), stable_52(), wild_chain(2, 1, {5})}) {
    for (Level l = 1; l <= 3; ++l) {
      for (Level d = l; d <= 5; ++d) {
        Box now = *stable_image(chain, l, d).box();
        Box next = *stable_image(chain, l, d + 1).box();
        ASSERT_TRUE(now.includes(next)) << chain.label();
      }
    }
  }
}

TEST(Coset, CanonicalExamples) {
  EXPECT_EQ(canonical_coset(CosetSpace(Box(2, 2, 4)), {3, 5, 7}), (Element{1, 1, 3}));
  EXPECT_EQ(canonical_coset(CosetSpace(Box(2, 3, 6)), {2, 3, 6}), Element::identity());
  EXPECT_EQ(canonical_coset(CosetSpace(Box(5, 7, 35)), Element::identity()), Element::identity());
  EXPECT_EQ(act(CosetSpace(Box(2, 2, 4)), {1, 0, 0}, Element::identity()), (Element{1, 0, 0}));
  EXPECT_THROW(act(CosetSpace(Box(2, 2, 4)), {1, 0, 0}, {2, 0, 0}), ContractError);
}

TEST(Coset, SameRepresentativeIffSameLeftCoset) {
  std::mt19937_64 rng(23);
  for (const Box& b : oracle::all_boxes(6)) {
    CosetSpace space(b);
    const std::int64_t ma = to_int64(b.ma()), mb = to_int64(b.mb()), mc = to_int64(b.mc());
    for (int i = 0; i < 50; ++i) {
      Element g{ref::uniform(rng, -40, 40), ref::uniform(rng, -40, 40), ref::uniform(rng, -40, 40)};
      Element h{ref::uniform(rng, -40, 40), ref::uniform(rng, -40, 40), ref::uniform(rng, -40, 40)};
      ref::Mat q = ref::mul(ref::inv(ref::mat(to_int64(g.a), to_int64(g.b), to_int64(g.c))),
                            ref::mat(to_int64(h.a), to_int64(h.b), to_int64(h.c)));
      ASSERT_EQ(canonical_coset(space, g) == canonical_coset(space, h), ref::in_box(q, ma, mb, mc));
      ASSERT_TRUE(space.is_canonical(canonical_coset(space, g)));
    }
  }
}

TEST(Coset, OrbitOfBasepointIsEverything) {
  CosetSpace space(Box(2, 2, 4));
  std::set<Element, ElementLess> seen{Element::identity()};
  std::vector<Element> frontier{Element::identity()};
  while (!frontier.empty()) {
    Element x = frontier.back();
    frontier.pop_back();
    for (const Element& g : {Element{1, 0, 0}, Element{0, 1, 0}, Element{0, 0, 1}}) {
      Element y = act(space, g, x);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  EXPECT_EQ(seen.size(), 16u);
  EXPECT_EQ(space.representatives().size(), 16u);
}

TEST(Coset, ActionAxiomAndStabilizer) {
  std::mt19937_64 rng(24);
  CosetSpace space(Box(4, 9, 12));
  auto reps = space.representatives();
  for (int i = 0; i < 1000; ++i) {
    Element g{ref::uniform(rng, -30, 30), ref::uniform(rng, -30, 30), ref::uniform(rng, -30, 30)};
    Element h{ref::uniform(rng, -30, 30), ref::uniform(rng, -30, 30), ref::uniform(rng, -30, 30)};
    const Element& x = reps[ref::uniform(rng, 0, static_cast<std::int64_t>(reps.size()) - 1)];
    ASSERT_EQ(act(space, g, act(space, h, x)), act(space, multiply(g, h), x));
    ASSERT_EQ(act(space, g, Element::identity()) == Element::identity(), space.box().contains(g));
  }
}
