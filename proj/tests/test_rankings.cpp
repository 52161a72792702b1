#include <gtest/gtest.h>

#include "support.hpp"

using namespace kelley;
using kelley::testing::frac;
using kelley::testing::Rng;

namespace {

GroundSet g3 = GroundSet::numbered(3);
GroundSet g2 = GroundSet::numbered(2);

SimpleFunction fn(const GroundSet& g, std::initializer_list<Rational> v) { return SimpleFunction(g, std::vector<Rational>(v)); }

bool pointwise_geq(const SimpleFunction& f, const SimpleFunction& g) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < g[i]) return false;
  }
  return true;
}

// f ≥_m g straight from the definition: inf over t > 0 of m(f − g < −t) is
// 0. On finitely many atoms it is enough to look at t below every positive
// gap, here t = (smallest gap)/2.
bool measure_geq_by_definition(const Measure& m, const SimpleFunction& f, const SimpleFunction& g) {
  std::optional<Rational> gap;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Rational d = g[i] - f[i];
    if (d > 0 && (!gap || d < *gap)) gap = d;
  }
  if (!gap) return true;
  Rational t = *gap / 2, mass = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] - g[i] < -t) mass += m[i];
  }
  return mass == 0;
}

}  // namespace

TEST(OrderCompare, Examples) {
  EXPECT_TRUE(order_compare(OrderSpec::measure(Measure::uniform(g2)), fn(g2, {0, 0}), fn(g2, {-1, 0})));
  EXPECT_TRUE(order_compare(OrderSpec::measure(Measure::dirac(g2, 1)), fn(g2, {-1, 0}), fn(g2, {0, 0})));
  EXPECT_FALSE(order_compare(OrderSpec::measure(Measure::uniform(g2)), fn(g2, {-1, 0}), fn(g2, {0, 0})));
}

TEST(OrderCompare, Errors) {
  EXPECT_THROW(OrderSpec::measure(Measure::zero(g2)), Error);
  EXPECT_THROW(OrderSpec::ideal(Ideal(g2, g2.full())), Error);
  try {
    order_compare(OrderSpec::measure(Measure::uniform(g2)), fn(g3, {0, 0, 0}), fn(g3, {0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GroundSetMismatch);
  }
}

TEST(OrderCompare, MatchesDefinitionAndIdealForm) {
  Rng rng(501);
  for (int trial = 0; trial < 60; ++trial) {
    GroundSet g = GroundSet::numbered(kelley::testing::uniform_int(rng, 1, 4));
    Measure m = kelley::testing::random_measure(rng, g);
    if (m.total() == 0) continue;
    OrderSpec by_measure = OrderSpec::measure(m);
    OrderSpec by_ideal = OrderSpec::ideal(null_ideal(m));
    for (int i = 0; i < 30; ++i) {
      SimpleFunction f = kelley::testing::random_function(rng, g, -2, 2, 2);
      SimpleFunction h = kelley::testing::random_function(rng, g, -2, 2, 2);
      bool expected = measure_geq_by_definition(m, f, h);
      EXPECT_EQ(order_compare(by_measure, f, h), expected);
      EXPECT_EQ(order_compare(by_ideal, f, h), expected);
    }
  }
}

TEST(DefaultGrid, Shape) {
  auto grid = default_grid(g2);
  ASSERT_EQ(grid.size(), 25u);
  EXPECT_EQ(grid.front(), SimpleFunction::constant(g2, -1));
  EXPECT_EQ(grid.back(), SimpleFunction::constant(g2, 1));
  EXPECT_EQ(default_grid(g3, 10).size(), 10u);
}

TEST(Axioms, MeasureBackedOrdersPass) {
  Rng rng(502);
  for (int trial = 0; trial < 6; ++trial) {
    Measure m = kelley::testing::random_probability(rng, g2, 40);
    AxiomReport r = axioms_check(OrderSpec::measure(m), default_grid(g2), default_scalars());
    EXPECT_TRUE(r.all_hold());
    EXPECT_TRUE(r.axioms[0].exact);
    EXPECT_TRUE(r.axioms[4].exact);
    for (const auto& v : r.axioms) EXPECT_GT(v.instances, 0u);
  }
  EXPECT_TRUE(axioms_check(OrderSpec::measure(Measure::uniform(g3)), default_grid(g3, 60), default_scalars()).all_hold());
}

TEST(Axioms, IdealBackedOrdersPass) {
  for (std::uint64_t gen = 0; gen < 3; ++gen) {
    EXPECT_TRUE(axioms_check(OrderSpec::ideal(Ideal(g2, Subset(gen))), default_grid(g2), default_scalars()).all_hold());
  }
}

TEST(Axioms, PointwiseOraclePassesWithCaveat) {
  AxiomReport r = axioms_check(OrderSpec::oracle(g2, pointwise_geq), default_grid(g2), default_scalars());
  EXPECT_TRUE(r.all_hold());
  EXPECT_FALSE(r.axioms[4].exact);
  EXPECT_FALSE(r.axioms[4].detail.empty());
}

TEST(Axioms, ScalingViolationIsCaught) {
  // Ranks by the first coordinate but only when the gap is at most 1, so
  // doubling a ranked pair can break it.
  auto capped_gap = [](const SimpleFunction& f, const SimpleFunction& g) {
    Rational d = f[0] - g[0];
    return d >= 0 && d <= 1;
  };
  AxiomReport r = axioms_check(OrderSpec::oracle(g2, capped_gap), default_grid(g2), default_scalars());
  const AxiomVerdict& iv = r.axioms[3];
  EXPECT_FALSE(iv.holds);
  ASSERT_TRUE(iv.counterexample.has_value());
  EXPECT_FALSE(capped_gap(iv.counterexample->first, iv.counterexample->second));
  EXPECT_FALSE(r.all_hold());
}

TEST(Axioms, StrictlyAboveViolationIsCaught) {
  // Reverses the pointwise order: 0 ends up strictly above 1.
  auto reversed = [](const SimpleFunction& f, const SimpleFunction& g) { return pointwise_geq(g, f); };
  AxiomReport r = axioms_check(OrderSpec::oracle(g2, reversed), default_grid(g2), default_scalars());
  EXPECT_FALSE(r.axioms[0].holds);
  EXPECT_FALSE(r.axioms[2].holds);
}

TEST(Axioms, EmptyGridRejected) { EXPECT_THROW(axioms_check(OrderSpec::measure(Measure::uniform(g2)), {}, default_scalars()), Error); }

TEST(Representability, Examples) {
  Representation r = representability(Ideal(g2, g2.subset({"2"})));
  EXPECT_EQ(r.measure, Measure::dirac(g2, 0));
  EXPECT_TRUE(r.null_sets_match);
  ASSERT_EQ(r.decomposition.families.size(), 1u);
  EXPECT_EQ(r.decomposition.families[0].family(), (std::vector<Subset>{g2.subset({"1"}), g2.full()}));
  EXPECT_EQ(r.order_values, (std::vector<Rational>{Rational(1)}));
  EXPECT_TRUE(r.decomposition_verified);

  Representation t = representability(Ideal::trivial(g3));
  EXPECT_EQ(t.measure, Measure::uniform(g3));
  EXPECT_TRUE(t.decomposition_verified);

  std::vector<Subset> not_ideal{Subset{}, g2.subset({"1"}), g2.subset({"2"})};
  try {
    representability(g2, not_ideal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnionClosed);
  }
  EXPECT_THROW(representability(Ideal(g2, g2.full())), Error);
}

TEST(Representability, RoundTripPreservesTheOrder) {
  Rng rng(503);
  for (int trial = 0; trial < 40; ++trial) {
    GroundSet g = GroundSet::numbered(kelley::testing::uniform_int(rng, 1, 4));
    Measure m = kelley::testing::random_probability(rng, g, 40);
    Representation r = representability(null_ideal(m));
    EXPECT_TRUE(r.null_sets_match);
    EXPECT_TRUE(r.decomposition_verified);
    EXPECT_EQ(null_ideal(r.measure), null_ideal(m));
    for (std::size_t k = 0; k < r.thresholds.size(); ++k) EXPECT_GE(r.order_values[k], r.thresholds[k]);

    OrderSpec original = OrderSpec::measure(m), rebuilt = OrderSpec::measure(r.measure);
    OrderSpec by_ideal = OrderSpec::ideal(null_ideal(m));
    auto grid = default_grid(g, 81);
    for (const auto& f : grid) {
      for (const auto& h : grid) {
        bool expected = order_compare(original, f, h);
        EXPECT_EQ(order_compare(rebuilt, f, h), expected);
        EXPECT_EQ(order_compare(by_ideal, f, h), expected);
      }
    }
  }
}

TEST(Representability, EveryProperIdealOnFourAtoms) {
  for (std::size_t n = 1; n <= 4; ++n) {
    GroundSet g = GroundSet::numbered(n);
    for (std::uint64_t gen = 0; gen < g.full().bits(); ++gen) {
      Ideal ideal(g, Subset(gen));
      auto members = ideal.members();
      Representation r = representability(g, members);
      EXPECT_EQ(r.ideal, ideal);
      EXPECT_TRUE(r.null_sets_match);
      EXPECT_TRUE(r.decomposition_verified);
    }
  }
}

TEST(Axioms, OracleWrapperMatchesExactOrder) {
  Rng rng(504);
  for (int trial = 0; trial < 4; ++trial) {
    Measure m = kelley::testing::random_probability(rng, g2, 50);
    OrderSpec exact = OrderSpec::measure(m);
    OrderSpec wrapped = OrderSpec::oracle(g2, [&](const SimpleFunction& f, const SimpleFunction& g) { return exact.geq(f, g); });
    AxiomReport a = axioms_check(exact, default_grid(g2), default_scalars());
    AxiomReport b = axioms_check(wrapped, default_grid(g2), default_scalars());
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_EQ(a.axioms[k].holds, b.axioms[k].holds);
      EXPECT_EQ(a.axioms[k].instances, b.axioms[k].instances);
    }
  }
}
