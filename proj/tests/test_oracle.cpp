#include <gtest/gtest.h>

#include "support.hpp"

using namespace kelley;
using kelley::testing::frac;
using kelley::testing::Rng;

namespace {

GroundSet g3 = GroundSet::numbered(3);

SetSystem triangle() { return SetSystem(g3, {g3.subset({"1", "2"}), g3.subset({"2", "3"}), g3.subset({"1", "3"})}); }

// Walks every ordered sequence of length 1..max_len, which counts each
// multiset many times over.
Rational ordered_sequence_minimum(const SetSystem& s, std::size_t max_len) {
  std::optional<Rational> best;
  std::vector<Subset> seq;
  auto rec = [&](auto&& self) -> void {
    if (!seq.empty()) {
      Rational v = sequence_average(s.ground(), seq).sup();
      if (!best || v < *best) best = v;
    }
    if (seq.size() == max_len) return;
    for (Subset b : s.family()) {
      seq.push_back(b);
      self(self);
      seq.pop_back();
    }
  };
  rec(rec);
  return *best;
}

}  // namespace

TEST(Bruteforce, TriangleByLength) {
  EXPECT_EQ(bruteforce_intersection(triangle(), 1).best_value, 1);
  EXPECT_EQ(bruteforce_intersection(triangle(), 2).best_value, 1);
  BruteForceResult r = bruteforce_intersection(triangle(), 3, Rational(2, 3));
  EXPECT_EQ(r.best_value, Rational(2, 3));
  EXPECT_EQ(r.best_sequence, (Multiset{1, 1, 1}));
  EXPECT_EQ(r.exactness, Exactness::Certified);
  EXPECT_EQ(r.searched_max_length, 3u);
  EXPECT_EQ(bruteforce_intersection(triangle(), 2, Rational(2, 3)).exactness, Exactness::UpperBoundOnly);
}

TEST(Bruteforce, BudgetTooLarge) {
  EXPECT_EQ(multiset_count(3, 3), 19);
  try {
    bruteforce_intersection(triangle(), 3, std::nullopt, 18);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetTooLarge);
  }
  EXPECT_NO_THROW(bruteforce_intersection(triangle(), 3, std::nullopt, 19));
  EXPECT_THROW(bruteforce_intersection(triangle(), 0), Error);
}

TEST(Bruteforce, MultisetCountMatchesEnumeration) {
  for (std::uint64_t k = 1; k <= 4; ++k) {
    for (std::uint64_t len = 1; len <= 4; ++len) {
      std::uint64_t n = 0;
      auto rec = [&](auto&& self, std::uint64_t idx, std::uint64_t used) -> void {
        if (idx == k) {
          n += used > 0;
          return;
        }
        for (std::uint64_t c = 0; used + c <= len; ++c) self(self, idx + 1, used + c);
      };
      rec(rec, 0, 0);
      EXPECT_EQ(multiset_count(k, len), n) << k << " " << len;
    }
  }
}

TEST(Bruteforce, AgreesWithOrderedSequenceWalk) {
  Rng rng(201);
  for (int trial = 0; trial < 60; ++trial) {
    GroundSet g = GroundSet::numbered(kelley::testing::uniform_int(rng, 1, 4));
    SetSystem s = kelley::testing::random_system(rng, g, kelley::testing::uniform_int(rng, 1, 3));
    std::size_t len = kelley::testing::uniform_int(rng, 1, 4);
    BruteForceResult r = bruteforce_intersection(s, len);
    EXPECT_EQ(r.best_value, ordered_sequence_minimum(s, len));
    EXPECT_EQ(sequence_average(g, s.family(), r.best_sequence).sup(), r.best_value);
    EXPECT_LE(multiset_size(r.best_sequence), len);
  }
}

TEST(Bruteforce, NonIncreasingInLengthAndBoundedByLp) {
  Rng rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    GroundSet g = GroundSet::numbered(kelley::testing::uniform_int(rng, 1, 5));
    SetSystem s = kelley::testing::random_system(rng, g, kelley::testing::uniform_int(rng, 1, 4));
    Rational lp = intersection_number(s).value;
    Rational previous = 2;
    for (std::uint64_t len = 1; len <= 6; ++len) {
      Rational v = bruteforce_intersection(s, len).best_value;
      EXPECT_LE(v, previous);
      EXPECT_GE(v, lp);
      previous = v;
    }
  }
}

TEST(WitnessFromStrategy, ClearsDenominators) {
  std::vector<Rational> thirds{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  EXPECT_EQ(witness_from_strategy(thirds), (Multiset{1, 1, 1}));
  std::vector<Rational> mixed{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  EXPECT_EQ(witness_from_strategy(mixed), (Multiset{2, 1, 1}));
  std::vector<Rational> pure{Rational(1), Rational(0)};
  EXPECT_EQ(witness_from_strategy(pure), (Multiset{1, 0}));
}

TEST(WitnessFromStrategy, RejectsNonProbabilities) {
  for (auto bad : {std::vector<Rational>{Rational(1, 2)}, std::vector<Rational>{Rational(3, 2), Rational(-1, 2)}}) {
    try {
      witness_from_strategy(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotAProbability);
    }
  }
}

TEST(WitnessFromStrategy, RoundTripsRandomProbabilityVectors) {
  Rng rng(203);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = kelley::testing::uniform_int(rng, 1, 6);
    std::vector<long> w(k);
    long total = 0;
    for (auto& x : w) total += (x = static_cast<long>(kelley::testing::uniform_int(rng, 0, 7)));
    if (total == 0) continue;
    std::vector<Rational> p;
    for (long x : w) p.push_back(frac(x, total));
    Multiset beta = witness_from_strategy(p);
    std::uint64_t len = multiset_size(beta);
    EXPECT_LE(len, static_cast<std::uint64_t>(total));
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(frac(static_cast<long>(beta[i]), static_cast<long>(len)), p[i]);
  }
}

TEST(VerifyMinimax, Examples) {
  MinimaxCertificate c = verify_minimax(triangle());
  EXPECT_TRUE(c.verdict);
  EXPECT_EQ(c.lp_value, Rational(2, 3));
  EXPECT_EQ(c.witness_sup, Rational(2, 3));
  EXPECT_EQ(c.brute_value, Rational(2, 3));

  SetSystem singles(g3, {g3.subset({"1"}), g3.subset({"2"}), g3.subset({"3"})});
  MinimaxCertificate d = verify_minimax(singles);
  EXPECT_TRUE(d.verdict);
  EXPECT_EQ(d.lp_value, Rational(1, 3));
}

TEST(VerifyMinimax, RandomInstancesCertify) {
  Rng rng(204);
  for (int trial = 0; trial < 80; ++trial) {
    GroundSet g = GroundSet::numbered(kelley::testing::uniform_int(rng, 1, 4));
    SetSystem s = kelley::testing::random_system(rng, g, kelley::testing::uniform_int(rng, 1, 5));
    MinimaxCertificate c = verify_minimax(s);
    EXPECT_TRUE(c.verdict);
    EXPECT_EQ(c.brute_value, c.lp_value);
  }
}
