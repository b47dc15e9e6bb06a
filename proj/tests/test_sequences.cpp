#include <gtest/gtest.h>

#include "cantordim/sequences.hpp"
#include "oracles.hpp"

using namespace cantordim;

namespace {

std::vector<BasicSequence> zoo() {
  return {BasicSequence::constant(2),       BasicSequence::constant(7),
          BasicSequence::arithmetic(2, 1),  BasicSequence::arithmetic(5, 3),
          BasicSequence::geometric(2, 2),   BasicSequence::geometric(3, 1),
          BasicSequence::counterexample(),  BasicSequence::custom({2, 3, 5}, TailRule::repeat),
          BasicSequence::custom({2, 4}, TailRule::geometric), BasicSequence::custom({3, 5}, TailRule::arithmetic)};
}

}  // namespace

TEST(Sequences, Terms) {
  EXPECT_EQ(BasicSequence::constant(3).term(40), 3);
  EXPECT_EQ(BasicSequence::arithmetic(2, 1).term(99), 100);
  EXPECT_EQ(BasicSequence::geometric(2, 3).term(4), 54);
  const auto c = BasicSequence::counterexample();
  EXPECT_EQ(c.term(1), 2);
  EXPECT_EQ(c.term(10), pow10(10));
  EXPECT_EQ(c.term(11), 2);
  EXPECT_EQ(c.term(100), pow10(100));
  EXPECT_EQ(c.term(200), 2);
  EXPECT_EQ(BasicSequence::custom({2, 3, 5}, TailRule::repeat).term(9), 5);
  EXPECT_EQ(BasicSequence::custom({2, 4}, TailRule::geometric).term(5), 32);
  EXPECT_EQ(BasicSequence::custom({3, 5}, TailRule::arithmetic).term(4), 9);
}

TEST(Sequences, SpikeRanks) {
  for (Rank k : {10ull, 100ull, 1000ull, 10000000000ull}) EXPECT_TRUE(BasicSequence::is_spike_rank(k));
  for (Rank k : {1ull, 2ull, 11ull, 20ull, 110ull, 1001ull}) EXPECT_FALSE(BasicSequence::is_spike_rank(k));
}

TEST(Sequences, RejectsInvalidGenerators) {
  EXPECT_THROW(BasicSequence::constant(1), DomainError);
  EXPECT_THROW(BasicSequence::arithmetic(2, 0), DomainError);
  EXPECT_THROW(BasicSequence::geometric(1, 2), DomainError);
  EXPECT_THROW(BasicSequence::custom({}), DomainError);
  EXPECT_THROW(BasicSequence::custom({2, 1}), DomainError);
  EXPECT_THROW(BasicSequence::custom({4, 6}, TailRule::geometric), DomainError);
  const auto finite = BasicSequence::custom({2, 3});
  EXPECT_THROW(finite.term(3), DomainError);
  EXPECT_THROW(finite.term(0), DomainError);
}

TEST(Sequences, LogPrefixProductMatchesBigIntegerProduct) {
  for (const auto& seq : zoo()) {
    for (Rank k : {1ull, 2ull, 9ull, 10ull, 11ull, 64ull, 65ull, 150ull}) {
      const BigInt p = oracle::product([&](Rank i) { return seq.term(i); }, k);
      const Real expected = oracle::ln(p);
      EXPECT_TRUE(near(seq.log_prefix_product(k).log_magnitude(), expected, precision_epsilon()))
          << to_string(seq.kind()) << " k=" << k;
    }
  }
}

TEST(Sequences, LogTermMatchesTerm) {
  for (const auto& seq : zoo()) {
    for (Rank k = 1; k <= 120; ++k) {
      ASSERT_TRUE(near(seq.log_term(k), oracle::ln(seq.term(k)), precision_epsilon()));
    }
  }
}

TEST(Sequences, Boundedness) {
  EXPECT_TRUE(BasicSequence::constant(5).is_bounded());
  EXPECT_TRUE(BasicSequence::geometric(3, 1).is_bounded());
  EXPECT_TRUE(BasicSequence::custom({2, 9, 3}, TailRule::repeat).is_bounded());
  EXPECT_TRUE(BasicSequence::custom({2, 9, 3}).is_bounded());
  EXPECT_FALSE(BasicSequence::arithmetic(2, 1).is_bounded());
  EXPECT_FALSE(BasicSequence::counterexample().is_bounded());
  EXPECT_FALSE(BasicSequence::custom({2, 4}, TailRule::geometric).is_bounded());
  EXPECT_TRUE(BasicSequence::arithmetic(2, 1).is_strictly_increasing(500));
  EXPECT_FALSE(BasicSequence::counterexample().is_strictly_increasing(20));
}

TEST(Faithfulness, ConstantTwoRatioIsReciprocal) {
  const auto seq = BasicSequence::constant(2);
  for (Rank k = 2; k <= 200; ++k) {
    ASSERT_TRUE(near(faithfulness_ratio(seq, k), Real(1) / Real(k - 1), precision_epsilon()));
  }
  EXPECT_THROW(faithfulness_ratio(seq, 1), DomainError);
}

TEST(Faithfulness, CounterexampleSpikeAgainstDirectProducts) {
  const auto seq = BasicSequence::counterexample();
  for (Rank k : {10ull, 100ull, 1000ull}) {
    const BigInt before = oracle::product([&](Rank i) { return seq.term(i); }, k - 1);
    const Real direct = oracle::ln(seq.term(k)) / oracle::ln(before);
    EXPECT_TRUE(near(faithfulness_ratio(seq, k), direct, precision_epsilon()));
    EXPECT_GT(direct, 1);
  }
}

TEST(Faithfulness, StirlingBracketsExactLogFactorial) {
  for (std::uint64_t m = 1; m <= 200; ++m) {
    const auto b = stirling_log_factorial(m);
    const Real exact = oracle::ln(oracle::factorial(m));
    ASSERT_LE(b.lower, exact) << m;
    ASSERT_GE(b.upper, exact) << m;
  }
  EXPECT_THROW(stirling_log_factorial(0), DomainError);
}

TEST(Faithfulness, Verdicts) {
  EXPECT_EQ(faithfulness_diagnostic(BasicSequence::constant(2), 1000).verdict,
            FaithfulnessVerdict::criterion_met_numerically);
  EXPECT_EQ(faithfulness_diagnostic(BasicSequence::arithmetic(2, 1), 1000).verdict,
            FaithfulnessVerdict::criterion_met_numerically);
  EXPECT_EQ(faithfulness_diagnostic(BasicSequence::geometric(2, 2), 1000).verdict,
            FaithfulnessVerdict::criterion_met_numerically);
  const auto bad = faithfulness_diagnostic(BasicSequence::counterexample(), 1000);
  EXPECT_EQ(bad.verdict, FaithfulnessVerdict::criterion_violated);
  EXPECT_EQ(bad.witnesses, (std::vector<Rank>{10, 100, 1000}));
  // The decade (100, 200] holds no spike yet; the earlier spikes still decide.
  EXPECT_EQ(faithfulness_diagnostic(BasicSequence::counterexample(), 200).verdict,
            FaithfulnessVerdict::criterion_violated);
  // A single decade cannot show a trend.
  EXPECT_EQ(faithfulness_diagnostic(BasicSequence::constant(2), 9).verdict, FaithfulnessVerdict::inconclusive);
  EXPECT_THROW(faithfulness_diagnostic(BasicSequence::constant(2), 2), DomainError);
}

TEST(Faithfulness, EnvelopeFitForSuccessorSequence) {
  const auto r = faithfulness_diagnostic(BasicSequence::arithmetic(2, 1), 300);
  EXPECT_TRUE(r.envelope.holds);
  EXPECT_EQ(r.envelope.a1, 2);
  EXPECT_EQ(r.envelope.d, 1);
  EXPECT_EQ(r.envelope.b1, 2);
  EXPECT_EQ(r.envelope.q, 2);
  EXPECT_TRUE(r.envelope.bound_dominates);
  EXPECT_TRUE(r.subgeometric.corollary_applies);
  EXPECT_EQ(r.subgeometric.q, 2);
}

TEST(Faithfulness, SuppliedEnvelopeBoundDominatesRatio) {
  const auto seq = BasicSequence::arithmetic(2, 1);
  const auto r = faithfulness_diagnostic(seq, 300, {}, GeometricEnvelope{2, 3});
  EXPECT_TRUE(r.envelope.upper_supplied);
  EXPECT_TRUE(r.envelope.bound_dominates);
  for (const auto& [k, bound] : r.envelope.bounds) {
    ASSERT_GE(bound, faithfulness_ratio(seq, k)) << k;
  }
}

TEST(Faithfulness, ConstantMajorantIsFlaggedDegenerate) {
  const auto r = faithfulness_diagnostic(BasicSequence::constant(3), 50);
  EXPECT_TRUE(r.envelope.degenerate_q);
  EXPECT_FALSE(r.envelope.lower_holds);  // no arithmetic progression fits below a constant
}
