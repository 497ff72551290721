#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "nonlocal/channel.hpp"
#include "nonlocal/errors.hpp"
#include "test_support.hpp"

using namespace nonlocal;

TEST(Source, ExtremeThetasAreDeterministic) {
  RandomStream rng(1);
  for (Spin s : draw_source(BernoulliSource(1.0), 1000, rng)) ASSERT_EQ(s, Spin::minus);
  for (Spin s : draw_source(BernoulliSource(-1.0), 1000, rng)) ASSERT_EQ(s, Spin::plus);
}

TEST(Source, FairSourceHasZeroMean) {
  RandomStream rng(2);
  constexpr std::size_t m = 100000;
  double sum = 0.0;
  for (Spin s : draw_source(BernoulliSource(0.0), m, rng)) sum += value(s);
  EXPECT_LT(std::fabs(sum / m), 4.0 / std::sqrt(static_cast<double>(m)));
}

TEST(Source, PackedDrawsFollowTheSameLaw) {
  RandomStream rng(3);
  for (double theta : {-0.6, 0.0, 0.35}) {
    const BernoulliSource src(theta);
    constexpr std::size_t m = 200000;
    const BitVector bits = src.draw_bits(m, rng);
    const double freq = static_cast<double>(bits.popcount()) / m;
    EXPECT_LT(test::binomial_z(freq, src.prob_minus(), m), 4.0) << theta;
  }
}

TEST(Source, RejectsBadArguments) {
  EXPECT_THROW(BernoulliSource(1.5), DomainError);
  RandomStream rng(4);
  EXPECT_THROW(draw_source(BernoulliSource(0.0), 0, rng), DomainError);
}

TEST(Channel, PerfectAndInvertingChannels) {
  RandomStream rng(5);
  const SymmetricBinaryChannel id(1.0);
  const SymmetricBinaryChannel flip(-1.0);
  for (int i = 0; i < 1000; ++i) {
    const Spin x = i % 3 == 0 ? Spin::minus : Spin::plus;
    ASSERT_EQ(transmit(id, x, rng), x);
    ASSERT_EQ(transmit(flip, x, rng), -x);
  }
  EXPECT_THROW(SymmetricBinaryChannel(-1.01), DomainError);
}

TEST(Channel, HalfCorrelationAgreesThreeQuartersOfTheTime) {
  RandomStream rng(6);
  const SymmetricBinaryChannel ch(0.5);
  constexpr std::size_t m = 1000000;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < m; ++i) agree += transmit(ch, Spin::plus, rng) == Spin::plus;
  EXPECT_LT(test::binomial_z(static_cast<double>(agree) / m, 0.75, m), 4.0);
}

// Property: agreement does not depend on the input sign.
TEST(Channel, AgreementIsSymmetricInTheInput) {
  RandomStream rng(7);
  constexpr std::size_t m = 1000000;
  for (double rho : {-0.9, 0.0, 0.9}) {
    const SymmetricBinaryChannel ch(rho);
    std::size_t plus = 0;
    std::size_t minus = 0;
    for (std::size_t i = 0; i < m / 2; ++i) {
      plus += transmit(ch, Spin::plus, rng) == Spin::plus;
      minus += transmit(ch, Spin::minus, rng) == Spin::minus;
    }
    const double p1 = static_cast<double>(plus) / (m / 2);
    const double p2 = static_cast<double>(minus) / (m / 2);
    const double pooled = 0.5 * (p1 + p2);
    const double se = std::sqrt(2.0 * pooled * (1.0 - pooled) / (m / 2));
    EXPECT_LT(std::fabs(p1 - p2), 4.0 * se + 1e-12) << rho;
  }
}

TEST(Concatenate, ProductRule) {
  EXPECT_DOUBLE_EQ(concatenate(SymmetricBinaryChannel(1.0), SymmetricBinaryChannel(0.3)).rho(), 0.3);
  EXPECT_DOUBLE_EQ(concatenate(SymmetricBinaryChannel(0.5), SymmetricBinaryChannel(0.5)).rho(), 0.25);
  EXPECT_NEAR(concatenate_n(SymmetricBinaryChannel(0.9), 7).rho(), std::pow(0.9, 7), 1e-15);
  EXPECT_DOUBLE_EQ(concatenate_n(SymmetricBinaryChannel(0.2), 0).rho(), 1.0);
}

TEST(Concatenate, EmpiricalCorrelationOfSeriesMatchesProduct) {
  RandomStream rng(8);
  const SymmetricBinaryChannel c1(0.8);
  const SymmetricBinaryChannel c2(-0.6);
  constexpr std::size_t m = 1000000;
  PairedSamples s;
  s.reserve(m);
  const BernoulliSource src(0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Spin x = src.draw(rng);
    s.push_back(x, transmit(c2, transmit(c1, x, rng), rng));
  }
  const double rho = -0.48;
  EXPECT_LT(std::fabs(empirical_correlation(s) - rho), 4.0 * std::sqrt((1 - rho * rho) / m));
}

// Output law for a source passed through a symmetric channel: P(y = -1) = (1 + rho theta) / 2.
TEST(Channel, SourceThroughChannelLaw) {
  RandomStream rng(9);
  constexpr std::size_t m = 500000;
  for (auto [theta, rho] : {std::pair{0.4, 0.7}, std::pair{-0.8, 0.5}, std::pair{0.9, -0.3}}) {
    const BernoulliSource src(theta);
    const SymmetricBinaryChannel ch(rho);
    std::size_t minus = 0;
    for (std::size_t i = 0; i < m; ++i) minus += transmit(ch, src.draw(rng), rng) == Spin::minus;
    EXPECT_LT(test::binomial_z(static_cast<double>(minus) / m, 0.5 * (1 + rho * theta), m), 4.0);
  }
}

// Repeated self-concatenation disconnects input from output.
TEST(Channel, LongSeriesDisconnects) {
  RandomStream rng(10);
  const SymmetricBinaryChannel ch(0.9);
  constexpr std::size_t m = 1000000;
  const BernoulliSource src(0.0);
  PairedSamples s;
  s.reserve(m);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Spin x = src.draw(rng);
    Spin z = x;
    for (int k = 0; k < 40; ++k) z = transmit(ch, z, rng);
    s.push_back(x, z);
    agree += x == z;
  }
  EXPECT_LT(std::fabs(empirical_correlation(s)), 0.02);
  EXPECT_LT(test::binomial_z(static_cast<double>(agree) / m, 0.5 * (1 + std::pow(0.9, 40)), m), 4.0);
  EXPECT_LT(std::fabs(static_cast<double>(agree) / m - 0.5), 0.01);
}

TEST(EmpiricalCorrelation, SpecExamples) {
  const std::vector<Spin> in{Spin::plus, Spin::plus, Spin::minus, Spin::minus};
  const std::vector<Spin> out{Spin::plus, Spin::minus, Spin::minus, Spin::plus};
  EXPECT_DOUBLE_EQ(empirical_correlation(PairedSamples(in, in)), 1.0);
  std::vector<Spin> neg;
  for (Spin s : in) neg.push_back(-s);
  EXPECT_DOUBLE_EQ(empirical_correlation(PairedSamples(in, neg)), -1.0);
  EXPECT_DOUBLE_EQ(empirical_correlation(PairedSamples(in, out)), 0.0);
  EXPECT_THROW(empirical_correlation(PairedSamples()), DomainError);
  EXPECT_THROW(PairedSamples(in, std::vector<Spin>{Spin::plus}), DomainError);
}

TEST(Independence, CriticalValue) { EXPECT_NEAR(chi_square_critical_99(), 6.634896601, 1e-8); }

TEST(Independence, IdenticalSequencesFail) {
  RandomStream rng(11);
  const auto in = draw_source(BernoulliSource(0.0), 1000, rng);
  const auto r = independence_statistic(PairedSamples(in, in));
  EXPECT_FALSE(r.threshold_pass);
  EXPECT_DOUBLE_EQ(r.abs_correlation, 1.0);
  EXPECT_NEAR(r.chi_square, 1000.0, 1e-9);
}

// Oracle: Pearson statistic computed by hand for a fixed 2x2 table.
TEST(Independence, ChiSquareOfKnownTable) {
  // counts: (+,+)=30 (+,-)=20 (-,+)=10 (-,-)=40
  std::vector<Spin> in;
  std::vector<Spin> out;
  auto add = [&](Spin x, Spin y, int k) {
    for (int i = 0; i < k; ++i) {
      in.push_back(x);
      out.push_back(y);
    }
  };
  add(Spin::plus, Spin::plus, 30);
  add(Spin::plus, Spin::minus, 20);
  add(Spin::minus, Spin::plus, 10);
  add(Spin::minus, Spin::minus, 40);
  const double expected = 100.0 * (30.0 * 40 - 20.0 * 10) * (30.0 * 40 - 20.0 * 10) / (50.0 * 50 * 40 * 60);
  EXPECT_NEAR(independence_statistic(PairedSamples(in, out)).chi_square, expected, 1e-12);
}

TEST(Independence, ConstantColumnScoresZero) {
  RandomStream rng(12);
  const auto in = draw_source(BernoulliSource(0.0), 200, rng);
  const std::vector<Spin> out(200, Spin::plus);
  const auto r = independence_statistic(PairedSamples(in, out));
  EXPECT_EQ(r.chi_square, 0.0);
  EXPECT_TRUE(r.threshold_pass);
}

TEST(Independence, TooFewSamples) {
  const std::vector<Spin> in(99, Spin::plus);
  EXPECT_THROW(independence_statistic(PairedSamples(in, in)), InsufficientSampleError);
}

// Calibration under the null, both for independent draws and for a rho = 0 channel.
TEST(Independence, NullPassRateAtLeastNinetyFivePercent) {
  constexpr std::size_t m = 100000;
  const BernoulliSource src(0.0);
  const SymmetricBinaryChannel ch(0.0);
  int pass_indep = 0;
  int pass_channel = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomStream rng(derive_seed(2024, 1, seed));
    const auto in = draw_source(src, m, rng);
    const auto out = draw_source(src, m, rng);
    pass_indep += independence_statistic(PairedSamples(in, out)).threshold_pass;
    std::vector<Spin> through;
    through.reserve(m);
    for (Spin x : in) through.push_back(transmit(ch, x, rng));
    pass_channel += independence_statistic(PairedSamples(in, through)).threshold_pass;
  }
  EXPECT_GE(pass_indep, 95);
  EXPECT_GE(pass_channel, 95);
}
