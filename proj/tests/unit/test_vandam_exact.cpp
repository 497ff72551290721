#include <gtest/gtest.h>

#include "nonlocal/errors.hpp"
#include "nonlocal/vandam_exact.hpp"

using namespace nonlocal;

namespace {

Rational power(const Rational& base, unsigned n) {
  Rational r = 1;
  for (unsigned k = 0; k < n; ++k) r *= base;
  return r;
}

}  // namespace

TEST(ExactLaw, OneLevelThreeFifths) {
  const auto law = enumerate_exact({1, Rational(3, 5), Rational(1)});
  for (const auto& s : law.success) EXPECT_EQ(s, Rational(4, 5));
}

TEST(ExactLaw, TwoLevelsThreeFifthsIsMemoryless) {
  const auto law = enumerate_exact({2, Rational(3, 5), Rational(1)});
  ASSERT_EQ(law.success.size(), 4U);
  for (std::uint64_t i = 0; i < 4; ++i) {
    EXPECT_EQ(law.success[i], Rational(17, 25));
    EXPECT_TRUE(law.memoryless(i));
    for (std::uint64_t mask = 0; mask < 16; ++mask) EXPECT_EQ(law.success_given(i, mask), Rational(17, 25));
  }
}

// Property over a rational grid: success = (1 + (c c')^n) / 2 at every
// address, whatever the other inputs are.
TEST(ExactLaw, PowerLawAndMemorylessOnGrid) {
  const Rational cs[] = {Rational(-1), Rational(-1, 3), Rational(0), Rational(1, 2), Rational(4, 5), Rational(1)};
  const Rational cps[] = {Rational(1), Rational(2, 3), Rational(-1, 2)};
  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto& c : cs) {
      for (const auto& cp : cps) {
        if (n == 3 && cp != 1 && c != Rational(1, 2)) continue;  // keep the n = 3 sweep short
        const auto law = enumerate_exact({n, c, cp});
        const Rational expected = (1 + power(c * cp, n)) / 2;
        for (std::uint64_t i = 0; i < law.success.size(); ++i) {
          ASSERT_EQ(law.success[i], expected) << n << " " << c << " " << cp << " " << i;
          ASSERT_TRUE(law.memoryless(i));
        }
      }
    }
  }
}

TEST(ExactLaw, ConditionalLawIsNormalized) {
  const auto law = enumerate_exact({2, Rational(2, 3), Rational(3, 4)});
  for (const auto& row : law.decoded_one)
    for (const auto& p : row) {
      EXPECT_GE(p, 0);
      EXPECT_LE(p, 1);
    }
}

TEST(ExactLaw, Errors) {
  EXPECT_THROW(enumerate_exact({4, Rational(1), Rational(1)}), SizeError);
  EXPECT_THROW(enumerate_exact({0, Rational(1), Rational(1)}), DomainError);
  EXPECT_THROW(enumerate_exact({1, Rational(3, 2), Rational(1)}), DomainError);
  EXPECT_THROW(enumerate_exact({1, Rational(1), Rational(-2)}), DomainError);
}
