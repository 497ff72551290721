#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "nonlocal/bits.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/random.hpp"
#include "nonlocal/rational.hpp"

namespace nonlocal {

/// Measurement choices of the two parties.
struct BoxInput {
  Bit alice = 0;
  Bit bob = 0;

  BoxInput() = default;
  BoxInput(int a, int b) : alice(checked_bit(a)), bob(checked_bit(b)) {}
};

/// Outputs of the two halves of a box pair.
struct BoxOutcome {
  Bit alice = 0;
  Bit bob = 0;

  Spin alice_spin() const { return spin_from_bit(alice); }
  Spin bob_spin() const { return spin_from_bit(bob); }
  friend bool operator==(const BoxOutcome&, const BoxOutcome&) = default;
};

/// Conditional law P(A, B | a, b) of a bipartite box pair, stored as 16
/// entries. Instantiated with double for simulation and with Rational for the
/// exact enumeration oracles.
template <class Scalar>
class BoxTable {
 public:
  using Entries = std::array<Scalar, 16>;

  /// Entry order is index(A, B, a, b) = ((a * 2 + b) * 2 + A) * 2 + B.
  static constexpr std::size_t index(Bit A, Bit B, Bit a, Bit b) {
    return ((static_cast<std::size_t>(a) * 2 + b) * 2 + A) * 2 + B;
  }

  /// Validates entries in [0, 1] and per-input normalization (exact for
  /// Rational, 1e-12 for double). No-signaling is *not* required here.
  static BoxTable from_entries(const Entries& entries);

  const Scalar& prob(Bit A, Bit B, Bit a, Bit b) const { return p_[index(A, B, a, b)]; }
  const Scalar& prob(BoxOutcome out, BoxInput in) const {
    return prob(out.alice, out.bob, in.alice, in.bob);
  }
  const Entries& entries() const { return p_; }

  /// P(A = A | a, b) summed over Bob's output.
  Scalar alice_marginal(Bit A, Bit a, Bit b) const { return prob(A, 0, a, b) + prob(A, 1, a, b); }
  Scalar bob_marginal(Bit B, Bit a, Bit b) const { return prob(0, B, a, b) + prob(1, B, a, b); }

 private:
  Entries p_{};
};

using NSBoxPair = BoxTable<double>;
using ExactBoxPair = BoxTable<Rational>;

namespace detail {
inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }
inline bool normalized(double sum) { return std::fabs(sum - 1.0) <= 1e-12; }
inline bool normalized(const Rational& sum) { return sum == 1; }
}  // namespace detail

template <class Scalar>
BoxTable<Scalar> BoxTable<Scalar>::from_entries(const Entries& entries) {
  BoxTable t;
  t.p_ = entries;
  for (const auto& e : entries) {
    if (e < 0 || e > 1) throw DomainError("box table entry outside [0, 1]");
  }
  for (Bit a = 0; a < 2; ++a) {
    for (Bit b = 0; b < 2; ++b) {
      Scalar sum = t.prob(0, 0, a, b) + t.prob(0, 1, a, b) + t.prob(1, 0, a, b) + t.prob(1, 1, a, b);
      if (!detail::normalized(sum)) throw DomainError("box table rows must sum to 1");
    }
  }
  return t;
}

/// Isotropic box realizing a symmetric channel of correlation c: uniform
/// marginals, weight (1+c)/4 on each of the two outcomes with A xor B = a*b and
/// (1-c)/4 on each of the other two.
template <class Scalar>
BoxTable<Scalar> make_isotropic_box(const Scalar& c) {
  if (c < -1 || c > 1) throw DomainError("Bell-CHSH correlation must lie in [-1, 1]");
  const Scalar hit = (Scalar(1) + c) / 4;
  const Scalar miss = (Scalar(1) - c) / 4;
  typename BoxTable<Scalar>::Entries e{};
  for (Bit a = 0; a < 2; ++a)
    for (Bit b = 0; b < 2; ++b)
      for (Bit A = 0; A < 2; ++A)
        for (Bit B = 0; B < 2; ++B)
          e[BoxTable<Scalar>::index(A, B, a, b)] = ((A ^ B) == (a & b)) ? hit : miss;
  return BoxTable<Scalar>::from_entries(e);
}

/// Box whose outputs are fixed functions of the local inputs:
/// A = alice_rule[a], B = bob_rule[b]. There are 16 such local strategies.
template <class Scalar = double>
BoxTable<Scalar> make_deterministic_box(std::array<Bit, 2> alice_rule, std::array<Bit, 2> bob_rule) {
  typename BoxTable<Scalar>::Entries e{};
  for (Bit a = 0; a < 2; ++a)
    for (Bit b = 0; b < 2; ++b) e[BoxTable<Scalar>::index(alice_rule[a], bob_rule[b], a, b)] = Scalar(1);
  return BoxTable<Scalar>::from_entries(e);
}

/// E[(-1)^(A xor B) | a, b] computed from the table.
template <class Scalar>
Scalar correlator(const BoxTable<Scalar>& box, Bit a, Bit b) {
  return box.prob(0, 0, a, b) + box.prob(1, 1, a, b) - box.prob(0, 1, a, b) - box.prob(1, 0, a, b);
}

/// Bell-CHSH correlation: (E00 + E01 + E10 - E11) / 4.
template <class Scalar>
Scalar chsh_correlation(const BoxTable<Scalar>& box) {
  return (correlator(box, 0, 0) + correlator(box, 0, 1) + correlator(box, 1, 0) -
          correlator(box, 1, 1)) /
         4;
}

template <class Scalar>
struct NoSignalingReport {
  bool passed = false;
  Scalar max_deviation{};
};

/// Largest change of either party's marginal when only the remote input
/// changes; passes iff that change is <= tol.
template <class Scalar>
NoSignalingReport<Scalar> no_signaling_check(const BoxTable<Scalar>& box, const Scalar& tol) {
  if (tol < 0) throw DomainError("no-signaling tolerance must be non-negative");
  Scalar worst = 0;
  for (Bit x = 0; x < 2; ++x) {
    for (Bit out = 0; out < 2; ++out) {
      const Scalar alice_dev = detail::abs_value(Scalar(box.alice_marginal(out, x, 0) - box.alice_marginal(out, x, 1)));
      const Scalar bob_dev = detail::abs_value(Scalar(box.bob_marginal(out, 0, x) - box.bob_marginal(out, 1, x)));
      if (alice_dev > worst) worst = alice_dev;
      if (bob_dev > worst) worst = bob_dev;
    }
  }
  return {worst <= tol, worst};
}

/// Draws (A, B) from P(., . | input) by inverse CDF over the outcomes in the
/// order (0,0), (0,1), (1,0), (1,1). One uniform per call.
BoxOutcome sample_box(const NSBoxPair& box, BoxInput input, RandomStream& rng);

/// Floating-point copy of an exact table.
NSBoxPair to_floating(const ExactBoxPair& box);

}  // namespace nonlocal
