#pragma once

#include <cstdint>
#include <vector>

#include "nonlocal/rational.hpp"

namespace nonlocal {

inline constexpr unsigned kMaxExactLevels = 3;

struct ExactProtocolConfig {
  unsigned levels = 1;
  Rational c = 1;
  Rational c_prime = 1;
};

/// Exact law of the decoded bit, obtained by summing every combination of
/// box outcomes and classical-link flips with rational weights.
struct ExactProtocolLaw {
  unsigned levels = 0;
  /// decoded_one[i][mask] = P(y_i = 1 | x), where bit k of `mask` is x_k.
  std::vector<std::vector<Rational>> decoded_one;
  /// success[i] = P(y_i = x_i) with Alice's bits uniform.
  std::vector<Rational> success;

  /// P(y_i = x_i | x).
  Rational success_given(std::uint64_t address, std::uint64_t mask) const;
  /// True iff success_given(address, .) is the same for every input vector.
  bool memoryless(std::uint64_t address) const;
};

/// Throws SizeError for levels > 3 and DomainError for levels == 0 or
/// correlations outside [-1, 1].
ExactProtocolLaw enumerate_exact(const ExactProtocolConfig& cfg);

}  // namespace nonlocal
