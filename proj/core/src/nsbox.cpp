#include "nonlocal/nsbox.hpp"

namespace nonlocal {

BoxOutcome sample_box(const NSBoxPair& box, BoxInput input, RandomStream& rng) {
  const double u = rng.uniform();
  double cdf = 0.0;
  BoxOutcome last_possible{};
  for (Bit A = 0; A < 2; ++A) {
    for (Bit B = 0; B < 2; ++B) {
      const double p = box.prob(A, B, input.alice, input.bob);
      if (p <= 0.0) continue;
      last_possible = {A, B};
      cdf += p;
      if (u < cdf) return last_possible;
    }
  }
  // cdf can fall a rounding step short of 1.
  return last_possible;
}

NSBoxPair to_floating(const ExactBoxPair& box) {
  NSBoxPair::Entries e{};
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = to_double(box.entries()[i]);
  return NSBoxPair::from_entries(e);
}

}  // namespace nonlocal
