#include "nonlocal/vandam_exact.hpp"

#include <array>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/nsbox.hpp"

namespace nonlocal {

namespace {

// Exhaustive sum for one (address, input vector). Box positions are 1-based
// (level k, box j) and Bob's path follows j_{k-1} = 2 j_k - 1 + i_{k-1} from
// j_n = 1, written out literally rather than shared with the simulator.
class Enumerator {
 public:
  Enumerator(unsigned levels, const ExactBoxPair& box) : n_(levels), box_(box) {
    for (unsigned k = 1; k <= n_; ++k) {
      for (std::size_t j = 1; j <= (std::size_t{1} << (n_ - k)); ++j) order_.push_back({k, j});
    }
    values_.resize(n_ + 1);
    for (unsigned k = 0; k <= n_; ++k) values_[k].assign(std::size_t{1} << (n_ - k), 0);
  }

  // Returns {weight of pre-link y = 0, weight of pre-link y = 1}.
  std::array<Rational, 2> run(std::uint64_t address, std::uint64_t mask) {
    address_ = address;
    path_.assign(n_ + 1, 0);
    path_[n_] = 1;
    for (unsigned k = n_; k >= 2; --k) path_[k - 1] = 2 * path_[k] - 1 + digit(k - 1);
    for (std::size_t i = 0; i < values_[0].size(); ++i) values_[0][i] = (mask >> i) & 1U;
    buckets_ = {Rational(0), Rational(0)};
    visit(0, Rational(1), 0);
    return buckets_;
  }

 private:
  struct Position {
    unsigned level;
    std::size_t box;
  };

  Bit digit(unsigned k) const { return static_cast<Bit>((address_ >> k) & 1U); }

  void visit(std::size_t pos, const Rational& weight, Bit bob_parity) {
    if (pos == order_.size()) {
      buckets_[values_[n_][0] ^ bob_parity] += weight;
      return;
    }
    const auto [k, j] = order_[pos];
    const Bit q1 = values_[k - 1][2 * j - 2];
    const Bit q2 = values_[k - 1][2 * j - 1];
    const Bit a = q1 ^ q2;
    if (path_[k] == j) {
      const Bit b = digit(k - 1);
      for (Bit A = 0; A < 2; ++A) {
        for (Bit B = 0; B < 2; ++B) {
          const Rational& w = box_.prob(A, B, a, b);
          if (w == 0) continue;
          values_[k][j - 1] = q1 ^ A;
          visit(pos + 1, weight * w, bob_parity ^ B);
        }
      }
    } else {
      // Bob never touches this box; only Alice's marginal matters.
      for (Bit A = 0; A < 2; ++A) {
        const Rational w = box_.alice_marginal(A, a, 0);
        if (w == 0) continue;
        values_[k][j - 1] = q1 ^ A;
        visit(pos + 1, weight * w, bob_parity);
      }
    }
  }

  unsigned n_;
  const ExactBoxPair& box_;
  std::vector<Position> order_;
  std::vector<std::vector<Bit>> values_;
  std::vector<std::size_t> path_;
  std::uint64_t address_ = 0;
  std::array<Rational, 2> buckets_;
};

// P(odd number of flips) over n independent stages, by listing all 2^n patterns.
Rational link_flip_probability(unsigned n, const Rational& c_prime) {
  const Rational keep = (Rational(1) + c_prime) / 2;
  const Rational flip = (Rational(1) - c_prime) / 2;
  Rational odd = 0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
    Rational w = 1;
    unsigned flips = 0;
    for (unsigned s = 0; s < n; ++s) {
      const bool flipped = (pattern >> s) & 1U;
      w *= flipped ? flip : keep;
      flips += flipped ? 1 : 0;
    }
    if (flips % 2 == 1) odd += w;
  }
  return odd;
}

}  // namespace

Rational ExactProtocolLaw::success_given(std::uint64_t address, std::uint64_t mask) const {
  const Rational& one = decoded_one.at(address).at(mask);
  return ((mask >> address) & 1U) ? one : Rational(Rational(1) - one);
}

bool ExactProtocolLaw::memoryless(std::uint64_t address) const {
  const Rational first = success_given(address, 0);
  for (std::uint64_t mask = 1; mask < decoded_one.at(address).size(); ++mask) {
    if (success_given(address, mask) != first) return false;
  }
  return true;
}

ExactProtocolLaw enumerate_exact(const ExactProtocolConfig& cfg) {
  if (cfg.levels > kMaxExactLevels) {
    throw SizeError("enumerate_exact supports at most " + std::to_string(kMaxExactLevels) +
                    " levels, got " + std::to_string(cfg.levels));
  }
  if (cfg.levels == 0) throw DomainError("enumerate_exact: level count must be at least 1");
  if (cfg.c_prime < -1 || cfg.c_prime > 1) {
    throw DomainError("classical link correlation must lie in [-1, 1]");
  }
  const ExactBoxPair box = make_isotropic_box(cfg.c);

  const unsigned n = cfg.levels;
  const std::uint64_t bits = std::uint64_t{1} << n;
  const std::uint64_t masks = std::uint64_t{1} << bits;
  const Rational odd_flip = link_flip_probability(n, cfg.c_prime);

  ExactProtocolLaw law;
  law.levels = n;
  law.decoded_one.assign(bits, std::vector<Rational>(masks));
  law.success.assign(bits, Rational(0));

  Enumerator enumerator(n, box);
  for (std::uint64_t address = 0; address < bits; ++address) {
    Rational total = 0;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      const auto pre = enumerator.run(address, mask);
      law.decoded_one[address][mask] = pre[1] * (Rational(1) - odd_flip) + pre[0] * odd_flip;
      total += law.success_given(address, mask);
    }
    law.success[address] = total / Rational(masks);
  }
  return law;
}

}  // namespace nonlocal
