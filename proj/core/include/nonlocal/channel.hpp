#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nonlocal/bits.hpp"
#include "nonlocal/random.hpp"

namespace nonlocal {

/// +-1 source with P(-1) = (1 + theta) / 2, so its mean is -theta.
class BernoulliSource {
 public:
  explicit BernoulliSource(double theta);

  double theta() const { return theta_; }
  double prob_minus() const { return 0.5 * (1.0 + theta_); }

  Spin draw(RandomStream& rng) const { return spin_from_bit(draw_bit(rng)); }
  /// Bit view of draw(): 1 stands for -1.
  Bit draw_bit(RandomStream& rng) const;
  /// m iid bit draws, packed. Fair sources consume whole random words.
  BitVector draw_bits(std::size_t m, RandomStream& rng) const;
  /// Overwrites every bit of `out` with a fresh draw.
  void fill_bits(BitVector& out, RandomStream& rng) const;

 private:
  double theta_;
};

std::vector<Spin> draw_source(const BernoulliSource& src, std::size_t m, RandomStream& rng);

/// Memoryless +-1 channel that reproduces its input with probability
/// (1 + rho) / 2 whichever sign the input has.
class SymmetricBinaryChannel {
 public:
  explicit SymmetricBinaryChannel(double rho);

  double rho() const { return rho_; }
  double agreement_probability() const { return 0.5 * (1.0 + rho_); }

  Spin transmit(Spin x, RandomStream& rng) const;
  Bit transmit_bit(Bit x, RandomStream& rng) const;

 private:
  double rho_;
};

inline Spin transmit(const SymmetricBinaryChannel& ch, Spin x, RandomStream& rng) {
  return ch.transmit(x, rng);
}

/// Series composition: the result has correlation rho1 * rho2.
SymmetricBinaryChannel concatenate(const SymmetricBinaryChannel& first,
                                   const SymmetricBinaryChannel& second);

/// n copies of `ch` in series; n = 0 is the perfect channel.
SymmetricBinaryChannel concatenate_n(const SymmetricBinaryChannel& ch, unsigned n);

/// Input/output pairs of a channel experiment.
class PairedSamples {
 public:
  PairedSamples() = default;
  PairedSamples(std::vector<Spin> inputs, std::vector<Spin> outputs);

  std::size_t size() const { return inputs_.size(); }
  std::span<const Spin> inputs() const { return inputs_; }
  std::span<const Spin> outputs() const { return outputs_; }

  void push_back(Spin in, Spin out) {
    inputs_.push_back(in);
    outputs_.push_back(out);
  }
  void reserve(std::size_t n) {
    inputs_.reserve(n);
    outputs_.reserve(n);
  }

 private:
  std::vector<Spin> inputs_;
  std::vector<Spin> outputs_;
};

/// (1/m) sum inputs[i] * outputs[i]. Throws DomainError on an empty sample.
double empirical_correlation(const PairedSamples& s);

struct IndependenceResult {
  double abs_correlation = 0.0;
  double chi_square = 0.0;
  bool threshold_pass = false;
};

inline constexpr std::size_t kMinIndependenceSamples = 100;

/// 99% critical value of the chi-square law with one degree of freedom.
double chi_square_critical_99();

/// Pearson chi-square on the 2x2 input/output contingency table (no
/// continuity correction). A table with an empty row or column carries no
/// evidence of dependence and scores 0. Passes when below the 99% critical
/// value. Throws InsufficientSampleError when m < 100.
IndependenceResult independence_statistic(const PairedSamples& s);

}  // namespace nonlocal
