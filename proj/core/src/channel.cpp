#include "nonlocal/channel.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= -1.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in [-1, 1]");
}

}  // namespace

BernoulliSource::BernoulliSource(double theta) : theta_(theta) {
  require_unit_interval(theta, "source parameter theta");
}

Bit BernoulliSource::draw_bit(RandomStream& rng) const {
  if (theta_ == 0.0) return rng.fair_bit();
  return rng.bernoulli(prob_minus()) ? 1 : 0;
}

BitVector BernoulliSource::draw_bits(std::size_t m, RandomStream& rng) const {
  BitVector out(m);
  fill_bits(out, rng);
  return out;
}

void BernoulliSource::fill_bits(BitVector& out, RandomStream& rng) const {
  if (theta_ == 0.0) {
    rng.fill_words(out.words());
    out.clear_tail();
  } else {
    const double p = prob_minus();
    for (std::size_t i = 0; i < out.size(); ++i) out.set(i, rng.bernoulli(p) ? 1 : 0);
  }
}

std::vector<Spin> draw_source(const BernoulliSource& src, std::size_t m, RandomStream& rng) {
  if (m == 0) throw DomainError("draw_source: sample count must be at least 1");
  std::vector<Spin> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(src.draw(rng));
  return out;
}

SymmetricBinaryChannel::SymmetricBinaryChannel(double rho) : rho_(rho) {
  require_unit_interval(rho, "channel correlation");
}

Spin SymmetricBinaryChannel::transmit(Spin x, RandomStream& rng) const {
  return rng.bernoulli(agreement_probability()) ? x : -x;
}

Bit SymmetricBinaryChannel::transmit_bit(Bit x, RandomStream& rng) const {
  return rng.bernoulli(agreement_probability()) ? x : static_cast<Bit>(x ^ 1U);
}

SymmetricBinaryChannel concatenate(const SymmetricBinaryChannel& first,
                                   const SymmetricBinaryChannel& second) {
  return SymmetricBinaryChannel(first.rho() * second.rho());
}

SymmetricBinaryChannel concatenate_n(const SymmetricBinaryChannel& ch, unsigned n) {
  SymmetricBinaryChannel out(1.0);
  for (unsigned i = 0; i < n; ++i) out = concatenate(out, ch);
  return out;
}

PairedSamples::PairedSamples(std::vector<Spin> inputs, std::vector<Spin> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (inputs_.size() != outputs_.size()) {
    throw DomainError("paired samples: input and output lengths differ");
  }
}

double empirical_correlation(const PairedSamples& s) {
  if (s.size() == 0) throw DomainError("empirical_correlation: empty sample");
  long long sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += value(s.inputs()[i]) * value(s.outputs()[i]);
  return static_cast<double>(sum) / static_cast<double>(s.size());
}

double chi_square_critical_99() {
  static const double critical =
      boost::math::quantile(boost::math::chi_squared_distribution<double>(1.0), 0.99);
  return critical;
}

IndependenceResult independence_statistic(const PairedSamples& s) {
  if (s.size() < kMinIndependenceSamples) {
    throw InsufficientSampleError("independence_statistic: need at least " +
                                  std::to_string(kMinIndependenceSamples) + " pairs, got " +
                                  std::to_string(s.size()));
  }
  // counts[x][y], index 0 for +1, 1 for -1
  double counts[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    counts[bit_from_spin(s.inputs()[i])][bit_from_spin(s.outputs()[i])] += 1.0;
  }
  const double m = static_cast<double>(s.size());
  const double row0 = counts[0][0] + counts[0][1];
  const double row1 = counts[1][0] + counts[1][1];
  const double col0 = counts[0][0] + counts[1][0];
  const double col1 = counts[0][1] + counts[1][1];

  IndependenceResult r;
  r.abs_correlation = std::fabs(empirical_correlation(s));
  const double margins = row0 * row1 * col0 * col1;
  if (margins > 0.0) {
    const double cross = counts[0][0] * counts[1][1] - counts[0][1] * counts[1][0];
    r.chi_square = m * cross * cross / margins;
  }
  r.threshold_pass = r.chi_square < chi_square_critical_99();
  return r;
}

}  // namespace nonlocal
