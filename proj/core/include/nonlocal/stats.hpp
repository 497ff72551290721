#pragma once

#include <cstddef>
#include <span>

namespace nonlocal {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased (n - 1 denominator)
  double skewness = 0.0;  ///< m3 / m2^(3/2), population moments

  double standard_error() const;
};

/// Two-pass moments in index order, so the result is independent of how the
/// values were produced.
Moments summarize(std::span<const double> values);

/// sqrt(p (1 - p) / m).
double binomial_standard_error(double p, std::size_t m);

}  // namespace nonlocal
