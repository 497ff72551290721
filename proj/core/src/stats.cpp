#include "nonlocal/stats.hpp"

#include <cmath>

namespace nonlocal {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    compensation_ += (sum_ - t) + v;
  } else {
    compensation_ += (v - t) + sum_;
  }
  sum_ = t;
}

double Moments::standard_error() const {
  return count > 0 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
}

Moments summarize(std::span<const double> values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;

  CompensatedSum total;
  for (const double v : values) total.add(v);
  const double n = static_cast<double>(values.size());
  m.mean = total.value() / n;

  CompensatedSum s2;
  CompensatedSum s3;
  for (const double v : values) {
    const double d = v - m.mean;
    s2.add(d * d);
    s3.add(d * d * d);
  }
  if (values.size() > 1) m.variance = s2.value() / (n - 1.0);
  const double m2 = s2.value() / n;
  const double m3 = s3.value() / n;
  m.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return m;
}

double binomial_standard_error(double p, std::size_t m) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(m));
}

}  // namespace nonlocal
