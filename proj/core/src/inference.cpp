#include "nonlocal/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/random.hpp"

namespace nonlocal {

namespace {

void require_correlation(double v, const char* what) {
  if (!(v >= -1.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in [-1, 1]");
}

void require_open_theta(double theta) {
  if (!(theta > -1.0 && theta < 1.0)) throw DomainError("theta must lie in (-1, 1)");
}

// Fisher information of 2^n outputs of a symmetric channel with correlation
// rho = (c c')^n, written through s = (c c')^2 so the boundary is exact.
double vandam_value(double product_squared, double theta, unsigned n) {
  const double dn = static_cast<double>(n);
  const double denominator = 1.0 - std::pow(product_squared, dn) * theta * theta;
  if (!(denominator > 0.0)) throw SingularityError("van Dam Fisher information is singular");
  return std::pow(2.0 * product_squared, dn) / denominator;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::signaling:
      return "signaling";
    case Regime::randomness:
      return "randomness";
    case Regime::no_signaling:
      return "no-signaling";
  }
  return "unknown";
}

double as_double(LimitValue v) {
  switch (v) {
    case LimitValue::zero:
      return 0.0;
    case LimitValue::one:
      return 1.0;
    case LimitValue::infinity:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

std::string_view to_string(LimitValue v) {
  switch (v) {
    case LimitValue::zero:
      return "0";
    case LimitValue::one:
      return "1";
    case LimitValue::infinity:
      return "inf";
  }
  return "unknown";
}

double fisher_binary(const FisherQuery& q) {
  require_correlation(q.c_minus, "c_-1");
  require_correlation(q.c_plus, "c_1");
  if (q.samples < 0.0) throw DomainError("sample count must be non-negative");
  const double slope = 0.5 * (q.c_minus + q.c_plus);
  // c_- = -c_+ gives an output law that does not move with theta
  if (slope == 0.0) return 0.0;
  const double shift = 0.5 * (1.0 + q.theta) * q.c_minus - 0.5 * (1.0 - q.theta) * q.c_plus;
  const double denominator = 1.0 - shift * shift;
  if (!(denominator > 0.0)) {
    throw SingularityError("binary-channel Fisher information is singular at this theta");
  }
  return q.samples * slope * slope / denominator;
}

double fisher_symmetric(double c, double theta, double m) {
  require_correlation(c, "channel correlation");
  if (m < 0.0) throw DomainError("sample count must be non-negative");
  const double denominator = 1.0 - c * c * theta * theta;
  if (!(denominator > 0.0)) throw SingularityError("|c theta| >= 1: Fisher information is singular");
  return m * c * c / denominator;
}

Regime classify_regime_squared(double product_squared) {
  if (!(product_squared >= 0.0 && product_squared <= 1.0)) {
    throw DomainError("squared correlation must lie in [0, 1]");
  }
  const double excess = 2.0 * product_squared - 1.0;
  if (excess > kRegimeTolerance) return Regime::signaling;
  if (std::fabs(excess) <= kRegimeTolerance) return Regime::randomness;
  return Regime::no_signaling;
}

Regime classify_regime(double c, double c_prime) {
  require_correlation(c, "Bell-CHSH correlation");
  require_correlation(c_prime, "classical link correlation");
  const double product = c * c_prime;
  return classify_regime_squared(product * product);
}

FisherReport fisher_vandam_squared(double product_squared, double theta, unsigned n) {
  require_open_theta(theta);
  FisherReport r;
  r.regime = classify_regime_squared(product_squared);
  r.value = vandam_value(product_squared, theta, n);
  switch (r.regime) {
    case Regime::signaling:
      r.limit = LimitValue::infinity;
      break;
    case Regime::randomness:
      r.limit = LimitValue::one;
      break;
    case Regime::no_signaling:
      r.limit = LimitValue::zero;
      break;
  }
  return r;
}

FisherReport fisher_vandam(double c, double c_prime, double theta, unsigned n) {
  require_correlation(c, "Bell-CHSH correlation");
  require_correlation(c_prime, "classical link correlation");
  const double product = c * c_prime;
  return fisher_vandam_squared(product * product, theta, n);
}

double standardized_statistic(double theta_bar, double theta, double product, unsigned n) {
  const double s = product * product;
  return std::sqrt(vandam_value(s, theta, n)) * (theta_bar - theta);
}

MLEResult mle_theta(std::span<const Spin> decoded, double c, double c_prime, unsigned n,
                    std::optional<double> theta_true) {
  require_correlation(c, "Bell-CHSH correlation");
  require_correlation(c_prime, "classical link correlation");
  if (decoded.empty()) throw DomainError("mle_theta: empty sample");
  const double product = c * c_prime;
  if (product == 0.0) throw DomainError("mle_theta: estimator undefined when c c' = 0");
  const double rho = std::pow(product, static_cast<double>(n));

  long long sum = 0;
  for (const Spin s : decoded) sum += value(s);
  const double mean = static_cast<double>(sum) / static_cast<double>(decoded.size());

  MLEResult r;
  r.theta_bar = -mean / rho;
  const double at = theta_true.value_or(r.theta_bar);
  const double m = static_cast<double>(decoded.size());
  r.variance_bound = (1.0 - rho * rho * at * at) / (m * rho * rho);
  if (theta_true) r.standardized = (r.theta_bar - *theta_true) / std::sqrt(r.variance_bound);
  return r;
}

DecodedCounts count_signs(std::span<const Spin> decoded) {
  DecodedCounts c;
  for (const Spin s : decoded) {
    if (s == Spin::minus) {
      ++c.minus;
    } else {
      ++c.plus;
    }
  }
  return c;
}

double log_likelihood(const DecodedCounts& run, double theta, double rho) {
  const double p_minus = 0.5 * (1.0 + rho * theta);
  const double p_plus = 0.5 * (1.0 - rho * theta);
  double ll = 0.0;
  if (run.minus > 0) ll += static_cast<double>(run.minus) * std::log(p_minus);
  if (run.plus > 0) ll += static_cast<double>(run.plus) * std::log(p_plus);
  return ll;
}

double score(const DecodedCounts& run, double theta, double rho) {
  return static_cast<double>(run.minus) * rho / (1.0 + rho * theta) -
         static_cast<double>(run.plus) * rho / (1.0 - rho * theta);
}

EmpiricalFisher empirical_fisher(std::span<const DecodedCounts> runs, double theta, double rho) {
  require_open_theta(theta);
  if (runs.size() < kMinFisherRuns) {
    throw InsufficientSampleError("empirical_fisher: need at least " +
                                  std::to_string(kMinFisherRuns) + " runs, got " +
                                  std::to_string(runs.size()));
  }
  std::vector<double> scores;
  scores.reserve(runs.size());
  for (const auto& run : runs) scores.push_back(score(run, theta, rho));
  const Moments m = summarize(scores);
  return {m.variance, m.mean, m.standard_error(), runs.size()};
}

EmpiricalFisher empirical_fisher(std::span<const std::vector<Spin>> runs, double theta, double c,
                                 double c_prime, unsigned n) {
  require_correlation(c, "Bell-CHSH correlation");
  require_correlation(c_prime, "classical link correlation");
  if (n >= 63) throw DomainError("empirical_fisher: level count too large");
  const std::size_t expected = std::size_t{1} << n;
  std::vector<DecodedCounts> counts;
  counts.reserve(runs.size());
  for (const auto& run : runs) {
    if (run.size() != expected) throw DomainError("empirical_fisher: each run must hold 2^n signs");
    counts.push_back(count_signs(run));
  }
  return empirical_fisher(counts, theta, std::pow(c * c_prime, static_cast<double>(n)));
}

double finite_difference_fisher(std::span<const DecodedCounts> runs, double theta, double rho,
                                double step) {
  require_open_theta(theta);
  if (runs.empty()) throw InsufficientSampleError("finite_difference_fisher: no runs");
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  // Per-run second differences, then their mean: same quantity as
  // differencing the mean log-likelihood, without cancelling large sums.
  CompensatedSum total;
  for (const auto& run : runs) {
    total.add(log_likelihood(run, theta + step, rho) - 2.0 * log_likelihood(run, theta, rho) +
              log_likelihood(run, theta - step, rho));
  }
  const double mean_second = total.value() / static_cast<double>(runs.size());
  return -mean_second / (step * step);
}

std::vector<DecodedCounts> simulate_decoded_runs(const VanDamConfig& cfg, double theta,
                                                 std::size_t runs, std::uint64_t seed,
                                                 std::uint64_t key) {
  cfg.validate();
  const BernoulliSource source(theta);
  std::vector<DecodedCounts> out(runs);
  parallel_for(runs, [&](std::size_t r) {
    auto rng = derive_stream(seed, key, r);
    ProtocolRunner runner(cfg, source);
    const auto sweep = runner.sweep(rng);
    out[r] = count_signs(sweep.decoded);
  });
  return out;
}

void set_clt_bands(CltReport& report, std::size_t trials) {
  const double t = static_cast<double>(trials);
  report.mean_band = std::max(0.05, 4.0 / std::sqrt(t));
  report.variance_band = std::max(0.1, 4.0 * std::sqrt(2.0 / t));
  report.skewness_band = 4.0 * std::sqrt(6.0 / t);
}

CltReport clt_suite(std::size_t trials, const VanDamConfig& cfg, double theta, std::uint64_t seed,
                    std::uint64_t key) {
  if (trials < kMinCltTrials) {
    throw InsufficientSampleError("clt_suite: need at least " + std::to_string(kMinCltTrials) +
                                  " trials, got " + std::to_string(trials));
  }
  cfg.validate();
  require_open_theta(theta);
  const double product = cfg.c * cfg.c_prime;
  if (product == 0.0) throw DomainError("clt_suite: estimator undefined when c c' = 0");

  const BernoulliSource source(theta);
  std::vector<double> theta_bars(trials);
  std::vector<double> standardized(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = derive_stream(seed, key, t);
    ProtocolRunner runner(cfg, source);
    const auto sweep = runner.sweep(rng);
    const auto est = mle_theta(sweep.decoded, cfg.c, cfg.c_prime, cfg.levels, theta);
    theta_bars[t] = est.theta_bar;
    standardized[t] = *est.standardized;
  });

  CltReport report;
  report.standardized = summarize(standardized);
  report.theta_bar = summarize(theta_bars);
  report.fisher = vandam_value(product * product, theta, cfg.levels);
  report.cramer_rao_ratio = report.theta_bar.variance * report.fisher;
  set_clt_bands(report, trials);
  report.normal = std::fabs(report.standardized.mean) <= report.mean_band &&
                  std::fabs(report.standardized.variance - 1.0) <= report.variance_band &&
                  std::fabs(report.standardized.skewness) <= report.skewness_band;
  return report;
}

}  // namespace nonlocal
