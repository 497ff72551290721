#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nonlocal/bits.hpp"
#include "nonlocal/stats.hpp"
#include "nonlocal/vandam.hpp"

namespace nonlocal {

/// n -> infinity behaviour of the van Dam channel's Fisher information,
/// decided by the sign of 2 (c c')^2 - 1.
enum class Regime { signaling, randomness, no_signaling };

std::string_view to_string(Regime r);

/// The only possible limits of the Fisher information: 0, 1 or infinity.
enum class LimitValue { zero, one, infinity };

double as_double(LimitValue v);
std::string_view to_string(LimitValue v);

/// Tolerance on 2 (c c')^2 - 1 inside which the boundary case is reported.
inline constexpr double kRegimeTolerance = 1e-12;

struct FisherQuery {
  double c_minus = 0.0;  ///< channel correlation given input -1
  double c_plus = 0.0;   ///< channel correlation given input +1
  double theta = 0.0;
  double samples = 1.0;  ///< m
};

/// Fisher information about theta in m outputs of a general binary channel:
///   m [(c_- + c_+)/2]^2 / (1 - [(1+theta) c_- / 2 - (1-theta) c_+ / 2]^2).
/// Zero when c_- = -c_+. Otherwise throws SingularityError when the
/// denominator is not positive.
double fisher_binary(const FisherQuery& q);

/// m c^2 / (1 - c^2 theta^2); SingularityError when |c theta| >= 1.
double fisher_symmetric(double c, double theta, double m);

struct FisherReport {
  double value = 0.0;
  Regime regime = Regime::no_signaling;
  LimitValue limit = LimitValue::zero;
};

/// Fisher information Bob collects from all 2^n addresses:
///   [2 (c c')^2]^n / (1 - (c c')^(2n) theta^2).
/// theta must lie in (-1, 1).
FisherReport fisher_vandam(double c, double c_prime, double theta, unsigned n);

/// Same, taking s = (c c')^2 directly so the boundary s = 1/2 is exact.
FisherReport fisher_vandam_squared(double product_squared, double theta, unsigned n);

Regime classify_regime(double c, double c_prime);
Regime classify_regime_squared(double product_squared);

struct MLEResult {
  double theta_bar = 0.0;
  /// (theta_bar - theta) / sqrt(variance_bound), present when the true theta is
  /// supplied. Equals standardized_statistic() for a full 2^n sample.
  std::optional<double> standardized;
  /// Cramer-Rao value 1 / I(theta), at the true theta when supplied, else at theta_bar.
  double variance_bound = 0.0;
};

/// Sample-mean estimator of theta from Bob's decoded signs (normally all 2^n
/// of them). Decoded signs have mean -(c c')^n theta under the library's
/// source convention, so theta_bar = -mean / (c c')^n. Throws DomainError when
/// c c' = 0 or the sample is empty.
MLEResult mle_theta(std::span<const Spin> decoded, double c, double c_prime, unsigned n,
                    std::optional<double> theta_true = std::nullopt);

/// sqrt([2 rho_1^2]^n / (1 - rho_1^(2n) theta^2)) (theta_bar - theta), rho_1 = c c'.
double standardized_statistic(double theta_bar, double theta, double product, unsigned n);

/// Counts of -1 and +1 among one run's decoded signs.
struct DecodedCounts {
  std::size_t minus = 0;
  std::size_t plus = 0;
};

DecodedCounts count_signs(std::span<const Spin> decoded);

/// Log-likelihood of one run under P(y = -1) = (1 + rho theta) / 2.
double log_likelihood(const DecodedCounts& run, double theta, double rho);

/// d/dtheta of log_likelihood.
double score(const DecodedCounts& run, double theta, double rho);

inline constexpr std::size_t kMinFisherRuns = 1000;

struct EmpiricalFisher {
  double score_variance = 0.0;   ///< primary estimate of I(theta)
  double score_mean = 0.0;
  double score_mean_error = 0.0; ///< standard error of score_mean
  std::size_t runs = 0;
};

/// Variance of the score across runs at the true theta. Each run holds 2^n
/// decoded signs (n = 0 means one direct observation); the output law uses
/// the effective correlation (c c')^n. Throws InsufficientSampleError below
/// 1000 runs.
EmpiricalFisher empirical_fisher(std::span<const std::vector<Spin>> runs, double theta, double c,
                                 double c_prime, unsigned n);
EmpiricalFisher empirical_fisher(std::span<const DecodedCounts> runs, double theta, double rho);

/// -E[d^2 L / d theta^2] by a central second difference of the mean
/// log-likelihood with the given step.
double finite_difference_fisher(std::span<const DecodedCounts> runs, double theta, double rho,
                                double step = 1e-4);

/// Decoded sign counts from `runs` independent all-addresses protocol runs,
/// run r drawing from derive_stream(seed, key, r).
std::vector<DecodedCounts> simulate_decoded_runs(const VanDamConfig& cfg, double theta,
                                                 std::size_t runs, std::uint64_t seed,
                                                 std::uint64_t key);

inline constexpr std::size_t kMinCltTrials = 1000;

struct CltReport {
  Moments standardized;     ///< of sqrt(I) (theta_bar - theta)
  Moments theta_bar;
  double fisher = 0.0;      ///< closed-form I(theta)
  double cramer_rao_ratio = 0.0;  ///< Var(theta_bar) * I(theta)
  double mean_band = 0.0;
  double variance_band = 0.0;
  double skewness_band = 0.0;
  bool normal = false;
};

/// Acceptance bands for the moment-based normality verdict at a given trial
/// count: |mean| <= max(0.05, 4/sqrt(T)), |var - 1| <= max(0.1, 4 sqrt(2/T)),
/// |skew| <= 4 sqrt(6/T).
void set_clt_bands(CltReport& report, std::size_t trials);

/// Runs `trials` all-addresses protocols, estimates theta each time and
/// reports the moments of the standardized statistic. Trial t draws from
/// derive_stream(seed, key, t). Throws InsufficientSampleError below 1000 trials.
CltReport clt_suite(std::size_t trials, const VanDamConfig& cfg, double theta, std::uint64_t seed,
                    std::uint64_t key);

}  // namespace nonlocal
