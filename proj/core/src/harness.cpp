#include "nonlocal/harness.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <limits>

#include "nonlocal/channel.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/inference.hpp"
#include "nonlocal/nsbox.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/random.hpp"
#include "nonlocal/stats.hpp"
#include "nonlocal/vandam.hpp"
#include "nonlocal/version.hpp"

namespace nonlocal {

namespace {

constexpr std::array kExperimentNames = {"chsh-verify", "protocol-sweep", "fisher-curve",
                                         "disconnect",  "clt",            "regimes"};

// Levels above this are reported without a Monte Carlo Fisher estimate: an
// all-addresses run costs 4^n box queries.
constexpr unsigned kMaxEmpiricalFisherLevels = 10;

// Samples per random stream in chsh-verify.
constexpr std::uint64_t kChshBlock = 1 << 16;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Cell integer(std::uint64_t v) { return static_cast<std::int64_t>(v); }

double z_score(double observed, double expected, double se) {
  if (se > 0.0) return (observed - expected) / se;
  return observed == expected ? 0.0 : std::numeric_limits<double>::infinity();
}

double parse_double_field(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw UsageError(fmt::format("metadata '{}': not a number: '{}'", key, text));
  }
  return v;
}

std::uint64_t parse_unsigned_field(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || text.front() == '-') {
    throw UsageError(fmt::format("metadata '{}': not an unsigned integer: '{}'", key, text));
  }
  return v;
}

struct SweepPoint {
  double c;
  double product_squared;
};

// One correlation per row group: the configured one, or a default grid.
std::vector<SweepPoint> regime_points(const ExperimentConfig& cfg) {
  if (cfg.has_correlation()) return {{cfg.correlation(), cfg.product_squared()}};
  std::vector<SweepPoint> pts;
  const double cp2 = cfg.c_prime * cfg.c_prime;
  for (const double c : {0.5, 0.6}) pts.push_back({c, c * c * cp2});
  pts.push_back({std::sqrt(0.5), 0.5 * cp2});
  for (const double c : {0.75, 0.8, 0.9, 1.0}) pts.push_back({c, c * c * cp2});
  return pts;
}

VanDamConfig protocol_config(const ExperimentConfig& cfg, unsigned n) {
  VanDamConfig v{n, cfg.correlation(), cfg.c_prime};
  v.validate();
  return v;
}

// Runs one protocol per trial at address (trial mod 2^n) and reports x_i, y_i.
std::vector<std::pair<Bit, Bit>> run_targets(const ExperimentConfig& cfg, unsigned n,
                                             std::uint64_t key) {
  const VanDamConfig vcfg = protocol_config(cfg, n);
  const BernoulliSource source(cfg.theta);
  const std::size_t trials = cfg.trials;
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::pair<Bit, Bit>> out(trials);
  parallel_for(chunks, [&](std::size_t chunk) {
    ProtocolRunner runner(vcfg, source);
    const std::size_t end = std::min(trials, (chunk + 1) * kChunk);
    for (std::size_t t = chunk * kChunk; t < end; ++t) {
      auto rng = derive_stream(cfg.seed, key, t);
      out[t] = runner.run_target(t % vcfg.bit_count(), rng);
    }
  });
  return out;
}

void chsh_verify(const ExperimentConfig& cfg, ResultTable& table) {
  std::vector<double> grid =
      cfg.has_correlation() ? std::vector<double>{cfg.correlation()} : chsh_default_grid();
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double c = grid[gi];
    const NSBoxPair box = make_isotropic_box(c);
    const std::uint64_t key = stream_key("chsh-verify", gi);
    const std::uint64_t samples = cfg.trials;
    const std::uint64_t blocks = (samples + kChshBlock - 1) / kChshBlock;

    // per block: sum of A^B signs and count, for each of the 4 input pairs
    std::vector<std::array<std::int64_t, 8>> partial(blocks);
    parallel_for(blocks, [&](std::size_t blk) {
      auto rng = derive_stream(cfg.seed, key, blk);
      std::array<std::int64_t, 8> acc{};
      const std::uint64_t end = std::min<std::uint64_t>(samples, (blk + 1) * kChshBlock);
      for (std::uint64_t i = blk * kChshBlock; i < end; ++i) {
        const unsigned pair = static_cast<unsigned>(i & 3U);
        const BoxInput in(static_cast<int>(pair >> 1), static_cast<int>(pair & 1U));
        const BoxOutcome out = sample_box(box, in, rng);
        acc[pair] += (out.alice ^ out.bob) ? -1 : 1;
        acc[4 + pair] += 1;
      }
      partial[blk] = acc;
    });
    std::array<std::int64_t, 8> total{};
    for (const auto& p : partial)
      for (std::size_t k = 0; k < 8; ++k) total[k] += p[k];

    double empirical = 0.0;
    double variance = 0.0;
    for (unsigned pair = 0; pair < 4; ++pair) {
      const double count = static_cast<double>(total[4 + pair]);
      if (count == 0.0) {
        empirical = kNaN;
        continue;
      }
      const double sign = pair == 3 ? -1.0 : 1.0;
      empirical += sign * static_cast<double>(total[pair]) / count / 4.0;
      const double e = correlator(box, static_cast<Bit>(pair >> 1), static_cast<Bit>(pair & 1U));
      variance += (1.0 - e * e) / count / 16.0;
    }
    const double exact = chsh_correlation(box);
    const double se = std::sqrt(variance);
    table.add_row({c, exact, empirical, se, z_score(empirical, exact, se),
                   no_signaling_check(box, 0.0).max_deviation, integer(samples),
                   integer(cfg.seed)});
  }
}

void protocol_sweep(const ExperimentConfig& cfg, ResultTable& table) {
  for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto results = run_targets(cfg, n, stream_key("protocol-sweep", n));
    std::uint64_t hits = 0;
    for (const auto& [x, y] : results) hits += x == y ? 1 : 0;
    const double rate = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    const double rho = std::pow(cfg.correlation() * cfg.c_prime, static_cast<double>(n));
    const double expected = 0.5 * (1.0 + rho);
    const double se = binomial_standard_error(expected, cfg.trials);
    table.add_row({integer(n), cfg.correlation(), cfg.c_prime, cfg.theta, rate, expected, se,
                   z_score(rate, expected, se), integer(cfg.trials), integer(cfg.seed)});
  }
}

void fisher_curve(const ExperimentConfig& cfg, ResultTable& table) {
  const double product = cfg.correlation() * cfg.c_prime;
  for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
    const FisherReport closed = fisher_vandam_squared(cfg.product_squared(), cfg.theta, n);
    double empirical = kNaN;
    if (n <= kMaxEmpiricalFisherLevels && cfg.trials >= kMinFisherRuns) {
      const auto runs = simulate_decoded_runs(protocol_config(cfg, n), cfg.theta, cfg.trials,
                                              cfg.seed, stream_key("fisher-curve", n));
      empirical = empirical_fisher(runs, cfg.theta, std::pow(product, static_cast<double>(n)))
                      .score_variance;
    }
    table.add_row({integer(n), cfg.correlation(), cfg.c_prime, cfg.theta, closed.value, empirical,
                   std::string(to_string(closed.regime)), integer(cfg.trials), integer(cfg.seed)});
  }
}

void disconnect(const ExperimentConfig& cfg, ResultTable& table) {
  for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto results = run_targets(cfg, n, stream_key("disconnect", n));
    PairedSamples pairs;
    pairs.reserve(results.size());
    std::uint64_t agree = 0;
    for (const auto& [x, y] : results) {
      pairs.push_back(spin_from_bit(x), spin_from_bit(y));
      agree += x == y ? 1 : 0;
    }
    const double exz = empirical_correlation(pairs);
    const double rho = std::pow(cfg.correlation() * cfg.c_prime, static_cast<double>(n));
    const double se = std::sqrt((1.0 - rho * rho) / static_cast<double>(cfg.trials));
    const auto indep = independence_statistic(pairs);
    const FisherReport closed = fisher_vandam_squared(cfg.product_squared(), cfg.theta, n);
    table.add_row({integer(n), cfg.correlation(), cfg.c_prime, cfg.theta, exz, rho, se,
                   z_score(exz, rho, se),
                   static_cast<double>(agree) / static_cast<double>(cfg.trials), indep.chi_square,
                   integer(indep.threshold_pass ? 1 : 0), closed.value, integer(cfg.trials),
                   integer(cfg.seed)});
  }
}

void clt(const ExperimentConfig& cfg, ResultTable& table) {
  for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
    const CltReport r =
        clt_suite(cfg.trials, protocol_config(cfg, n), cfg.theta, cfg.seed, stream_key("clt", n));
    table.add_row({integer(n), cfg.correlation(), cfg.c_prime, cfg.theta, r.standardized.mean,
                   r.standardized.variance, r.standardized.skewness, r.theta_bar.mean,
                   r.theta_bar.variance, r.cramer_rao_ratio, r.fisher, integer(r.normal ? 1 : 0),
                   integer(cfg.trials), integer(cfg.seed)});
  }
}

void regimes(const ExperimentConfig& cfg, ResultTable& table) {
  for (const auto& pt : regime_points(cfg)) {
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
      const FisherReport r = fisher_vandam_squared(pt.product_squared, cfg.theta, n);
      table.add_row({integer(n), pt.c, cfg.c_prime, cfg.theta, pt.product_squared,
                     2.0 * pt.product_squared, r.value, std::string(to_string(r.regime)),
                     std::string(to_string(r.limit))});
    }
  }
}

}  // namespace

std::string_view to_string(Experiment e) { return kExperimentNames[static_cast<std::size_t>(e)]; }

Experiment parse_experiment(std::string_view name) {
  for (std::size_t i = 0; i < kExperimentNames.size(); ++i) {
    if (name == kExperimentNames[i]) return static_cast<Experiment>(i);
  }
  throw UsageError(fmt::format("unknown experiment '{}'", name));
}

std::string_view to_string(TableFormat f) { return f == TableFormat::csv ? "csv" : "json"; }

TableFormat parse_format(std::string_view name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw UsageError(fmt::format("unknown format '{}' (expected csv or json)", name));
}

void ExperimentConfig::validate() const {
  if (c && c_squared) throw UsageError("give either --c or --c2, not both");
  if (c && !(*c >= -1.0 && *c <= 1.0)) throw UsageError("--c must lie in [-1, 1]");
  if (c_squared && !(*c_squared >= 0.0 && *c_squared <= 1.0)) {
    throw UsageError("--c2 must lie in [0, 1]");
  }
  if (!(c_prime >= -1.0 && c_prime <= 1.0)) throw UsageError("--c-prime must lie in [-1, 1]");
  if (n_min > n_max) throw UsageError("--n-min must not exceed --n-max");

  const bool closed_form_only = experiment == Experiment::regimes;
  if (closed_form_only || experiment == Experiment::fisher_curve) {
    if (!(theta > -1.0 && theta < 1.0)) throw UsageError("--theta must lie in (-1, 1)");
  } else if (!(theta >= -1.0 && theta <= 1.0)) {
    throw UsageError("--theta must lie in [-1, 1]");
  }
  if (experiment == Experiment::clt && !(theta > -1.0 && theta < 1.0)) {
    throw UsageError("--theta must lie in (-1, 1)");
  }
  const bool simulates = experiment == Experiment::protocol_sweep ||
                         experiment == Experiment::disconnect || experiment == Experiment::clt ||
                         experiment == Experiment::fisher_curve;
  if (simulates && experiment != Experiment::fisher_curve &&
      (n_min < 1 || n_max > kMaxSimulatedLevels)) {
    throw UsageError(fmt::format("levels must lie in [1, {}] for simulated experiments",
                                 kMaxSimulatedLevels));
  }
  if (n_max > 4096) throw UsageError("--n-max is unreasonably large");
  if (experiment != Experiment::regimes && trials == 0) throw UsageError("--trials must be positive");
}

double ExperimentConfig::correlation() const {
  if (c) return *c;
  if (c_squared) return std::sqrt(*c_squared);
  return 1.0;
}

double ExperimentConfig::product_squared() const {
  const double c2 = c_squared ? *c_squared : correlation() * correlation();
  return c2 * c_prime * c_prime;
}

std::vector<std::pair<std::string, std::string>> config_metadata(const ExperimentConfig& cfg) {
  return {
      {"tool", "nonlocal-lab"},
      {"version", kVersion},
      {"experiment", std::string(to_string(cfg.experiment))},
      {"c", cfg.c ? format_double(*cfg.c) : std::string()},
      {"c2", cfg.c_squared ? format_double(*cfg.c_squared) : std::string()},
      {"c_prime", format_double(cfg.c_prime)},
      {"theta", format_double(cfg.theta)},
      {"n_min", std::to_string(cfg.n_min)},
      {"n_max", std::to_string(cfg.n_max)},
      {"trials", std::to_string(cfg.trials)},
      {"seed", std::to_string(cfg.seed)},
      {"format", std::string(to_string(cfg.format))},
      {"streams", "mt19937_64 seeded by splitmix64(splitmix64(splitmix64(seed) ^ key) + trial)"},
  };
}

ExperimentConfig config_from_metadata(const std::vector<std::pair<std::string, std::string>>& meta) {
  auto find = [&](const char* key) -> const std::string& {
    for (const auto& [k, v] : meta) {
      if (k == key) return v;
    }
    throw UsageError(fmt::format("metadata lacks '{}'", key));
  };
  ExperimentConfig cfg;
  cfg.experiment = parse_experiment(find("experiment"));
  if (const auto& c = find("c"); !c.empty()) cfg.c = parse_double_field("c", c);
  if (const auto& c2 = find("c2"); !c2.empty()) cfg.c_squared = parse_double_field("c2", c2);
  cfg.c_prime = parse_double_field("c_prime", find("c_prime"));
  cfg.theta = parse_double_field("theta", find("theta"));
  cfg.n_min = static_cast<unsigned>(parse_unsigned_field("n_min", find("n_min")));
  cfg.n_max = static_cast<unsigned>(parse_unsigned_field("n_max", find("n_max")));
  cfg.trials = parse_unsigned_field("trials", find("trials"));
  cfg.seed = parse_unsigned_field("seed", find("seed"));
  cfg.format = parse_format(find("format"));
  cfg.validate();
  return cfg;
}

std::vector<std::string> experiment_columns(Experiment e) {
  switch (e) {
    case Experiment::chsh_verify:
      return {"c", "chsh_exact", "chsh_empirical", "std_error", "z_score", "ns_max_deviation",
              "samples", "seed"};
    case Experiment::protocol_sweep:
      return {"n", "c", "c_prime", "theta", "success_rate", "expected_rate", "std_error",
              "z_score", "trials", "seed"};
    case Experiment::fisher_curve:
      return {"n", "c", "c_prime", "theta", "fisher_closed", "fisher_empirical", "regime",
              "trials", "seed"};
    case Experiment::disconnect:
      return {"n", "c", "c_prime", "theta", "exz_empirical", "exz_expected", "std_error",
              "z_score", "agreement", "chi_square", "independent", "fisher_closed", "trials",
              "seed"};
    case Experiment::clt:
      return {"n", "c", "c_prime", "theta", "stat_mean", "stat_variance", "stat_skewness",
              "theta_bar_mean", "theta_bar_variance", "cramer_rao_ratio", "fisher_closed",
              "normal", "trials", "seed"};
    case Experiment::regimes:
      return {"n", "c", "c_prime", "theta", "product_squared", "two_product_squared",
              "fisher_closed", "regime", "limit_value"};
  }
  return {};
}

std::vector<double> chsh_default_grid() { return {-1.0, -0.5, 0.0, 0.5, 1.0 / std::sqrt(2.0), 1.0}; }

ResultTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ResultTable table;
  table.header = experiment_columns(cfg.experiment);
  table.metadata = config_metadata(cfg);
  switch (cfg.experiment) {
    case Experiment::chsh_verify:
      chsh_verify(cfg, table);
      break;
    case Experiment::protocol_sweep:
      protocol_sweep(cfg, table);
      break;
    case Experiment::fisher_curve:
      fisher_curve(cfg, table);
      break;
    case Experiment::disconnect:
      disconnect(cfg, table);
      break;
    case Experiment::clt:
      clt(cfg, table);
      break;
    case Experiment::regimes:
      regimes(cfg, table);
      break;
  }
  if (!cfg.out.empty()) emit_table(table, cfg.format, cfg.out);
  return table;
}

}  // namespace nonlocal
