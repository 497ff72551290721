#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/table.hpp"

namespace nonlocal {

enum class Experiment { chsh_verify, protocol_sweep, fisher_curve, disconnect, clt, regimes };

std::string_view to_string(Experiment e);
/// Throws UsageError for unknown names.
Experiment parse_experiment(std::string_view name);

std::string_view to_string(TableFormat f);
TableFormat parse_format(std::string_view name);

/// Everything a run depends on. Two runs with equal configs produce
/// byte-identical tables whatever the worker count.
struct ExperimentConfig {
  Experiment experiment = Experiment::regimes;
  std::optional<double> c;          ///< Bell-CHSH correlation
  std::optional<double> c_squared;  ///< alternative: c^2, exact at the 1/2 boundary
  double c_prime = 1.0;
  double theta = 0.0;
  unsigned n_min = 1;
  unsigned n_max = 4;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  TableFormat format = TableFormat::csv;
  std::string out = "-";  ///< "-" for stdout, empty to skip writing

  /// Throws UsageError on out-of-domain parameters.
  void validate() const;
  bool has_correlation() const { return c.has_value() || c_squared.has_value(); }
  /// c, or sqrt(c^2); 1 when neither is set.
  double correlation() const;
  /// (c c')^2, computed from c^2 when that was supplied.
  double product_squared() const;
};

/// Ordered metadata block echoing every field of the config.
std::vector<std::pair<std::string, std::string>> config_metadata(const ExperimentConfig& cfg);

/// Inverse of config_metadata. Throws UsageError on missing or bad keys.
ExperimentConfig config_from_metadata(const std::vector<std::pair<std::string, std::string>>& meta);

/// Column order of each experiment's table.
std::vector<std::string> experiment_columns(Experiment e);

/// Runs the experiment and writes its table to cfg.out (unless empty).
/// Trial t of sub-experiment k draws from derive_stream(seed, k, t), where k
/// is stream_key(experiment name, n or grid index).
ResultTable run_experiment(const ExperimentConfig& cfg);

/// Default correlation grid used by chsh-verify when no correlation is given.
std::vector<double> chsh_default_grid();

}  // namespace nonlocal
