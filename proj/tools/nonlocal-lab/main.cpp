// nonlocal-lab: run one reproduction experiment and write its result table.
//
// Exit status: 0 on success, 2 on a usage error, 1 on any runtime failure
// (I/O, too few samples, numerical preconditions).

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <exception>
#include <string>

#include "nonlocal/errors.hpp"
#include "nonlocal/harness.hpp"
#include "nonlocal/version.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Van Dam protocol and NS-box reproduction experiments", "nonlocal-lab"};
  app.set_version_flag("--version", std::string(nonlocal::kVersion));

  std::string experiment;
  std::string format = "csv";
  double c = 0.0;
  double c2 = 0.0;
  nonlocal::ExperimentConfig cfg;

  app.add_option("experiment", experiment,
                 "chsh-verify | protocol-sweep | fisher-curve | disconnect | clt | regimes")
      ->required();
  auto* c_opt = app.add_option("--c", c, "Bell-CHSH correlation of each box");
  auto* c2_opt = app.add_option("--c2", c2, "Squared correlation c^2 (exact at the 1/2 boundary)");
  c_opt->excludes(c2_opt);
  app.add_option("--c-prime", cfg.c_prime, "Correlation of each classical link stage")
      ->capture_default_str();
  app.add_option("--theta", cfg.theta, "Source parameter")->capture_default_str();
  app.add_option("--n-min", cfg.n_min, "Smallest level count")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "Largest level count")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trials (or samples) per row")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  app.add_option("--format", format, "csv | json")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    cfg.experiment = nonlocal::parse_experiment(experiment);
    cfg.format = nonlocal::parse_format(format);
    if (c_opt->count() > 0) cfg.c = c;
    if (c2_opt->count() > 0) cfg.c_squared = c2;
    cfg.validate();
  } catch (const std::exception& e) {
    fmt::print(stderr, "nonlocal-lab: {}\n", e.what());
    return kExitUsage;
  }

  try {
    nonlocal::run_experiment(cfg);
  } catch (const nonlocal::UsageError& e) {
    fmt::print(stderr, "nonlocal-lab: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "nonlocal-lab: {}\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
