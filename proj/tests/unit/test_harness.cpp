#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nonlocal/errors.hpp"
#include "nonlocal/harness.hpp"
#include "nonlocal/table.hpp"

using namespace nonlocal;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "nonlocal_harness_tests";
  fs::create_directories(dir);
  return dir / name;
}

ExperimentConfig quiet(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.out.clear();
  return cfg;
}

}  // namespace

TEST(Harness, ParseNames) {
  for (auto e : {Experiment::chsh_verify, Experiment::protocol_sweep, Experiment::fisher_curve,
                 Experiment::disconnect, Experiment::clt, Experiment::regimes}) {
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  }
  EXPECT_THROW(parse_experiment("bogus"), UsageError);
  EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(Harness, ValidationRejectsBadConfigs) {
  auto cfg = quiet(Experiment::protocol_sweep);
  cfg.n_min = 5;
  cfg.n_max = 3;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = quiet(Experiment::protocol_sweep);
  cfg.c = 0.5;
  cfg.c_squared = 0.25;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = quiet(Experiment::protocol_sweep);
  cfg.c = 1.5;
  EXPECT_THROW(run_experiment(cfg), UsageError);
  cfg = quiet(Experiment::fisher_curve);
  cfg.theta = 1.0;
  EXPECT_THROW(cfg.validate(), UsageError);
  cfg = quiet(Experiment::disconnect);
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), UsageError);
}

TEST(Harness, PerfectSweepSucceedsEveryTime) {
  auto cfg = quiet(Experiment::protocol_sweep);
  cfg.c = 1.0;
  cfg.n_min = 1;
  cfg.n_max = 4;
  cfg.trials = 1000;
  const auto t = run_experiment(cfg);
  ASSERT_EQ(t.rows.size(), 4U);
  for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_EQ(t.number(r, "success_rate"), 1.0);
}

TEST(Harness, BoundaryFisherCurveIsFlat) {
  auto cfg = quiet(Experiment::fisher_curve);
  cfg.c_squared = 0.5;
  cfg.n_min = 1;
  cfg.n_max = 20;
  cfg.trials = 10;  // below the Monte Carlo threshold: closed form only
  const auto t = run_experiment(cfg);
  ASSERT_EQ(t.rows.size(), 20U);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_NEAR(t.number(r, "fisher_closed"), 1.0, 1e-9);
    EXPECT_EQ(t.text(r, "regime"), "randomness");
    EXPECT_TRUE(std::isnan(t.number(r, "fisher_empirical")));
  }
}

TEST(Harness, DisconnectShortRun) {
  auto cfg = quiet(Experiment::disconnect);
  cfg.c = 1.0;
  cfg.c_prime = 0.9;
  cfg.n_min = 1;
  cfg.n_max = 8;
  cfg.trials = 20000;
  const auto t = run_experiment(cfg);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double n = t.number(r, "n");
    EXPECT_LT(std::fabs(t.number(r, "z_score")), 4.0) << n;
    EXPECT_NEAR(t.number(r, "fisher_closed"), std::pow(1.62, n), 1e-9 * std::pow(1.62, n));
  }
}

TEST(Harness, ChshDefaultGrid) {
  auto cfg = quiet(Experiment::chsh_verify);
  cfg.trials = 100000;
  const auto t = run_experiment(cfg);
  ASSERT_EQ(t.rows.size(), chsh_default_grid().size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_NEAR(t.number(r, "chsh_exact"), t.number(r, "c"), 1e-12);
    EXPECT_LT(std::fabs(t.number(r, "z_score")), 4.0);
  }
}

TEST(Harness, RegimesTable) {
  auto cfg = quiet(Experiment::regimes);
  cfg.theta = 0.3;
  cfg.n_min = 30;
  cfg.n_max = 30;
  const auto t = run_experiment(cfg);
  bool saw_boundary = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.text(r, "regime") == "randomness") {
      saw_boundary = true;
      EXPECT_NEAR(t.number(r, "fisher_closed"), 1.0, 1e-9);
      EXPECT_EQ(t.text(r, "limit_value"), "1");
    }
  }
  EXPECT_TRUE(saw_boundary);
}

TEST(Harness, SameSeedGivesByteIdenticalFiles) {
  auto cfg = quiet(Experiment::clt);
  cfg.c = 0.9;
  cfg.n_min = 2;
  cfg.n_max = 3;
  cfg.theta = 0.1;
  cfg.trials = 1500;
  cfg.seed = 1234;
  cfg.out = scratch("a.csv").string();
  run_experiment(cfg);
  cfg.out = scratch("b.csv").string();
  run_experiment(cfg);
  EXPECT_EQ(slurp(scratch("a.csv")), slurp(scratch("b.csv")));
  cfg.seed = 1235;
  cfg.out = scratch("c.csv").string();
  run_experiment(cfg);
  EXPECT_NE(slurp(scratch("a.csv")), slurp(scratch("c.csv")));
}

// Only exercises more than one worker on multi-core hosts; the schedule-free
// reduction itself is covered by the Parallel tests.
TEST(Harness, OutputDoesNotDependOnWorkerCount) {
  auto cfg = quiet(Experiment::protocol_sweep);
  cfg.c = 0.8;
  cfg.n_min = 3;
  cfg.n_max = 5;
  cfg.trials = 3000;
  ::setenv("NONLOCAL_LAB_THREADS", "1", 1);
  const auto one = render_table(run_experiment(cfg), TableFormat::csv);
  ::setenv("NONLOCAL_LAB_THREADS", "4", 1);
  const auto four = render_table(run_experiment(cfg), TableFormat::csv);
  ::unsetenv("NONLOCAL_LAB_THREADS");
  EXPECT_EQ(one, four);
}

TEST(Harness, MetadataReconstructsTheRun) {
  auto cfg = quiet(Experiment::disconnect);
  cfg.c_squared = 0.81;
  cfg.c_prime = 0.95;
  cfg.theta = -0.25;
  cfg.n_min = 2;
  cfg.n_max = 3;
  cfg.trials = 500;
  cfg.seed = 0xDEADBEEFCAFEULL;
  cfg.format = TableFormat::json;
  const auto first = run_experiment(cfg);
  auto again = config_from_metadata(first.metadata);
  EXPECT_EQ(again.seed, cfg.seed);
  EXPECT_EQ(again.c_squared, cfg.c_squared);
  EXPECT_FALSE(again.c.has_value());
  again.out.clear();
  EXPECT_EQ(render_table(run_experiment(again), TableFormat::json),
            render_table(first, TableFormat::json));
}

TEST(Table, HeaderOnlyCsv) {
  ResultTable t;
  t.header = experiment_columns(Experiment::fisher_curve);
  const auto csv = render_table(t, TableFormat::csv);
  EXPECT_EQ(csv, "n,c,c_prime,theta,fisher_closed,fisher_empirical,regime,trials,seed\n");
  const auto path = scratch("empty.csv");
  emit_table(t, TableFormat::csv, path.string());
  EXPECT_EQ(slurp(path), csv);
}

TEST(Table, RejectsRaggedRows) {
  ResultTable t;
  t.header = {"a", "b"};
  EXPECT_THROW(t.add_row({1.0}), DomainError);
}

TEST(Table, JsonRoundTripsThroughGenericParser) {
  ResultTable t;
  t.header = {"n", "x", "label"};
  t.metadata = {{"seed", "7"}};
  t.add_row({std::int64_t{3}, 0.1, std::string("a\"b")});
  t.add_row({std::int64_t{-4}, 1.0 / 3.0, std::string("signaling")});
  t.add_row({std::int64_t{0}, 6.02214076e23, std::string()});
  const auto j = nlohmann::json::parse(render_table(t, TableFormat::json));
  EXPECT_EQ(j["metadata"]["seed"], "7");
  ASSERT_EQ(j["columns"].size(), 3U);
  ASSERT_EQ(j["rows"].size(), 3U);
  EXPECT_EQ(j["rows"][0]["n"].get<std::int64_t>(), 3);
  EXPECT_EQ(j["rows"][0]["x"].get<double>(), 0.1);
  EXPECT_EQ(j["rows"][1]["x"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(j["rows"][2]["x"].get<double>(), 6.02214076e23);
  EXPECT_EQ(j["rows"][0]["label"], "a\"b");
}

TEST(Table, CsvDoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Table, UnwritablePathIsIoError) {
  ResultTable t;
  t.header = {"a"};
  EXPECT_THROW(emit_table(t, TableFormat::csv, "/nonexistent-dir/x/y.csv"), IoError);
}
