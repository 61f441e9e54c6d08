#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ppprelay/cli/config.hpp"
#include "ppprelay/cli/csv.hpp"
#include "ppprelay/cli/presets.hpp"
#include "ppprelay/cli/sweep.hpp"

namespace ppprelay::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("ppprelay_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::vector<std::string> errors_of(const std::vector<std::string>& args) {
  try {
    parse_config(args);
  } catch (const ConfigErrors& e) {
    return e.messages();
  }
  return {};
}

TEST(ParseConfigTest, FullAnalyticCommand) {
  const auto c = parse_config({"--mode", "analytic", "--scheme", "bulk", "--lambda", "1", "--sigma",
                               "5", "--rsd", "5", "--K", "4", "--alpha", "2", "--snr", "100"});
  EXPECT_EQ(c.mode, Mode::analytic);
  EXPECT_EQ(c.run_mode, Mode::analytic);
  EXPECT_EQ(c.scheme, SchemeChoice::bulk);
  EXPECT_EQ(c.lambda, std::vector<double>{1.0});
  EXPECT_EQ(c.subcarriers, std::vector<int>{4});
  EXPECT_EQ(c.snr, std::vector<double>{100.0});
  EXPECT_EQ(c.sigma, 5.0);
  EXPECT_EQ(c.r_sd, 5.0);
}

TEST(ParseConfigTest, RejectsSmallPathLoss) {
  const auto errs = errors_of({"--mode", "analytic", "--alpha", "1.5"});
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_NE(errs[0].find("alpha"), std::string::npos);
}

TEST(ParseConfigTest, ReportsEveryError) {
  const auto errs = errors_of({"--mode", "analytic", "--alpha", "1.5", "--sigma", "-1", "--trials",
                               "many", "--psi", "2", "--lambda", "log:0:1:3"});
  EXPECT_EQ(errs.size(), 5u);
  EXPECT_EQ(errors_of({"--lambda", "1"}), std::vector<std::string>{"missing required --mode"});
  EXPECT_FALSE(errors_of({"--mode", "bogus"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "analytic", "--unknown-flag", "3"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "asymptotic", "--alpha", "3"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "optimize-k", "--scheme", "ps"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "diversity", "--snr", "100"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "analytic", "--snr", "10", "--snr-db", "10"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "analytic", "--verify"}).empty());
}

TEST(ParseConfigTest, FlagsOverrideConfigFile) {
  TempDir dir;
  const auto path = dir.file("run.conf");
  std::ofstream(path) << "# sample\nmode = analytic\nK = 4   # four subcarriers\n\nlambda = 0.5\n";
  const auto c = parse_config({"--config", path.string(), "--K", "8"});
  EXPECT_EQ(c.subcarriers, std::vector<int>{8});
  EXPECT_EQ(c.lambda, std::vector<double>{0.5});
  EXPECT_EQ(c.mode, Mode::analytic);
}

TEST(ParseConfigTest, ConfigFileErrors) {
  TempDir dir;
  const auto path = dir.file("bad.conf");
  std::ofstream(path) << "mode = analytic\ncolour = blue\nno equals sign\nalpha = 1\n";
  const auto errs = errors_of({"--config", path.string()});
  ASSERT_EQ(errs.size(), 3u);
  EXPECT_NE(errs[0].find("unknown key 'colour'"), std::string::npos);
  EXPECT_NE(errs[1].find(":3:"), std::string::npos);
  EXPECT_FALSE(errors_of({"--config", dir.file("missing.conf").string(), "--mode", "analytic"})
                   .empty());
}

TEST(ParseConfigTest, DecibelSnr) {
  const auto c = parse_config({"--mode", "analytic", "--snr-db", "0,20,30"});
  ASSERT_EQ(c.snr.size(), 3u);
  EXPECT_DOUBLE_EQ(c.snr[0], 1.0);
  EXPECT_DOUBLE_EQ(c.snr[1], 100.0);
  EXPECT_DOUBLE_EQ(c.snr[2], 1000.0);
}

TEST(ParseConfigTest, HelpIsNotAnError) {
  EXPECT_THROW(parse_config({"--help"}), HelpRequested);
}

TEST(ParseConfigTest, RenderedConfigRoundTrips) {
  TempDir dir;
  const auto c = parse_config({"--mode", "simulate", "--scheme", "both", "--lambda", "log:0.01:1:5",
                               "--K", "2,4", "--trials", "1e4", "--seed", "77", "--connection"});
  const auto path = dir.file("echo.conf");
  std::ofstream(path) << render_config(c);
  const auto again = parse_config({"--config", path.string()});
  EXPECT_EQ(render_config(again), render_config(c));
  EXPECT_EQ(again.lambda, c.lambda);
  EXPECT_EQ(again.trials, 10000u);
  EXPECT_TRUE(again.connection);
}

TEST(ParseSweepTest, Forms) {
  EXPECT_EQ(parse_sweep("1, 2.5,4"), (std::vector<double>{1, 2.5, 4}));
  EXPECT_EQ(parse_sweep("lin:0:1:5"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
  const auto lg = parse_sweep("log:1:1e4:5");
  EXPECT_EQ(lg, (std::vector<double>{1, 10, 100, 1000, 10000}));
  EXPECT_EQ(parse_sweep("log:3:9:1"), std::vector<double>{3});
  EXPECT_THROW(parse_sweep("log:0:1:4"), ConfigurationError);
  EXPECT_THROW(parse_sweep("lin:0:1"), ConfigurationError);
  EXPECT_THROW(parse_sweep("1,,2"), ConfigurationError);
  EXPECT_THROW(parse_sweep(""), ConfigurationError);
}

TEST(PresetTest, EveryPresetResolves) {
  for (auto name : preset_names()) {
    const auto c = parse_config({"--mode", "figure", "--preset", std::string(name)});
    EXPECT_NE(c.run_mode, Mode::figure) << name;
    EXPECT_EQ(c.sigma, 5.0);
    EXPECT_EQ(c.r_sd, 5.0);
  }
  const auto fig3 = parse_config({"--mode", "figure", "--preset", "fig3"});
  EXPECT_EQ(fig3.run_mode, Mode::simulate);
  EXPECT_EQ(fig3.lambda, std::vector<double>{1.0});
  EXPECT_EQ(fig3.alpha, (std::vector<double>{2.0, 4.0}));
  EXPECT_EQ(fig3.snr.front(), 1.0);
  EXPECT_EQ(fig3.snr.back(), 1e4);
  EXPECT_EQ(fig3.trials, 100000u);
  const auto fig7 = parse_config({"--mode", "figure", "--preset", "fig7", "--trials", "10"});
  EXPECT_EQ(fig7.run_mode, Mode::optimize_k);
  EXPECT_EQ(fig7.snr, std::vector<double>{100.0});
  EXPECT_EQ(fig7.trials, 10u);
  EXPECT_FALSE(errors_of({"--mode", "figure", "--preset", "fig9"}).empty());
  EXPECT_FALSE(errors_of({"--mode", "figure"}).empty());
}

TEST(CsvTest, QuotingAndRoundTrip) {
  CsvTable t;
  t.header = {"name", "value"};
  t.rows = {{"plain", "1"}, {"with,comma", "say \"hi\""}, {"multi\nline", ""}};
  std::stringstream ss;
  write_csv(ss, t);
  EXPECT_EQ(ss.str(),
            "name,value\r\nplain,1\r\n\"with,comma\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",\r\n");
  const auto back = read_csv(ss);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.column("value"), 1u);
  EXPECT_THROW(back.column("missing"), std::out_of_range);
}

TEST(CsvTest, NumbersRoundTripExactly) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  CsvTable t;
  t.header = {"x"};
  std::vector<double> xs;
  for (int i = 0; i < 5000; ++i) {
    const double x = std::ldexp(mant(gen), expo(gen));
    xs.push_back(x);
    t.rows.push_back({format_double(x)});
  }
  std::stringstream ss;
  write_csv(ss, t);
  const auto back = read_csv(ss);
  ASSERT_EQ(back.rows.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(std::stod(back.rows[i][0]), xs[i]);
}

TEST(ConnectionViewTest, Complement) {
  EXPECT_EQ(connection_probability_view(1.0), 0.0);
  EXPECT_EQ(connection_probability_view(0.0), 1.0);
  EXPECT_EQ(connection_probability_view(0.25), 0.75);
  EXPECT_THROW(connection_probability_view(1.5), ConfigurationError);
}

std::string csv_text(const SweepResult& r) {
  std::stringstream ss;
  write_csv(ss, r.table);
  return ss.str();
}

TEST(RunSweepTest, SimulateColumnsAndVerify) {
  auto c = parse_config({"--mode", "simulate", "--scheme", "both", "--lambda", "0.05,0.2", "--snr",
                         "100", "--trials", "20000", "--verify", "--connection"});
  const auto r = run_sweep(c);
  ASSERT_EQ(r.table.rows.size(), 4u);
  EXPECT_EQ(r.table.rows[0][r.table.column("scheme")], "bulk");
  EXPECT_EQ(r.table.rows[3][r.table.column("scheme")], "ps");
  const auto p = r.table.column("p_outage");
  const auto conn = r.table.column("p_connection");
  for (const auto& row : r.table.rows) {
    EXPECT_DOUBLE_EQ(std::stod(row[conn]), 1.0 - std::stod(row[p]));
    EXPECT_EQ(row[r.table.column("snr_db")], "20");
  }
  EXPECT_EQ(r.verify.points, 4u);
  EXPECT_TRUE(r.verify.passed());
  const std::string meta = render_metadata(c, r);
  EXPECT_NE(meta.find("seed = 1\n"), std::string::npos);
  EXPECT_NE(meta.find("version = "), std::string::npos);
  EXPECT_NE(meta.find("trials = 20000\n"), std::string::npos);
}

TEST(RunSweepTest, PlaneSimulationRecordsTruncation) {
  auto c = parse_config({"--mode", "simulate", "--region", "plane", "--alpha", "4", "--lambda",
                         "0.1", "--trials", "2000"});
  const auto r = run_sweep(c);
  EXPECT_NO_THROW(r.table.column("r_max"));
  EXPECT_NE(render_metadata(c, r).find("r_max = "), std::string::npos);
}

TEST(RunSweepTest, IdenticalAcrossWorkers) {
  std::string first;
  for (const char* w : {"1", "2", "8"}) {
    auto c = parse_config({"--mode", "simulate", "--scheme", "both", "--lambda", "0.05,0.5",
                           "--snr", "10,100", "--trials", "5000", "--seed", "9", "--workers", w});
    const std::string text = csv_text(run_sweep(c));
    if (first.empty()) first = text;
    EXPECT_EQ(text, first) << "workers = " << w;
  }
}

TEST(RunSweepTest, OtherModes) {
  const auto analytic = run_sweep(parse_config({"--mode", "analytic", "--scheme", "both"}));
  EXPECT_EQ(analytic.table.rows.size(), 2u);
  const auto fig2 = run_sweep(parse_config({"--mode", "figure", "--preset", "fig2"}));
  EXPECT_EQ(fig2.table.rows.size(), 20u * 13u);
  const auto ratio = run_sweep(parse_config({"--mode", "ratio", "--lambda", "0,0.02"}));
  EXPECT_EQ(ratio.table.rows[0][ratio.table.column("phi")], "1");
  const auto div = run_sweep(parse_config({"--mode", "diversity", "--snr", "log:1e2:1e4:3"}));
  EXPECT_EQ(div.table.rows.size(), 2u);
  const auto opt = run_sweep(parse_config({"--mode", "figure", "--preset", "fig8"}));
  EXPECT_EQ(opt.table.rows.size(), 13u * 3u);
  EXPECT_NO_THROW(opt.table.column("lambda_c"));
  const auto asym = run_sweep(parse_config({"--mode", "asymptotic", "--snr", "1e6"}));
  EXPECT_EQ(asym.table.rows[0][asym.table.column("in_validity_region")], "true");
}

#ifdef PPPRELAY_TOOL_PATH
int run_tool(const std::string& args) {
  const int status = std::system((std::string(PPPRELAY_TOOL_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(ToolTest, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run_tool("--mode analytic --lambda 1"), 0);
  EXPECT_EQ(run_tool("--mode analytic --alpha 1.5"), 1);
  EXPECT_EQ(run_tool("--lambda 1"), 1);
  // K beyond the per-subcarrier cancellation limit of the alternating sum.
  EXPECT_EQ(run_tool("--mode analytic --scheme ps --K 40 --lambda 5 --snr 1e4"), 2);
  const auto out = dir.file("o.csv");
  EXPECT_EQ(run_tool("--mode analytic --output " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out));
  EXPECT_TRUE(fs::exists(out.string() + ".meta"));
  EXPECT_EQ(run_tool("--mode analytic --output /nonexistent/dir/o.csv"), 1);
}
#endif

}  // namespace
}  // namespace ppprelay::cli
