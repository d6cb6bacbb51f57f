#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.h"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qramph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(std::vector<std::string> args, const std::string& config = "") {
    std::vector<std::string> full = {"qramph", "--out", dir_.string()};
    if (!config.empty()) {
      const fs::path p = dir_ / "config.json";
      std::ofstream(p) << config;
      full.push_back("--config");
      full.push_back(p.string());
    }
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : full) argv.push_back(s.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = qramph::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
  }

  std::string read(const std::string& name) const {
    std::ifstream is(dir_ / name);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  std::vector<std::vector<std::string>> csv(const std::string& name) const {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(read(name));
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RouteFidelitySingleWindow) {
  const Outcome o = run({"route-fidelity", "--window", "350ns", "--shape", "gaussian"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv("fig1d.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"param", "shape", "infidelity"}));
  const double inf = std::stod(rows[1][2]);
  EXPECT_GT(inf, 0.5e-3);
  EXPECT_LT(inf, 2e-3);
  EXPECT_EQ(read("fig1d.csv").rfind("# qramph ", 0), 0u);
}

TEST_F(Cli, RouteFidelityDefaultKappaGrid) {
  const Outcome o = run({"route-fidelity"}, R"({"windows": ["350ns"], "timedomain_window": null})");
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv("fig1c.csv");
  int gauss = 0, sech = 0;
  double lo = 1e9, hi = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    gauss += rows[i][1] == "gaussian";
    sech += rows[i][1] == "sech";
    lo = std::min(lo, std::stod(rows[i][0]));
    hi = std::max(hi, std::stod(rows[i][0]));
  }
  EXPECT_GT(gauss, 0);
  EXPECT_EQ(gauss, sech);
  EXPECT_NEAR(lo, 10.0, 1e-9);
  EXPECT_NEAR(hi, 1000.0, 1e-9);
}

TEST_F(Cli, EmptyGridIsConfigError) {
  EXPECT_EQ(run({"route-fidelity"}, R"({"kappa_two_pi_mhz": []})").code, 2);
  EXPECT_EQ(run({"route-fidelity"}, R"({"windows": []})").code, 2);
}

TEST_F(Cli, StrictConfig) {
  const Outcome o = run({"heralding"}, R"({"n_max": 4, "colour": "blue"})");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("colour"), std::string::npos);
  EXPECT_EQ(run({"heralding"}, R"({"t": 350})").code, 2);
  EXPECT_EQ(run({"heralding"}, "{not json").code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
}

TEST_F(Cli, QuerySimTable) {
  const Outcome o = run({"query-sim"}, R"({"n": 2, "data": [0, 1, 1, 0]})");
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(read("query.json"));
  EXPECT_TRUE(j.at("table_match").get<bool>());
  EXPECT_EQ(j.at("runs").size(), 4u);
}

TEST_F(Cli, QuerySimZeroDataAndMalformedAddress) {
  ASSERT_EQ(run({"query-sim"}, R"({"n": 3, "encoding": "standard"})").code, 0);
  EXPECT_TRUE(nlohmann::json::parse(read("query.json")).at("table_match").get<bool>());
  EXPECT_EQ(run({"query-sim"}, R"({"n": 2, "addresses": ["0x1"]})").code, 2);
  EXPECT_EQ(run({"query-sim"}, R"({"n": 2, "addresses": ["101"]})").code, 2);
}

TEST_F(Cli, HeraldingTables) {
  ASSERT_EQ(run({"heralding"}).code, 0);
  const auto rows = csv("fig4a.csv");
  EXPECT_EQ(rows[0][0], "n");
  EXPECT_EQ(rows[0].back(), "rate_hz");
  bool found = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double T_ns = std::stod(rows[i][5]);
    if (rows[i][3] == "inf" && rows[i][4] == "inf") EXPECT_NEAR(std::stod(rows[i][9]) * T_ns * 1e-9, 1.0, 1e-11);
    if (rows[i][0] == "7" && rows[i][4] == "2") {
      found = true;
      EXPECT_GT(std::stod(rows[i][9]), 1e3);
      EXPECT_LT(std::stod(rows[i][9]), 5e3);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(csv("fig4b.csv")[0],
            (std::vector<std::string>{"n", "T2q_us", "P_dephasing", "approx_2n2t_over_T2"}));
}

TEST_F(Cli, MonteCarloDeterministic) {
  const std::string cfg = R"({"trials": 2000, "grid": [{"n": 2, "t1_q": "100us", "t1_m": "2us"}], "verdict_trajectories": 20})";
  ASSERT_EQ(run({"--seed", "9", "montecarlo"}, cfg).code, 0);
  const std::string first = read("montecarlo.csv") + read("verdicts.jsonl");
  ASSERT_EQ(run({"--seed", "9", "--workers", "2", "montecarlo"}, cfg).code, 0);
  EXPECT_EQ(first, read("montecarlo.csv") + read("verdicts.jsonl"));
  EXPECT_EQ(run({"montecarlo"}, R"({"trials": 0})").code, 2);
}

TEST_F(Cli, ScheduleReport) {
  ASSERT_EQ(run({"schedule"}, R"({"n": [4]})").code, 0);
  const auto report = nlohmann::json::parse(read("schedule_report.json"));
  EXPECT_TRUE(report.at("ok").get<bool>());
  for (const auto& s : report.at("schedules")) EXPECT_TRUE(s.at("conflicts").empty());
  const auto hybrid = nlohmann::json::parse(read("schedule_hybrid_n4.json"));
  EXPECT_EQ(hybrid.at("makespan_t"), 14);
  const auto standard = nlohmann::json::parse(read("schedule_standard_vacuum_n4.json"));
  EXPECT_EQ(standard.at("makespan_t"), 22);
  EXPECT_EQ(read("schedule_hybrid_n4.csv").find("k,level,slot_start,direction,medium") != std::string::npos, true);
}

TEST_F(Cli, RouterSim) {
  ASSERT_EQ(run({"router-sim"}).code, 0);
  const auto j = nlohmann::json::parse(read("router_sim.json"));
  EXPECT_NEAR(j.at("fidelity").get<double>(), 0.998602, 2e-6);
  EXPECT_EQ(run({"router-sim"}, R"({"dt": "5ns"})").code, 2);
}
