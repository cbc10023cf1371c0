#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavcollect/cli.hpp"
#include "uavcollect/errors.hpp"
#include "uavcollect/pipeline.hpp"
#include "uavcollect/sweep.hpp"

namespace uc = uavcollect;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "uavcollect");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = uc::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("uavcollect_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_F(CliTest, GenerateIsDeterministic) {
    ASSERT_EQ(run({"generate", "--sensors", "1000", "--size", "8000", "--seed", "7", "-o", path("a.json")}).code, 0);
    ASSERT_EQ(run({"generate", "--sensors", "1000", "--size", "8000", "--seed", "7", "-o", path("b.json")}).code, 0);
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_EQ(nlohmann::json::parse(slurp(path("a.json")))["sensors"].size(), 1000u);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({"generate", "--size", "8000", "-o", path("x.json")}).code, uc::kExitUsage);
    EXPECT_EQ(run({}).code, uc::kExitUsage);
    ASSERT_EQ(run({"generate", "--sensors", "50", "--size", "3000", "-o", path("s.json")}).code, 0);
    const auto bogus = run({"plan", "--algo", "bogus", path("s.json")});
    EXPECT_EQ(bogus.code, uc::kExitUsage);
    EXPECT_NE(bogus.err.find("pmtp"), std::string::npos);
    EXPECT_EQ(run({"plan", path("missing.json")}).code, uc::kExitUsage);
    EXPECT_EQ(run({"sweep", "--axis", "height", "--values", "1"}).code, uc::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, uc::kExitOk);
}

TEST_F(CliTest, PlanWritesReportAndTables) {
    ASSERT_EQ(run({"generate", "--sensors", "1000", "--size", "8000", "--seed", "7", "-o", path("s.json")}).code, 0);
    const auto r = run({"plan", "--algo", "pmtp", path("s.json"), "-o", path("out")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = nlohmann::json::parse(slurp(path("out.report.json")));
    EXPECT_TRUE(rep["valid"].get<bool>());
    EXPECT_GE(rep["completion_s"].get<double>(), rep["lower_bound_s"].get<double>() - 1e-6);
    EXPECT_NEAR(rep["completion_s"].get<double>(), rep["flight_s"].get<double>() + rep["hover_s"].get<double>(), 1e-6);
    EXPECT_EQ(rep["checks"].size(), 6u);
    for (const auto& c : rep["checks"]) EXPECT_TRUE(c["passed"].get<bool>());

    const std::string plan = slurp(path("out.plan.csv"));
    EXPECT_EQ(plan.substr(0, plan.find('\n')), "step,uav,x,y,duty,hover_s,flight_s");
    EXPECT_EQ(count_lines(plan), 1 + rep["steps"].get<std::size_t>() * rep["uavs"].get<std::size_t>());
    const std::string clusters = slurp(path("out.clusters.csv"));
    EXPECT_EQ(clusters.substr(0, clusters.find('\n')), "sensor_id,cluster_id");
    EXPECT_EQ(count_lines(clusters), 1001u);
    EXPECT_EQ(count_lines(slurp(path("out.cps.csv"))), 1 + rep["clusters"].get<std::size_t>());
}

TEST_F(CliTest, PmtpBeatsTtpOnAPaperScaleScenario) {
    ASSERT_EQ(run({"generate", "--sensors", "1000", "--size", "8000", "--seed", "7", "-o", path("s.json")}).code, 0);
    const auto a = nlohmann::json::parse(run({"plan", "--algo", "pmtp", path("s.json")}).out);
    const auto b = nlohmann::json::parse(run({"plan", "--algo", "ttp", path("s.json")}).out);
    EXPECT_LT(a["completion_s"].get<double>(), b["completion_s"].get<double>());
}

TEST_F(CliTest, ConfigOverridesAndInfeasibleExitCode) {
    ASSERT_EQ(run({"generate", "--sensors", "100", "--size", "3000", "-o", path("s.json")}).code, 0);
    std::ofstream(path("bad.json")) << R"({"snr_th_g2u_db": 60})";
    EXPECT_EQ(run({"plan", path("s.json"), "--config", path("bad.json")}).code, uc::kExitInfeasible);
    std::ofstream(path("invalid.json")) << R"({"kappa": 5})";
    EXPECT_EQ(run({"plan", path("s.json"), "--config", path("invalid.json")}).code, uc::kExitValidation);
    std::ofstream(path("ok.json")) << R"({"snr_th_g2u_db": 23})";
    const auto r = run({"plan", path("s.json"), "--config", path("ok.json")});
    EXPECT_EQ(r.code, 0);
    const auto base = nlohmann::json::parse(run({"plan", path("s.json")}).out);
    EXPECT_LT(nlohmann::json::parse(r.out)["radii"]["r_g2u_m"].get<double>(), base["radii"]["r_g2u_m"].get<double>());
}

TEST_F(CliTest, SweepEmitsOneRowPerValueSeedAndPlanner) {
    const auto r = run({"sweep", "--axis", "sensors", "--values", "100,200", "--seeds", "2", "--size", "4000", "-o",
                        path("sweep.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(path("sweep.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "axis_value,seed,algo,completion_s,lower_bound_s,flight_s,hover_s");
    EXPECT_EQ(count_lines(csv), 1u + 2 * 2 * 3);
    const auto snr = run({"sweep", "--axis", "snr-g2u-db", "--values", "17,23", "--seeds", "1", "--sensors", "100",
                          "--size", "3000"});
    ASSERT_EQ(snr.code, 0) << snr.err;
    EXPECT_EQ(count_lines(snr.out), 1u + 2 * 1 * 3);
}

TEST(Sweep, RowsAreOrderedAndIndependentOfWorkerCount) {
    uc::SweepConfig cfg;
    cfg.values = {150, 300};
    cfg.seeds = 3;
    cfg.size_m = 5000;
    cfg.workers = 1;
    const auto one = uc::sweep_csv(uc::run_sweep(cfg));
    cfg.workers = 4;
    const auto rows = uc::run_sweep(cfg);
    EXPECT_EQ(uc::sweep_csv(rows), one);
    ASSERT_EQ(rows.size(), 18u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].axis_value, cfg.values[i / 9]);
        EXPECT_EQ(rows[i].seed, 1 + (i / 3) % 3);
        EXPECT_EQ(rows[i].algorithm, uc::kAllAlgorithms[i % 3]);
        EXPECT_TRUE(rows[i].valid);
    }
}

TEST(Sweep, ScenarioFollowsTheAxis) {
    uc::SweepConfig cfg;
    cfg.axis = uc::SweepAxis::SnrG2uDb;
    cfg.sensors = 123;
    const auto s = uc::sweep_scenario(cfg, 17.0, 5);
    EXPECT_EQ(s.sensors.size(), 123u);
    EXPECT_DOUBLE_EQ(s.params.snr_th_g2u.db(), 17.0);
    cfg.axis = uc::SweepAxis::Sensors;
    EXPECT_EQ(uc::sweep_scenario(cfg, 600, 5).sensors.size(), 600u);
    EXPECT_THROW(uc::parse_axis("nope"), uc::InvalidArgument);
    EXPECT_EQ(uc::parse_algorithm("cstp"), uc::Algorithm::Cstp);
}
