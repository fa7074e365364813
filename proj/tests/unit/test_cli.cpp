#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "config.hpp"
#include "experiment.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using namespace alp;
using namespace alp::cli;

namespace {

const char* kSmallSoliton = R"(
[problem]
kind = kdv
[mesh]
type = interval
a = -15
b = 15
n_elements = 200
[initial]
type = one_soliton
beta = 4
x0 = -5
[alp]
n_modes_M = 6
dt = 5e-3
t_final = 0.05
[reference]
type = exact
[output]
name = small
snapshot_stride = 5
)";

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("alp_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ALP_EXECUTABLE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST(Config, ParsesSections) {
  const AlpConfig c = parse_config(kSmallSoliton);
  EXPECT_EQ(c.problem.kind, ProblemKind::KdV);
  EXPECT_EQ(c.mesh.type, MeshType::Interval);
  EXPECT_EQ(c.mesh.n_elements, 200);
  EXPECT_EQ(c.mesh.boundary, BoundaryKind::Dirichlet);
  EXPECT_EQ(c.initial.type, InitialType::OneSoliton);
  EXPECT_DOUBLE_EQ(c.initial.x0, -5.0);
  EXPECT_EQ(c.alp.n_modes, 6);
  EXPECT_DOUBLE_EQ(c.alp.dt, 5e-3);
  EXPECT_EQ(c.alp.num_steps(), 10);
  EXPECT_EQ(c.alp.snapshot_stride, 5);
  EXPECT_EQ(c.reference.type, ReferenceType::Exact);
  EXPECT_EQ(c.output.name, "small");
}

TEST(Config, BundledConfigsLoad) {
  for (const char* name : {"one_soliton", "one_soliton_fine", "three_soliton", "fkpp1d", "fkpp2d"}) {
    EXPECT_NO_THROW(load_config(std::string(ALP_CONFIG_DIR) + "/" + name + ".ini")) << name;
  }
  const AlpConfig c = load_config(std::string(ALP_CONFIG_DIR) + "/three_soliton.ini");
  EXPECT_EQ(c.initial.type, InitialType::NSoliton);
  EXPECT_EQ(c.initial.solitons.size(), 3);
}

TEST(Config, AutoChiEnablesCalibration) {
  const std::string with_auto =
      std::string(kSmallSoliton).replace(std::string(kSmallSoliton).find("n_modes_M"), 0,
                                         "chi = auto\nepsilon0 = 1e-2\n");
  const AlpConfig c = parse_config(with_auto);
  EXPECT_TRUE(c.alp.calibrate_chi);
  EXPECT_DOUBLE_EQ(c.alp.epsilon0, 1e-2);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config(std::string(kSmallSoliton) + "\n[alp]\nbogus_key = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[problem]\nkind = heat\n"), InvalidArgument);
  const std::string bad_dt =
      std::string(kSmallSoliton).replace(std::string(kSmallSoliton).find("5e-3"), 4, "-1");
  EXPECT_THROW(parse_config(bad_dt), InvalidArgument);
  const std::string not_a_number =
      std::string(kSmallSoliton).replace(std::string(kSmallSoliton).find("200"), 3, "many");
  EXPECT_THROW(parse_config(not_a_number), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/alp.ini"), ConfigError);
}

TEST(Config, Overrides) {
  AlpConfig c = parse_config(kSmallSoliton);
  apply_override(c, "n_modes_M", "12");
  apply_override(c, "dt", "1e-3");
  EXPECT_EQ(c.alp.n_modes, 12);
  EXPECT_DOUBLE_EQ(c.alp.dt, 1e-3);
  EXPECT_THROW(apply_override(c, "chi", "2"), ConfigError);
  EXPECT_THROW(apply_override(c, "n_modes_M", "abc"), ConfigError);
}

TEST(Experiment, RunWithErrors) {
  const AlpConfig c = parse_config(kSmallSoliton);
  const RunResult r = run_experiment(c, true);
  ASSERT_EQ(r.errors.size(), 11u);
  EXPECT_EQ(r.errors.front().step, 0);
  EXPECT_LT(r.errors.front().l2_error, 1e-2);
  EXPECT_LT(r.errors.back().l2_error, 0.15);
  ASSERT_TRUE(r.errors.back().peak_error.has_value());
  const std::string csv = trajectory_csv(r, true);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "step,time,n_negative,lambda_1,lambda_2,lambda_3,lambda_4,lambda_5,lambda_6,"
            "frobenius,gram_deviation,l2_error,peak_error");
  EXPECT_EQ(count_lines(csv), 12u);
  const std::string field = field_csv(*r.fem, r.trajectory.final_state.u);
  EXPECT_EQ(field.substr(0, field.find('\n')), "node_index,x,value");
  EXPECT_EQ(count_lines(field), 202u);
}

TEST(Binary, RunWritesOutputs) {
  const fs::path dir = scratch_dir("run");
  const fs::path cfg = write_file(dir / "small.ini", kSmallSoliton);
  ASSERT_EQ(run_cli("run --config " + cfg.string() + " --output-dir " + (dir / "out").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "small_trajectory.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "small_snapshots" / "step_000010.csv"));
  const auto summary = nlohmann::json::parse(read_file(dir / "out" / "small_summary.json"));
  EXPECT_TRUE(summary.contains("wall_clock_seconds"));
  EXPECT_TRUE(summary.contains("promotion_events"));
}

TEST(Binary, SweepWritesOneRowPerValue) {
  const fs::path dir = scratch_dir("sweep");
  const fs::path cfg = write_file(dir / "small.ini", kSmallSoliton);
  ASSERT_EQ(run_cli("sweep --config " + cfg.string() + " --output-dir " + dir.string() +
                    " --param n_modes_M --values 4,5,6,7,8"),
            0);
  const std::string csv = read_file(dir / "small_sweep.csv");
  EXPECT_EQ(count_lines(csv), 6u);
  EXPECT_NE(csv.find("n_modes_M,8,"), std::string::npos);
}

TEST(Binary, SpectrumOfFkppDatum) {
  const fs::path dir = scratch_dir("spectrum");
  ASSERT_EQ(run_cli("spectrum --config " + std::string(ALP_CONFIG_DIR) + "/fkpp1d.ini --output-dir " +
                    dir.string()),
            0);
  const auto j = nlohmann::json::parse(read_file(dir / "fkpp1d_spectrum.json"));
  EXPECT_EQ(j["n_negative"].get<int>(), 4);
  EXPECT_DOUBLE_EQ(j["chi"].get<double>(), 500.0);
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch_dir("exit");
  EXPECT_EQ(run_cli("run --config " + (dir / "missing.ini").string()), 1);
  const fs::path bad = write_file(dir / "bad.ini", std::string(kSmallSoliton) + "\n[alp]\nwhat = 1\n");
  EXPECT_EQ(run_cli("run --config " + bad.string() + " --output-dir " + dir.string()), 1);

  std::string text = read_file(std::string(ALP_CONFIG_DIR) + "/fkpp1d.ini");
  text.replace(text.find("chi = 500"), 9, "chi = auto\nchi_max = 64");
  const fs::path unreachable = write_file(dir / "unreachable.ini", text);
  EXPECT_EQ(run_cli("spectrum --config " + unreachable.string() + " --output-dir " + dir.string()), 2);
}
