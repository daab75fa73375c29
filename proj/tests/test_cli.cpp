#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ddflow/errors.hpp"
#include "ddflow/sim.hpp"
#include "run_spec.hpp"

using namespace ddflow;
using namespace ddflow::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ddflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ddflow_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string spec_error_field(Command c, const RawOptions& o) {
  try {
    make_run_spec(c, o);
  } catch (const SpecError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("run spec defaults") {
  const auto est = make_run_spec(Command::Estimate, {});
  CHECK(est.signal == "sin(5*t-2)");
  CHECK(est.k == 1);
  CHECK(est.sigmas == std::vector<double>{5.0});
  CHECK(est.sim.h == 1e-3);
  CHECK(est.sim.tf == 10.0);
  CHECK(est.out_dir == "out");
  const auto opt = make_run_spec(Command::Optimize, {});
  CHECK(opt.cost == "quadratic-tracking");
  CHECK(opt.sigmas == std::vector<double>{5.0, 20.0});
  CHECK(opt.modes == std::vector<CorrectionMode>{CorrectionMode::Ideal, CorrectionMode::Estimated});
  CHECK(make_run_spec(Command::Sweep, {}).sigmas.size() == 4);
}

TEST_CASE("run spec validation names the field") {
  CHECK(spec_error_field(Command::Estimate, {{"k", "0"}}) == "k");
  CHECK(spec_error_field(Command::Estimate, {{"k", "1.5"}}) == "k");
  CHECK(spec_error_field(Command::Estimate, {{"sigma", "-1"}}) == "sigma");
  CHECK(spec_error_field(Command::Estimate, {{"sigma", "5,20"}}) == "sigma");
  CHECK(spec_error_field(Command::Sweep, {{"sigma", "40,80"}}) == "sigma");
  CHECK(spec_error_field(Command::Estimate, {{"signal", "tan(t)"}}) == "signal");
  CHECK(spec_error_field(Command::Estimate, {{"noise-var", "-0.1"}}) == "noise-var");
  CHECK(spec_error_field(Command::Estimate, {{"seed", "-3"}}) == "seed");
  CHECK(spec_error_field(Command::Estimate, {{"tf", "0"}}) == "tf");
  CHECK(spec_error_field(Command::Estimate, {{"h", "0"}}) == "h");
  CHECK(spec_error_field(Command::Estimate, {{"h", "5"}}) == "h");
  CHECK(spec_error_field(Command::Estimate, {{"t0", "nan"}}) == "t0");
  CHECK(spec_error_field(Command::Optimize, {{"cost", "hinge"}}) == "cost");
  CHECK(spec_error_field(Command::Optimize, {{"mode", "ideal,fast"}}) == "mode");
  CHECK(spec_error_field(Command::Optimize, {{"cost", "quadratic-tracking"}, {"mode", "none"}}).empty());
}

TEST_CASE("config files") {
  std::istringstream good("# comment\nsigma = 20   # trailing\n\n  k=2\nnoise-var = 0.01\n");
  const auto raw = parse_config(good);
  CHECK(raw.at("sigma") == "20");
  CHECK(raw.at("k") == "2");
  CHECK(raw.at("noise-var") == "0.01");
  std::istringstream unknown("sigmaa = 3\n");
  CHECK_THROWS_AS(parse_config(unknown), SpecError);
  std::istringstream malformed("sigma 3\n");
  CHECK_THROWS_AS(parse_config(malformed), SpecError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/ddflow.cfg"), SpecError);
}

TEST_CASE("estimate writes CSV and SVG and reports the oracle") {
  const auto dir = scratch("estimate");
  const auto r = invoke({"estimate", "--signal", "sin(5t-2)", "--k", "1", "--sigma", "5", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("steady-state sup error 3.5355") != std::string::npos);
  CHECK(r.out.find("oracle component 0: 3.53553") != std::string::npos);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "estimate.svg"));
  std::ifstream in(dir / "trajectory.csv");
  const auto traj = Trajectory::read_csv(in);
  CHECK(traj.rows() == 10001);

  const auto r20 = invoke({"estimate", "--sigma", "20", "--out", dir.string()});
  CHECK(r20.out.find("steady-state sup error 1.212") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("noisy estimate is reproducible byte for byte") {
  const auto a = scratch("noisy_a"), b = scratch("noisy_b");
  for (const auto& d : {a, b})
    CHECK(invoke({"estimate", "--noise-var", "0.01", "--seed", "42", "--sigma", "20", "--out", d.string()}).code == 0);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
  CHECK(slurp(a / "estimate.svg") == slurp(b / "estimate.svg"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("optimize writes one CSV per run and the loss plot") {
  const auto dir = scratch("optimize");
  const auto r = invoke({"optimize", "--mode", "none,ideal,estimated", "--tf", "2", "--out", dir.string()});
  CHECK(r.code == 0);
  for (auto name : {"trajectory_none.csv", "trajectory_ideal.csv", "trajectory_estimated_sigma5.csv",
                    "trajectory_estimated_sigma20.csv", "loss.svg"})
    CHECK(fs::exists(dir / name));
  const auto svg = slurp(dir / "loss.svg");
  std::size_t lines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
  CHECK(lines == 4);
  CHECK(r.out.find("ideal: final-window loss") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep prints slopes and rejects short sigma lists") {
  const auto dir = scratch("sweep");
  const auto r = invoke({"sweep", "--k", "2", "--tf", "10", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("order 1: slope -1.9") != std::string::npos);
  CHECK(r.out.find("order 2: slope -0.9") != std::string::npos);
  std::ifstream in(dir / "sweep.csv");
  const auto table = Trajectory::read_csv(in);
  CHECK(table.columns() == std::vector<std::string>{"sigma", "err_1", "err_2"});
  CHECK(table.rows() == 4);

  const auto bad = invoke({"sweep", "--sigma", "40,80", "--out", dir.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("sigma") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("exit codes for bad specifications") {
  CHECK(invoke({"estimate", "--k", "abc"}).code == 2);
  const auto sig = invoke({"estimate", "--signal", "sin(5x)"});
  CHECK(sig.code == 2);
  CHECK(sig.err.find("signal") != std::string::npos);
  CHECK(sig.err.find("sin(5x)") != std::string::npos);
  CHECK(invoke({"estimate", "--unknown-flag"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"estimate", "--config", "/nonexistent/x.cfg"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("stiff settings warn on stderr") {
  const auto dir = scratch("stiff");
  const auto r = invoke({"estimate", "--sigma", "600", "--tf", "1", "--out", dir.string()});
  CHECK(r.err.find("warning") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("flags override the config file") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "sigma = 20\nk = 2\ntf = 5\nout = " << (dir / "out").string() << "\n";
  }
  const auto r = invoke({"estimate", "--config", (dir / "run.cfg").string(), "--sigma", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("k = 2, sigma = 5") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "trajectory.csv"));
  fs::remove_all(dir);
}

TEST_CASE("verify negative control fails the transfer check") {
  const auto r = invoke({"verify", "--perturb-f-block"});
  CHECK(r.code == 1);
  const auto line = r.out.substr(r.out.find("\n6 "), 80);
  CHECK(line.find("FAIL") != std::string::npos);
  CHECK(r.out.find("Lyapunov residual") != std::string::npos);
}
