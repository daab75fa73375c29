#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <variant>

#include "ddflow/errors.hpp"
#include "ddflow/estimator.hpp"
#include "ddflow/plot.hpp"
#include "ddflow/signal_parser.hpp"
#include "ddflow/verification.hpp"

namespace ddflow::cli {

namespace {

namespace fs = std::filesystem;

std::string format(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

fs::path prepare_out_dir(const RunSpec& spec) {
  const fs::path dir(spec.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + spec.out_dir + "': " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

void write_trajectory(const fs::path& path, const Trajectory& traj) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  traj.write_csv(f);
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

void warn_stiffness(double sigma, double h, std::ostream& err) {
  if (auto w = stability_warning(sigma, h)) err << *w << '\n';
}

// Steady-state error amplitude of the i-th estimate for one sinusoidal
// component; cos^2 contributes a sinusoid of half amplitude at twice the
// frequency plus a constant the estimator differentiates exactly.
double component_oracle(const Sinusoid& s, int k, double sigma, int i) {
  const DirtyDerivativeConfig cfg{k, sigma, 1};
  if (s.kind == SinusoidKind::CosSquared)
    return steady_state_sinusoid_error(cfg, i, std::abs(s.amplitude) / 2.0, 2.0 * s.omega);
  return steady_state_sinusoid_error(cfg, i, std::abs(s.amplitude), s.omega);
}

const char* option_help(const std::string& key) {
  static const std::map<std::string, const char*> help{
      {"signal", "comma-separated components: A*sin(w*t+p), A*cos(..), A*cos2(..), poly:c0,c1,.."},
      {"cost", "quadratic-tracking or logcosh"},
      {"k", "estimator order (number of derivatives)"},
      {"sigma", "estimator gain; comma list for optimize and sweep"},
      {"mode", "comma list of none, ideal, estimated"},
      {"noise-var", "variance of the Gaussian sample noise (0 disables it)"},
      {"seed", "noise seed"},
      {"t0", "start time"},
      {"tf", "final time"},
      {"h", "step size"},
      {"out", "output directory"}};
  return help.at(key);
}

}  // namespace

int run_estimate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto signal = parse_signal(spec.signal);
  const double sigma = spec.sigmas.front();
  warn_stiffness(sigma, spec.sim.h, err);
  const DirtyDerivativeConfig cfg{spec.k, sigma, signal.dim()};
  const auto run = run_derivative_experiment(signal, spec.noise(), cfg, spec.sim);

  const auto dir = prepare_out_dir(spec);
  write_trajectory(dir / "trajectory.csv", run.trajectory);

  std::vector<PlotSeries> series;
  for (std::size_t j = 0; j < signal.dim(); ++j) {
    const auto idx = std::to_string(j);
    series.push_back({"thetadot_" + idx, run.trajectory.column("t"), run.trajectory.column("thetadot_" + idx)});
    series.push_back({"thetahat_" + idx, run.trajectory.column("t"), run.trajectory.column("thetahat_" + idx)});
  }
  write_file(dir / "estimate.svg",
             render_svg({"First derivative and its estimate, sigma = " + format("%g", sigma), "t", "value"}, series));

  out << "signal " << spec.signal << ", k = " << spec.k << ", sigma = " << format("%g", sigma) << '\n';
  for (int i = 1; i <= spec.k; ++i) {
    const auto m = steady_state_metric(run.times, run.order_errors[static_cast<std::size_t>(i - 1)]);
    out << "order " << i << ": steady-state sup error " << format("%.6g", m.steady_state_sup) << ", mean "
        << format("%.6g", m.steady_state_mean) << '\n';
    if (signal.is_pure_sinusoid()) {
      for (std::size_t j = 0; j < signal.dim(); ++j) {
        const auto& s = std::get<Sinusoid>(signal.components()[j]);
        out << "  oracle component " << j << ": " << format("%.6g", component_oracle(s, spec.k, sigma, i)) << '\n';
      }
    }
  }
  out << "wrote " << (dir / "trajectory.csv").string() << ", " << (dir / "estimate.svg").string() << '\n';
  return 0;
}

int run_optimize(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto signal = parse_signal(spec.signal);
  const auto cost = make_cost(spec.cost, signal.dim());
  const auto dir = prepare_out_dir(spec);

  struct Job {
    std::string label;
    CorrectionMode mode;
    double sigma;
  };
  std::vector<Job> jobs;
  for (auto mode : spec.modes) {
    if (mode == CorrectionMode::Estimated) {
      for (double s : spec.sigmas) jobs.push_back({"estimated_sigma" + format("%g", s), mode, s});
    } else {
      jobs.push_back({std::string(to_string(mode)), mode, 0.0});
    }
  }

  std::vector<PlotSeries> series;
  for (const auto& job : jobs) {
    InterconnectionOptions opts;
    if (job.mode == CorrectionMode::Estimated) {
      warn_stiffness(job.sigma, spec.sim.h, err);
      opts.estimator = DirtyDerivativeConfig{spec.k, job.sigma, signal.dim()};
    }
    const auto run = run_interconnection(*cost, signal, job.mode, spec.sim, spec.noise(), opts);
    write_trajectory(dir / ("trajectory_" + job.label + ".csv"), run.trajectory);
    const auto m = steady_state_metric(run.trajectory, "loss");
    out << job.label << ": final-window loss mean " << format("%.6g", m.steady_state_mean) << ", sup "
        << format("%.6g", m.steady_state_sup) << '\n';
    series.push_back({job.label, run.trajectory.column("t"), run.trajectory.column("loss")});
  }
  write_file(dir / "loss.svg", render_svg({"Loss of the online Newton flow", "t", "f(x, theta)"}, series));
  out << "wrote " << jobs.size() << " trajectories and " << (dir / "loss.svg").string() << '\n';
  return 0;
}

int run_sweep(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  const auto signal = parse_signal(spec.signal);
  for (double s : spec.sigmas) warn_stiffness(s, spec.sim.h, err);

  std::vector<std::future<std::vector<double>>> pending;
  for (double sigma : spec.sigmas) {
    pending.push_back(std::async(std::launch::async, [&, sigma] {
      const auto run =
          run_derivative_experiment(signal, spec.noise(), {spec.k, sigma, signal.dim()}, spec.sim);
      std::vector<double> errs;
      for (const auto& e : run.order_errors) errs.push_back(steady_state_metric(run.times, e).steady_state_sup);
      return errs;
    }));
  }
  std::vector<std::vector<double>> errors;
  for (auto& f : pending) errors.push_back(f.get());

  const auto dir = prepare_out_dir(spec);
  std::vector<std::string> cols{"sigma"};
  for (int i = 1; i <= spec.k; ++i) cols.push_back("err_" + std::to_string(i));
  Trajectory table(cols);
  for (std::size_t r = 0; r < spec.sigmas.size(); ++r) {
    std::vector<double> row{spec.sigmas[r]};
    row.insert(row.end(), errors[r].begin(), errors[r].end());
    table.append(row);
  }
  write_trajectory(dir / "sweep.csv", table);

  std::vector<PlotSeries> series;
  for (int i = 1; i <= spec.k; ++i) {
    const auto ui = static_cast<std::size_t>(i - 1);
    std::vector<std::pair<double, double>> points;
    PlotSeries s{"order " + std::to_string(i), {}, {}};
    for (std::size_t r = 0; r < spec.sigmas.size(); ++r) {
      points.emplace_back(spec.sigmas[r], errors[r][ui]);
      s.x.push_back(std::log10(spec.sigmas[r]));
      s.y.push_back(std::log10(errors[r][ui]));
    }
    out << "order " << i << ": slope " << format("%.4f", slope_fit(points)) << " (expected "
        << -(spec.k + 1 - i) << ")\n";
    series.push_back(std::move(s));
  }
  write_file(dir / "sweep.svg", render_svg({"Steady-state error versus sigma", "log10 sigma", "log10 error"}, series));
  out << "wrote " << (dir / "sweep.csv").string() << ", " << (dir / "sweep.svg").string() << '\n';
  return 0;
}

int run_verify(const RunSpec& spec, std::ostream& out, std::ostream& /*err*/) {
  verification::VerifyOptions opts;
  opts.perturb_f_block = spec.perturb_f_block;
  const auto results = verification::full_battery(opts);
  int failed = 0;
  char line[1024];
  std::snprintf(line, sizeof line, "%-4s %-6s %-58s %s\n", "id", "result", "check", "measured | expected");
  out << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-4s %-6s %-58s %s | %s\n", r.id.c_str(), r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.measured.c_str(), r.expected.c_str());
    out << line;
    if (!r.passed) ++failed;
  }
  out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  switch (spec.command) {
    case Command::Estimate: return run_estimate(spec, out, err);
    case Command::Optimize: return run_optimize(spec, out, err);
    case Command::Sweep: return run_sweep(spec, out, err);
    case Command::Verify: return run_verify(spec, out, err);
  }
  return 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirty-derivative estimation and time-varying optimization experiments"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  struct Sub {
    Command command;
    CLI::App* app;
    std::map<std::string, CLI::Option*> options;
  };
  RawOptions given;
  std::string config_path;
  bool perturb = false;
  std::vector<Sub> subs;
  const std::pair<Command, const char*> commands[] = {
      {Command::Estimate, "Estimate derivatives of a sampled signal"},
      {Command::Optimize, "Track a time-varying minimizer with the Newton flow"},
      {Command::Sweep, "Fit the error scaling against sigma"},
      {Command::Verify, "Run the acceptance and invariant battery"}};
  for (const auto& [command, help] : commands) {
    Sub sub{command, app.add_subcommand(std::string(command_name(command)), help), {}};
    for (const auto& key : option_keys())
      sub.options[key] = sub.app->add_option("--" + key, given[key], option_help(key));
    sub.app->add_option("--config", config_path, "flat key = value file; flags override it");
    if (command == Command::Verify)
      sub.app->add_flag("--perturb-f-block", perturb, "perturb one F-block (negative control)")->group("");
    subs.push_back(std::move(sub));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& sub : subs) {
      if (!sub.app->parsed()) continue;
      RawOptions merged = config_path.empty() ? RawOptions{} : read_config_file(config_path);
      for (const auto& [key, opt] : sub.options)
        if (opt->count() > 0) merged[key] = given[key];
      RunSpec spec = make_run_spec(sub.command, merged);
      spec.perturb_f_block = perturb;
      return run_command(spec, out, err);
    }
  } catch (const SpecError& e) {
    err << "error: invalid " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ddflow::cli
