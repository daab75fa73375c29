#include "ddflow/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "ddflow/errors.hpp"
#include "ddflow/estimator.hpp"
#include "ddflow/flows.hpp"
#include "ddflow/sim.hpp"
#include "ddflow/signals.hpp"

namespace ddflow::verification {

namespace {

std::string format(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs `body`, fills in timing and folds the runtime budget into the verdict.
// Library exceptions turn into a failed check carrying the message.
CheckResult timed(std::string id, std::string name, double budget, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.budget_seconds = budget;
  Stopwatch sw;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.measured = std::string("exception: ") + e.what();
  }
  r.seconds = sw.seconds();
  if (budget > 0.0 && r.seconds > budget) {
    r.passed = false;
    r.measured += format(" (runtime %.3g s over budget)", r.seconds);
  }
  return r;
}

// theta(t) of the online-optimization experiments.
AnalyticSignal tracking_signal() {
  return AnalyticSignal({Sinusoid{1.0, 5.0, -2.0, SinusoidKind::Cos}, Sinusoid{1.0, 5.0, -2.0, SinusoidKind::Sin},
                         Sinusoid{1.0, 5.0, -2.0, SinusoidKind::CosSquared}});
}

AnalyticSignal sine_signal() { return AnalyticSignal({Sinusoid{1.0, 5.0, -2.0, SinusoidKind::Sin}}); }

double final_window_mean(const Trajectory& traj, std::string_view column) {
  return steady_state_metric(traj, column).steady_state_mean;
}

double final_window_sup(const Trajectory& traj, std::string_view column) {
  return steady_state_metric(traj, column).steady_state_sup;
}

bool trajectory_finite(const Trajectory& traj) {
  for (std::size_t r = 0; r < traj.rows(); ++r)
    for (std::size_t c = 0; c < traj.column_count(); ++c)
      if (!std::isfinite(traj.at(r, c))) return false;
  return true;
}

constexpr double kStep = 1e-3;

// --- acceptance ------------------------------------------------------------

CheckResult check_sinusoid_error() {
  return timed("1", "steady-state error of w1_hat for sin(5t-2)", 2.0, [](CheckResult& r) {
    const double omega = 5.0;
    bool ok = true;
    std::string measured, expected;
    for (double sigma : {5.0, 20.0}) {
      Stopwatch sw;
      SimConfig cfg;
      cfg.tf = 10.0;
      cfg.h = kStep;
      const auto run = run_derivative_experiment(sine_signal(), NoiseSpec{}, {1, sigma, 1}, cfg);
      const double err = final_window_sup(run.trajectory, "est_error");
      const double oracle = omega * omega / std::sqrt(omega * omega + sigma * sigma);
      const double secs = sw.seconds();
      ok = ok && std::abs(err - oracle) <= 0.02 * oracle && secs < 1.0;
      measured += format("%ssigma=%g: %.6g (%.2f s)", measured.empty() ? "" : ", ", sigma, err, secs);
      expected += format("%s%.6g +-2%%, <1 s", expected.empty() ? "" : ", ", oracle);
    }
    r.passed = ok;
    r.measured = measured;
    r.expected = expected;
  });
}

CheckResult check_polynomial_exactness() {
  return timed("2", "k=2 exact derivatives of 1+2t+0.5t^2 at t=5", 1.0, [](CheckResult& r) {
    DirtyDerivativeEstimator est({2, 10.0, 1}, kStep);
    const auto w = [](double t) { return 1.0 + 2.0 * t + 0.5 * t * t; };
    const auto steps = static_cast<std::size_t>(std::llround(5.0 / kStep));
    std::vector<Vector> out;
    for (std::size_t n = 0; n <= steps; ++n) out = est.step(Vector{w(static_cast<double>(n) * kStep)});
    const double e1 = std::abs(out[0][0] - 7.0);
    const double e2 = std::abs(out[1][0] - 1.0);
    r.passed = e1 <= 1e-6 && e2 <= 1e-6;
    r.measured = format("w1_hat=%.12g, w2_hat=%.12g (errors %.3g, %.3g)", out[0][0], out[1][0], e1, e2);
    r.expected = "(7, 1) within 1e-6";
  });
}

CheckResult check_sigma_scaling() {
  return timed("3", "log-log slope of error versus sigma", 10.0, [](CheckResult& r) {
    const std::vector<double> sigmas{40.0, 80.0, 160.0, 320.0};
    struct Case {
      int k, i;
    };
    const Case cases[] = {{1, 1}, {2, 1}, {2, 2}};
    std::vector<std::vector<std::pair<double, double>>> points(3);
    for (int k : {1, 2}) {
      for (double sigma : sigmas) {
        SimConfig cfg;
        cfg.tf = 30.0;
        cfg.h = kStep;
        const auto run = run_derivative_experiment(sine_signal(), NoiseSpec{}, {k, sigma, 1}, cfg);
        for (std::size_t c = 0; c < 3; ++c) {
          if (cases[c].k != k) continue;
          const auto& errs = run.order_errors[static_cast<std::size_t>(cases[c].i - 1)];
          points[c].emplace_back(sigma, steady_state_metric(run.times, errs).steady_state_sup);
        }
      }
    }
    bool ok = true;
    for (std::size_t c = 0; c < 3; ++c) {
      const double slope = slope_fit(points[c]);
      const double target = -static_cast<double>(cases[c].k + 1 - cases[c].i);
      ok = ok && std::abs(slope - target) <= 0.25;
      r.measured += format("%s(k=%d,i=%d) %.4f", c ? ", " : "", cases[c].k, cases[c].i, slope);
      r.expected += format("%s%.0f +-0.25", c ? ", " : "", target);
    }
    r.passed = ok;
  });
}

CheckResult check_companion_bound() {
  return timed("4", "companion output bound never violated", 5.0, [](CheckResult& r) {
    std::mt19937_64 engine(2024);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double tf = 20.0;
    const auto steps = static_cast<std::size_t>(std::llround(tf / kStep));
    std::size_t violations = 0, samples = 0;
    double worst_ratio = 0.0;
    for (int n = 1; n <= 3; ++n) {
      for (double sigma : {2.0, 10.0}) {
        const auto bound = companion_output_bound(n, sigma);
        const auto block = build_f_block(n, sigma);
        for (int trial = 0; trial < 10; ++trial) {
          Vector x0(static_cast<std::size_t>(n));
          for (auto& v : x0) v = 3.0 * normal(engine);
          SampledLtiSystem sys(block, kStep, 4, 1);
          sys.set_state(0, x0);
          const double r0 = x0.norm();
          for (std::size_t s = 0; s <= steps; ++s) {
            const double t = static_cast<double>(s) * kStep;
            const Matrix y = sys.step(Vector{std::sin(t)});
            const double limit = bound(r0, t, 1.0);
            const double mag = std::abs(y(0, 0));
            worst_ratio = std::max(worst_ratio, mag / limit);
            if (mag > limit) ++violations;
            ++samples;
          }
        }
      }
    }
    r.passed = violations == 0;
    r.measured = format("%zu violations in %zu samples (max |y|/bound %.3f)", violations, samples, worst_ratio);
    r.expected = "0 violations";
  });
}

CheckResult check_lyapunov_residuals() {
  return timed("5", "Lyapunov residual ||A^T P + P A + I||_F", 0.0, [](CheckResult& r) {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
      const Matrix a = build_f_block(n, 1.0).a;
      const auto un = static_cast<std::size_t>(n);
      const Matrix p = lyapunov_solve(a, Matrix::identity(un));
      const double res = (a.transpose() * p + p * a + Matrix::identity(un)).frobenius_norm();
      worst = std::max(worst, res);
      r.measured += format("%sn=%d %.2g", n > 1 ? ", " : "", n, res);
    }
    r.passed = worst < 1e-10;
    r.expected = "< 1e-10 for n=1..6";
  });
}

LtiRealization cascade_for_check(int k, double sigma, bool perturb) {
  std::vector<LtiRealization> branches, f_blocks;
  for (int i = 1; i <= k; ++i) branches.push_back(build_branch_block(i, sigma));
  for (int i = 1; i < k; ++i) {
    auto f = build_f_block(i, sigma);
    if (perturb) f.a(f.a.rows() - 1, 0) *= 1.0 + 1e-6;
    f_blocks.push_back(std::move(f));
  }
  return compose_cascade(branches, f_blocks);
}

CheckResult check_transfer_equivalence(const VerifyOptions& options) {
  return timed("6", "composed realization versus closed-form transfer", 0.0, [&](CheckResult& r) {
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
      for (double sigma : {1.0, 5.0, 20.0}) {
        const auto real = cascade_for_check(k, sigma, options.perturb_f_block);
        for (int j = 0; j < 20; ++j) {
          const double omega = std::pow(10.0, -2.0 + 5.0 * j / 19.0);
          const ComplexMatrix h = frequency_response(real, omega);
          for (int i = 1; i <= k; ++i) {
            const Complex ref = cascade_transfer(k, sigma, i, Complex(0.0, omega));
            worst = std::max(worst, static_cast<double>(std::abs(h(static_cast<std::size_t>(i - 1), 0) - ref) /
                                                        std::abs(ref)));
          }
        }
      }
    }
    r.passed = worst < 1e-9;
    r.measured = format("max relative error %.3g", worst);
    r.expected = "< 1e-9";
  });
}

struct OptimizationRuns {
  InterconnectionRun ideal;
  InterconnectionRun estimated20;
  InterconnectionRun estimated5;
  InterconnectionRun none;
};

InterconnectionRun run_mode(CorrectionMode mode, double sigma, double tf, const NoiseSpec& noise = {}) {
  const auto signal = tracking_signal();
  QuadraticTrackingCost cost(signal.dim());
  SimConfig cfg;
  cfg.tf = tf;
  cfg.h = kStep;
  InterconnectionOptions opts;
  if (mode == CorrectionMode::Estimated) opts.estimator = DirtyDerivativeConfig{1, sigma, signal.dim()};
  return run_interconnection(cost, signal, mode, cfg, noise, opts);
}

CheckResult check_ideal_flow(const InterconnectionRun& run, double seconds) {
  CheckResult r;
  r.id = "7";
  r.name = "ideal-correction tracking error decays as e^-t";
  r.budget_seconds = 1.0;
  r.seconds = seconds;
  const auto& traj = run.trajectory;
  const auto signal = tracking_signal();
  const double r0 = (Vector(signal.dim()) - signal.eval(0.0)).norm();
  const auto t_col = traj.column_index("t");
  const auto e_col = traj.column_index("tracking_error");
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.rows(); ++i)
    worst = std::max(worst, std::abs(traj.at(i, e_col) - r0 * std::exp(-traj.at(i, t_col))));
  const double loss = final_window_sup(traj, "loss");
  r.passed = worst <= 1e-6 && loss < 1e-10 && seconds < 1.0;
  r.measured = format("sup deviation %.3g, final-window loss %.3g", worst, loss);
  r.expected = "<= 1e-6, < 1e-10";
  return r;
}

CheckResult check_ordering(const OptimizationRuns& runs, double seconds) {
  CheckResult r;
  r.id = "8";
  r.name = "final-window loss ordering Ideal < sigma20 < sigma5 < None";
  r.budget_seconds = 5.0;
  r.seconds = seconds;
  const double li = final_window_mean(runs.ideal.trajectory, "loss");
  const double l20 = final_window_mean(runs.estimated20.trajectory, "loss");
  const double l5 = final_window_mean(runs.estimated5.trajectory, "loss");
  const double ln = final_window_mean(runs.none.trajectory, "loss");
  const double f1 = l20 / li, f2 = l5 / l20, f3 = ln / l5;
  r.passed = f1 >= 2.0 && f2 >= 2.0 && f3 >= 2.0 && seconds < 5.0;
  r.measured = format("%.3g < %.3g < %.3g < %.3g (factors %.3g, %.3g, %.3g)", li, l20, l5, ln, f1, f2, f3);
  r.expected = "each factor >= 2";
  return r;
}

CheckResult check_redesign(const OptimizationRuns& runs, const InterconnectionRun& ideal_long) {
  CheckResult r;
  r.id = "9";
  r.name = "redesign condition lhs along corrected runs";
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto* run : {&ideal_long, &runs.ideal, &runs.estimated20, &runs.estimated5})
    for (double v : run->redesign_lhs) worst = std::max(worst, v);
  r.passed = worst <= kRedesignTolerance;
  r.measured = format("max lhs %.3g", worst);
  r.expected = "<= 1e-9";
  return r;
}

CheckResult check_noise_robustness() {
  return timed("10", "bounded degradation under noise var 0.01", 5.0, [](CheckResult& r) {
    const NoiseSpec noisy{0.01, 42};
    SimConfig cfg;
    cfg.h = kStep;
    const auto clean_est = run_derivative_experiment(sine_signal(), NoiseSpec{}, {1, 20.0, 1}, cfg);
    const auto noisy_est = run_derivative_experiment(sine_signal(), noisy, {1, 20.0, 1}, cfg);
    const double e_clean = final_window_sup(clean_est.trajectory, "est_error");
    const double e_noisy = final_window_sup(noisy_est.trajectory, "est_error");

    const auto clean_opt = run_mode(CorrectionMode::Estimated, 20.0, 10.0);
    const auto noisy_opt = run_mode(CorrectionMode::Estimated, 20.0, 10.0, noisy);
    const double l_clean = final_window_mean(clean_opt.trajectory, "loss");
    const double l_noisy = final_window_mean(noisy_opt.trajectory, "loss");

    const bool finite = trajectory_finite(noisy_est.trajectory) && trajectory_finite(noisy_opt.trajectory);
    r.passed = e_noisy < 10.0 * e_clean && l_noisy < 10.0 * l_clean && finite;
    r.measured = format("derivative sup %.4g vs %.4g, loss %.4g vs %.4g, finite=%s", e_noisy, e_clean, l_noisy,
                        l_clean, finite ? "yes" : "no");
    r.expected = "noisy < 10x noise-free, all finite";
  });
}

// --- properties ------------------------------------------------------------

Matrix random_matrix(std::mt19937_64& engine, std::size_t n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = normal(engine);
  return m;
}

CheckResult property_expm_inverse() {
  return timed("P1", "expm(A) expm(-A) = I", 0.0, [](CheckResult& r) {
    std::mt19937_64 engine(7);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix a = random_matrix(engine, 5, 1.0);
      const double err = (expm(a) * expm(-1.0 * a) - Matrix::identity(5)).max_abs();
      worst = std::max(worst, err);
    }
    r.passed = worst < 1e-10;
    r.measured = format("%.3g", worst);
    r.expected = "< 1e-10";
  });
}

CheckResult property_solve_roundtrip() {
  return timed("P2", "solve_linear round trip", 0.0, [](CheckResult& r) {
    std::mt19937_64 engine(11);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix a = random_matrix(engine, 6, 1.0) + 6.0 * Matrix::identity(6);
      Vector x(6);
      for (auto& v : x) v = normal(engine);
      worst = std::max(worst, (solve_linear(a, a * x) - x).max_abs());
    }
    r.passed = worst < 1e-12;
    r.measured = format("%.3g", worst);
    r.expected = "< 1e-12";
  });
}

CheckResult property_zoh_exact() {
  return timed("P3", "zero-order hold exact for constant input", 0.0, [](CheckResult& r) {
    const double a = 3.0, b = 2.0, u = 0.7, h = 0.05;
    LtiRealization sys{Matrix{{-a}}, Matrix{{b}}, Matrix{{1.0}}, Matrix{{0.0}}};
    SampledLtiSystem s(sys, h, 0, 1);
    s.set_state(0, Vector{1.0});
    double x = 1.0, worst = 0.0;
    s.step(Vector{u});
    for (int n = 0; n < 40; ++n) {
      const Matrix y = s.step(Vector{u});
      x = std::exp(-a * h) * x + (1.0 - std::exp(-a * h)) * b / a * u;
      worst = std::max(worst, std::abs(y(0, 0) - x));
    }
    r.passed = worst < 1e-13;
    r.measured = format("%.3g", worst);
    r.expected = "< 1e-13";
  });
}

CheckResult property_companion_spectrum() {
  return timed("P4", "companion characteristic polynomial is (s+sigma)^n", 0.0, [](CheckResult& r) {
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
      for (double sigma : {0.5, 2.0, 7.0}) {
        const auto c = characteristic_polynomial(build_f_block(n, sigma).a);
        double binom = 1.0;
        for (int j = 0; j <= n; ++j) {
          // coefficient of s^j in (s + sigma)^n is C(n, j) sigma^(n-j)
          const double expect = binom * std::pow(sigma, n - j);
          worst = std::max(worst, std::abs(c[static_cast<std::size_t>(j)] - expect) / expect);
          binom = binom * (n - j) / (j + 1);
        }
      }
    r.passed = worst < 1e-10;
    r.measured = format("max relative coefficient error %.3g", worst);
    r.expected = "< 1e-10";
  });
}

CheckResult property_cubic_exact() {
  return timed("P5", "k=3 estimator exact on a cubic", 0.0, [](CheckResult& r) {
    const double h = 1e-3;
    DirtyDerivativeEstimator est({3, 8.0, 1}, h);
    std::vector<Vector> out;
    double t = 0.0;
    for (int n = 0; n <= 6000; ++n) {
      t = n * h;
      out = est.step(Vector{0.5 - t + 0.25 * t * t + t * t * t / 6.0});
    }
    const double d1 = -1.0 + 0.5 * t + t * t / 2.0, d2 = 0.5 + t, d3 = 1.0;
    const double worst = std::max({std::abs(out[0][0] - d1), std::abs(out[1][0] - d2), std::abs(out[2][0] - d3)});
    r.passed = worst < 1e-6;
    r.measured = format("%.3g", worst);
    r.expected = "< 1e-6";
  });
}

CheckResult property_logcosh_redesign() {
  return timed("P6", "redesign condition with a state-dependent Hessian", 0.0, [](CheckResult& r) {
    const auto signal = tracking_signal();
    LogCoshTrackingCost cost(signal.dim());
    SimConfig cfg;
    cfg.tf = 3.0;
    double worst = -std::numeric_limits<double>::infinity();
    for (auto mode : {CorrectionMode::Ideal, CorrectionMode::Estimated}) {
      InterconnectionOptions opts;
      opts.estimator = DirtyDerivativeConfig{1, 20.0, signal.dim()};
      opts.x0 = Vector{2.0, -1.0, 0.5};
      const auto run = run_interconnection(cost, signal, mode, cfg, NoiseSpec{}, opts);
      for (double v : run.redesign_lhs) worst = std::max(worst, v);
    }
    r.passed = worst <= kRedesignTolerance;
    r.measured = format("max lhs %.3g", worst);
    r.expected = "<= 1e-9";
  });
}

CheckResult property_energy_decrease() {
  return timed("P7", "V non-increasing under ideal correction", 0.0, [](CheckResult& r) {
    const auto signal = tracking_signal();
    double worst = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
      const auto cost = make_cost(c == 0 ? "quadratic-tracking" : "logcosh", signal.dim());
      SimConfig cfg;
      cfg.tf = 5.0;
      InterconnectionOptions opts;
      opts.x0 = Vector{2.0, -1.0, 0.5};
      const auto run = run_interconnection(*cost, signal, CorrectionMode::Ideal, cfg, NoiseSpec{}, opts);
      for (std::size_t i = 1; i < run.lyapunov.size(); ++i)
        worst = std::max(worst, run.lyapunov[i] - run.lyapunov[i - 1]);
    }
    r.passed = worst <= 1e-8;
    r.measured = format("max per-step increase %.3g", worst);
    r.expected = "<= 1e-8";
  });
}

CheckResult property_minimizer() {
  return timed("P8", "gradient vanishes at the declared minimizer", 0.0, [](CheckResult& r) {
    const Vector theta{0.3, -1.2, 2.5};
    double worst = 0.0;
    for (const char* name : {"quadratic-tracking", "logcosh"}) {
      const auto cost = make_cost(name, 3);
      worst = std::max(worst, cost->gradient(*cost->minimizer(theta), theta).max_abs());
    }
    r.passed = worst < 1e-14;
    r.measured = format("%.3g", worst);
    r.expected = "< 1e-14";
  });
}

CheckResult property_csv_roundtrip() {
  return timed("P9", "trajectory CSV round trip", 0.0, [](CheckResult& r) {
    SimConfig cfg;
    cfg.tf = 1.0;
    InterconnectionOptions opts;
    opts.estimator = DirtyDerivativeConfig{2, 5.0, 3};
    const auto run = run_interconnection(QuadraticTrackingCost(3), tracking_signal(), CorrectionMode::Estimated, cfg,
                                         NoiseSpec{0.01, 3}, opts);
    std::stringstream buf;
    run.trajectory.write_csv(buf);
    const auto back = Trajectory::read_csv(buf);
    r.passed = back == run.trajectory;
    r.measured = r.passed ? "identical" : "differs";
    r.expected = "identical";
  });
}

CheckResult property_signal_derivatives() {
  return timed("P10", "signal derivatives match central differences", 0.0, [](CheckResult& r) {
    const AnalyticSignal s({Sinusoid{1.5, 3.0, 0.4, SinusoidKind::CosSquared}, Sinusoid{-2.0, 1.5, 1.0, SinusoidKind::Cos},
                            Polynomial{{1.0, -2.0, 0.5, 0.25}}});
    const double d = 1e-5;
    double worst = 0.0;
    for (double t : {0.0, 0.7, 2.3, 5.1})
      for (int order = 0; order < 4; ++order) {
        const Vector fd = (s.eval(t + d, order) - s.eval(t - d, order)) * (0.5 / d);
        worst = std::max(worst, (fd - s.eval(t, order + 1)).max_abs() / std::max(1.0, s.eval(t, order + 1).max_abs()));
      }
    r.passed = worst < 1e-6;
    r.measured = format("%.3g", worst);
    r.expected = "< 1e-6";
  });
}

}  // namespace

std::vector<CheckResult> acceptance_checks(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_sinusoid_error());
  results.push_back(check_polynomial_exactness());
  results.push_back(check_sigma_scaling());
  results.push_back(check_companion_bound());
  results.push_back(check_lyapunov_residuals());
  results.push_back(check_transfer_equivalence(options));

  Stopwatch sw7;
  const auto ideal_long = run_mode(CorrectionMode::Ideal, 0.0, 20.0);
  results.push_back(check_ideal_flow(ideal_long, sw7.seconds()));

  Stopwatch sw8;
  OptimizationRuns runs{run_mode(CorrectionMode::Ideal, 0.0, 10.0), run_mode(CorrectionMode::Estimated, 20.0, 10.0),
                        run_mode(CorrectionMode::Estimated, 5.0, 10.0), run_mode(CorrectionMode::None, 0.0, 10.0)};
  results.push_back(check_ordering(runs, sw8.seconds()));
  results.push_back(check_redesign(runs, ideal_long));
  results.push_back(check_noise_robustness());
  return results;
}

std::vector<CheckResult> property_checks() {
  return {property_expm_inverse(),     property_solve_roundtrip(),  property_zoh_exact(),
          property_companion_spectrum(), property_cubic_exact(),    property_logcosh_redesign(),
          property_energy_decrease(),  property_minimizer(),        property_csv_roundtrip(),
          property_signal_derivatives()};
}

std::vector<CheckResult> full_battery(const VerifyOptions& options) {
  auto results = acceptance_checks(options);
  auto props = property_checks();
  results.insert(results.end(), props.begin(), props.end());
  return results;
}

}  // namespace ddflow::verification
