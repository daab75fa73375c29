#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ddflow/errors.hpp"
#include "ddflow/sim.hpp"

using namespace ddflow;

namespace {

AnalyticSignal tracking_signal() {
  return AnalyticSignal({Sinusoid{1.0, 5.0, -2.0, SinusoidKind::Cos}, Sinusoid{1.0, 5.0, -2.0, SinusoidKind::Sin},
                         Sinusoid{1.0, 5.0, -2.0, SinusoidKind::CosSquared}});
}

AnalyticSignal sine() { return AnalyticSignal({Sinusoid{1.0, 5.0, -2.0, SinusoidKind::Sin}}); }

InterconnectionRun run(CorrectionMode mode, double sigma, double tf, NoiseSpec noise = {}, int k = 1) {
  SimConfig cfg;
  cfg.tf = tf;
  InterconnectionOptions opts;
  opts.estimator = DirtyDerivativeConfig{k, sigma, 3};
  return run_interconnection(QuadraticTrackingCost(3), tracking_signal(), mode, cfg, noise, opts);
}

}  // namespace

TEST_CASE("SimConfig validation") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.steps() == 10000);
  cfg.tf = 0.005;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = SimConfig{};
  cfg.h = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = SimConfig{};
  cfg.tf = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = SimConfig{};
  cfg.record_stride = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("stability warning threshold") {
  CHECK_FALSE(stability_warning(500.0, 1e-3).has_value());
  CHECK(stability_warning(501.0, 1e-3).has_value());
}

TEST_CASE("trajectory CSV format and round trip") {
  Trajectory t({"t", "x_0"});
  t.append(std::vector<double>{0.0, 0.1});
  t.append(std::vector<double>{1e-3, 1.0 / 3.0});
  std::ostringstream out;
  t.write_csv(out);
  CHECK(out.str() == "t,x_0\n0,0.10000000000000001\n0.001,0.33333333333333331\n");
  std::istringstream in(out.str());
  CHECK(Trajectory::read_csv(in) == t);
  CHECK_THROWS_AS(t.append(std::vector<double>{1.0}), DimensionMismatch);
  CHECK_THROWS_AS((void)t.column_index("y"), InvalidArgument);
  CHECK(t.column("x_0") == std::vector<double>{0.1, 1.0 / 3.0});
  std::istringstream bad("t,x\n1,2\n3\n");
  CHECK_THROWS_AS(Trajectory::read_csv(bad), InvalidArgument);
}

TEST_CASE("integrate_rk4 examples") {
  SimConfig cfg;
  cfg.tf = 1.0;
  const auto still = integrate_rk4([](double, const Vector& x) { return Vector(x.size()); }, Vector{2.5}, cfg);
  CHECK(still.at(still.rows() - 1, 1) == 2.5);
  const auto decay = integrate_rk4([](double, const Vector& x) { return -1.0 * x; }, Vector{1.0}, cfg);
  CHECK(decay.at(decay.rows() - 1, 0) == doctest::Approx(1.0));
  CHECK(std::abs(decay.at(decay.rows() - 1, 1) - std::exp(-1.0)) < 1e-9);

  cfg.h = 0.1;
  cfg.tf = 200.0;
  CHECK_THROWS_AS(integrate_rk4([](double, const Vector& x) { return -40.0 * x; }, Vector{1.0}, cfg), NonFiniteState);
}

TEST_CASE("derivative experiment matches the sinusoid oracle") {
  SimConfig cfg;
  for (double sigma : {5.0, 20.0}) {
    const auto r = run_derivative_experiment(sine(), NoiseSpec{}, {1, sigma, 1}, cfg);
    const double oracle = 25.0 / std::sqrt(25.0 + sigma * sigma);
    CHECK(steady_state_metric(r.trajectory, "est_error").steady_state_sup == doctest::Approx(oracle).epsilon(0.02));
  }
  const auto r = run_derivative_experiment(sine(), NoiseSpec{}, {1, 5.0, 1}, cfg);
  CHECK(r.trajectory.columns() == std::vector<std::string>{"t", "theta_0", "thetadot_0", "thetahat_0", "loss",
                                                           "tracking_error", "est_error"});
  CHECK(r.trajectory.rows() == 10001);
  CHECK_THROWS_AS(run_derivative_experiment(sine(), NoiseSpec{}, {1, 5.0, 2}, cfg), DimensionMismatch);
}

TEST_CASE("noisy derivative experiment stays bounded and is reproducible") {
  SimConfig cfg;
  const NoiseSpec noise{0.01, 42};
  const auto a = run_derivative_experiment(sine(), noise, {1, 20.0, 1}, cfg);
  const auto b = run_derivative_experiment(sine(), noise, {1, 20.0, 1}, cfg);
  CHECK(a.trajectory == b.trajectory);
  double sup = 0.0;
  for (double e : a.trajectory.column("est_error")) sup = std::max(sup, e);
  // the transient from the zero initial state is 5 cos(-2)
  CHECK(sup < 10.0 * std::max(25.0 / std::sqrt(425.0), 5.0 * std::abs(std::cos(2.0))));
}

TEST_CASE("record stride thins the trajectory") {
  SimConfig cfg;
  cfg.record_stride = 10;
  const auto r = run_derivative_experiment(sine(), NoiseSpec{}, {1, 5.0, 1}, cfg);
  CHECK(r.trajectory.rows() == 1001);
  CHECK(r.trajectory.at(1, 0) == doctest::Approx(0.01));
}

TEST_CASE("interconnection column schema") {
  const auto est = run(CorrectionMode::Estimated, 20.0, 0.1);
  std::vector<std::string> expect{"t"};
  for (auto p : {"theta", "thetadot", "thetahat", "x", "xstar"})
    for (int i = 0; i < 3; ++i) expect.push_back(std::string(p) + "_" + std::to_string(i));
  for (auto c : {"loss", "tracking_error", "est_error"}) expect.emplace_back(c);
  CHECK(est.trajectory.columns() == expect);
  CHECK_FALSE(run(CorrectionMode::Ideal, 20.0, 0.1).trajectory.find_column("thetahat_0").has_value());
}

TEST_CASE("ideal correction: tracking error decays exactly as e^-t") {
  const auto r = run(CorrectionMode::Ideal, 20.0, 10.0);
  const double e0 = tracking_signal().eval(0.0).norm();
  const auto t = r.trajectory.column("t");
  const auto e = r.trajectory.column("tracking_error");
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(e[i] - e0 * std::exp(-t[i])));
  CHECK(worst < 1e-8);
  for (double v : r.redesign_lhs) CHECK(std::abs(v) <= 1e-9);
  for (std::size_t i = 1; i < r.lyapunov.size(); ++i) CHECK(r.lyapunov[i] <= r.lyapunov[i - 1] + 1e-8);
}

TEST_CASE("estimated correction: larger sigma tracks better, uncorrected is worst") {
  const auto mean_loss = [](const InterconnectionRun& r) {
    return steady_state_metric(r.trajectory, "loss").steady_state_mean;
  };
  const auto ideal = run(CorrectionMode::Ideal, 20.0, 10.0);
  const auto e20 = run(CorrectionMode::Estimated, 20.0, 10.0);
  const auto e5 = run(CorrectionMode::Estimated, 5.0, 10.0);
  const auto none = run(CorrectionMode::None, 20.0, 10.0);
  CHECK(mean_loss(ideal) < mean_loss(e20));
  CHECK(mean_loss(e20) < mean_loss(e5));
  CHECK(mean_loss(e5) < mean_loss(none));
  CHECK(steady_state_metric(none.trajectory, "tracking_error").steady_state_mean >
        steady_state_metric(ideal.trajectory, "tracking_error").steady_state_mean);
  for (const auto* r : {&e20, &e5})
    for (double v : r->redesign_lhs) CHECK(v <= 1e-9);
}

TEST_CASE("estimated correction approaches the ideal one for large sigma") {
  // k = 1 leaves a gap near 0.04 at sigma = 200
  const auto ideal = run(CorrectionMode::Ideal, 200.0, 10.0);
  const auto a = ideal.trajectory.column("tracking_error");
  for (int k : {2, 3}) {
    const auto est = run(CorrectionMode::Estimated, 200.0, 10.0, {}, k);
    const auto b = est.trajectory.column("tracking_error");
    double worst = 0.0;
    for (std::size_t i = steady_state_start(a.size()); i < a.size(); ++i)
      worst = std::max(worst, std::abs(a[i] - b[i]));
    CAPTURE(k);
    CHECK(worst < 1e-2);
  }
}

TEST_CASE("interconnection is deterministic, noise included") {
  const NoiseSpec noise{0.01, 7};
  const auto a = run(CorrectionMode::Estimated, 20.0, 2.0, noise);
  const auto b = run(CorrectionMode::Estimated, 20.0, 2.0, noise);
  CHECK(a.trajectory == b.trajectory);
  const auto c = run(CorrectionMode::Estimated, 20.0, 2.0, NoiseSpec{0.01, 8});
  CHECK_FALSE(a.trajectory == c.trajectory);
}

TEST_CASE("interconnection argument checks") {
  SimConfig cfg;
  CHECK_THROWS_AS(run_interconnection(QuadraticTrackingCost(2), tracking_signal(), CorrectionMode::Ideal, cfg, {}),
                  DimensionMismatch);
  CHECK_THROWS_AS(run_interconnection(QuadraticTrackingCost(3), tracking_signal(), CorrectionMode::Estimated, cfg, {}),
                  InvalidArgument);
  InterconnectionOptions opts;
  opts.x0 = Vector{1.0};
  CHECK_THROWS_AS(
      run_interconnection(QuadraticTrackingCost(3), tracking_signal(), CorrectionMode::Ideal, cfg, {}, opts),
      DimensionMismatch);
}

TEST_CASE("steady-state metric") {
  const std::vector<double> t{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<double> v{9, 8, 7, 6, 5, 4, 3, 2, 1, 0.5};
  CHECK(steady_state_start(10) == 8);
  CHECK(steady_state_start(1) == 0);
  const auto m = steady_state_metric(t, v, 2.5);
  CHECK(m.steady_state_sup == 1.0);
  CHECK(m.steady_state_mean == 0.75);
  REQUIRE(m.transient_time.has_value());
  CHECK(*m.transient_time == 7.0);
  CHECK_FALSE(steady_state_metric(t, v, 0.1).transient_time.has_value());
  CHECK_THROWS_AS(steady_state_metric(std::vector<double>{}, std::vector<double>{}), InsufficientData);
}

TEST_CASE("slope_fit") {
  std::vector<std::pair<double, double>> pts;
  for (double s : {40.0, 80.0, 160.0, 320.0}) pts.emplace_back(s, 3.0 / (s * s));
  CHECK(std::abs(slope_fit(pts) + 2.0) < 1e-12);

  pts.clear();
  for (double s : {40.0, 80.0, 160.0, 320.0}) pts.emplace_back(s, 25.0 / std::sqrt(25.0 + s * s));
  const double slope = slope_fit(pts);
  CHECK(slope >= -1.05);
  CHECK(slope <= -0.85);

  CHECK_THROWS_AS(slope_fit(std::vector<std::pair<double, double>>{{1.0, 1.0}}), InsufficientData);
  CHECK_THROWS_AS(slope_fit(std::vector<std::pair<double, double>>{{1, 1}, {2, 0}, {3, 1}}), InsufficientData);
}
