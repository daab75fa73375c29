#include "ddflow/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ddflow/errors.hpp"

namespace ddflow {

// ---------------------------------------------------------------- config

void SimConfig::validate() const {
  if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0)) throw InvalidArgument("SimConfig: need finite tf > t0");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("SimConfig: step h must be > 0");
  if (record_stride == 0) throw InvalidArgument("SimConfig: record stride must be >= 1");
  if ((tf - t0) / h < 10.0) throw InvalidArgument("SimConfig: (tf - t0) / h must be at least 10");
}

std::size_t SimConfig::steps() const {
  return static_cast<std::size_t>(std::llround((tf - t0) / h));
}

std::optional<std::string> stability_warning(double sigma, double h) {
  if (sigma * h <= kStiffnessWarningThreshold) return std::nullopt;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "warning: sigma*h = %.3g exceeds %.2g; the coupled flow may be stiff for this step size", sigma * h,
                kStiffnessWarningThreshold);
  return std::string(buf);
}

// ---------------------------------------------------------------- trajectory

Trajectory::Trajectory(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidArgument("Trajectory: need at least one column");
}

void Trajectory::append(std::span<const double> row) {
  if (row.size() != columns_.size())
    throw DimensionMismatch("Trajectory::append: row has " + std::to_string(row.size()) + " values, expected " +
                            std::to_string(columns_.size()));
  values_.insert(values_.end(), row.begin(), row.end());
}

std::optional<std::size_t> Trajectory::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  return std::nullopt;
}

std::size_t Trajectory::column_index(std::string_view name) const {
  if (auto idx = find_column(name)) return *idx;
  throw InvalidArgument("Trajectory: no column named '" + std::string(name) + "'");
}

std::vector<double> Trajectory::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = at(r, c);
  return out;
}

void Trajectory::write_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out << ',';
    out << columns_[c];
  }
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", at(r, c));
      out << buf;
    }
    out << '\n';
  }
}

Trajectory Trajectory::read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
  };
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("read_csv: missing header");
  Trajectory traj(split(line));
  std::vector<double> row;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != traj.column_count())
      throw InvalidArgument("read_csv: line " + std::to_string(line_no) + " has the wrong number of fields");
    row.clear();
    for (const auto& f : fields) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0')
        throw InvalidArgument("read_csv: line " + std::to_string(line_no) + ": bad number '" + f + "'");
      row.push_back(v);
    }
    traj.append(row);
  }
  return traj;
}

std::vector<std::string> indexed_columns(std::string_view prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::string(prefix) + "_" + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------- RK4

Vector rk4_step(const VectorField& rhs, double t, const Vector& x, double h) {
  const Vector k1 = rhs(t, x);
  const Vector k2 = rhs(t + 0.5 * h, x + (0.5 * h) * k1);
  const Vector k3 = rhs(t + 0.5 * h, x + (0.5 * h) * k2);
  const Vector k4 = rhs(t + h, x + h * k3);
  Vector next = x;
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return next;
}

namespace {

void require_finite_state(const Vector& x, double t) {
  if (!x.all_finite()) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "integration produced a non-finite state at t = %.17g", t);
    throw NonFiniteState(buf, t);
  }
}

void push(std::vector<double>& row, const Vector& v) { row.insert(row.end(), v.begin(), v.end()); }

}  // namespace

Trajectory integrate_rk4(const VectorField& rhs, const Vector& x0, const SimConfig& cfg) {
  cfg.validate();
  std::vector<std::string> cols{"t"};
  for (auto& c : indexed_columns("x", x0.size())) cols.push_back(std::move(c));
  Trajectory traj(std::move(cols));

  const std::size_t n = cfg.steps();
  Vector x = x0;
  std::vector<double> row;
  for (std::size_t step = 0;; ++step) {
    const double t = cfg.time_at(step);
    if (step % cfg.record_stride == 0) {
      row.assign(1, t);
      push(row, x);
      traj.append(row);
    }
    if (step == n) break;
    x = rk4_step(rhs, t, x, cfg.h);
    require_finite_state(x, cfg.time_at(step + 1));
  }
  return traj;
}

// ---------------------------------------------------------------- experiments

DerivativeRun run_derivative_experiment(const AnalyticSignal& signal, const NoiseSpec& noise,
                                        const DirtyDerivativeConfig& est_cfg, const SimConfig& cfg, int hold_order) {
  cfg.validate();
  est_cfg.validate();
  const std::size_t m = signal.dim();
  if (est_cfg.signal_dim != m) throw DimensionMismatch("run_derivative_experiment: signal and estimator dimensions differ");

  std::vector<std::string> cols{"t"};
  for (auto prefix : {"theta", "thetadot", "thetahat"})
    for (auto& c : indexed_columns(prefix, m)) cols.push_back(std::move(c));
  for (auto name : {"loss", "tracking_error", "est_error"}) cols.emplace_back(name);

  DerivativeRun run{Trajectory(std::move(cols)), std::vector<std::vector<double>>(static_cast<std::size_t>(est_cfg.order)), {}};
  DirtyDerivativeEstimator estimator(est_cfg, cfg.h, hold_order);
  NoiseSource source(noise.seed);

  const std::size_t n = cfg.steps();
  std::vector<double> row;
  for (std::size_t step = 0; step <= n; ++step) {
    const double t = cfg.time_at(step);
    const Vector sample = sample_noisy(signal, noise, t, source);
    const std::vector<Vector> estimates = estimator.step(sample);
    for (const auto& e : estimates) require_finite_state(e, t);
    if (step % cfg.record_stride != 0) continue;

    const Vector theta = signal.eval(t, 0);
    const Vector theta_dot = signal.eval(t, 1);
    const double est_error = (estimates[0] - theta_dot).norm();
    row.assign(1, t);
    push(row, theta);
    push(row, theta_dot);
    push(row, estimates[0]);
    row.push_back(0.0);
    row.push_back(0.0);
    row.push_back(est_error);
    run.trajectory.append(row);
    run.times.push_back(t);
    for (int i = 0; i < est_cfg.order; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      run.order_errors[ui].push_back((estimates[ui] - signal.eval(t, i + 1)).norm());
    }
  }
  return run;
}

InterconnectionRun run_interconnection(const CostModel& cost, const AnalyticSignal& signal, CorrectionMode mode,
                                       const SimConfig& cfg, const NoiseSpec& noise,
                                       const InterconnectionOptions& options) {
  cfg.validate();
  const std::size_t n_dim = cost.decision_dim();
  const std::size_t p_dim = cost.param_dim();
  if (signal.dim() != p_dim) throw DimensionMismatch("run_interconnection: signal dimension must equal cost parameter dimension");
  if (!cost.minimizer(signal.eval(cfg.t0)))
    throw InvalidArgument("run_interconnection: cost '" + cost.name() + "' has no minimizer oracle");
  const bool estimated = mode == CorrectionMode::Estimated;
  if (estimated && !options.estimator) throw InvalidArgument("run_interconnection: estimated mode needs an estimator config");

  std::optional<DirtyDerivativeEstimator> estimator;
  if (estimated) {
    DirtyDerivativeConfig est_cfg = *options.estimator;
    est_cfg.signal_dim = p_dim;
    estimator.emplace(est_cfg, cfg.h, options.hold_order);
  }

  std::vector<std::string> cols{"t"};
  std::vector<const char*> prefixes{"theta", "thetadot"};
  if (estimated) prefixes.push_back("thetahat");
  for (auto prefix : prefixes)
    for (auto& c : indexed_columns(prefix, p_dim)) cols.push_back(std::move(c));
  for (auto prefix : {"x", "xstar"})
    for (auto& c : indexed_columns(prefix, n_dim)) cols.push_back(std::move(c));
  for (auto name : {"loss", "tracking_error", "est_error"}) cols.emplace_back(name);

  InterconnectionRun run{Trajectory(std::move(cols)), {}, {}};
  NoiseSource source(noise.seed);

  Vector x = options.x0 ? *options.x0 : Vector(n_dim);
  if (x.size() != n_dim) throw DimensionMismatch("run_interconnection: initial state has wrong dimension");

  const std::size_t steps = cfg.steps();
  std::vector<double> row;
  Vector theta_hat(p_dim);
  for (std::size_t step = 0;; ++step) {
    const double t = cfg.time_at(step);
    const Vector theta = signal.eval(t, 0);
    const Vector theta_dot = signal.eval(t, 1);
    if (estimated) {
      theta_hat = estimator->step(sample_noisy(signal, noise, t, source))[0];
      require_finite_state(theta_hat, t);
    }

    if (step % cfg.record_stride == 0) {
      Vector u(n_dim);
      if (mode == CorrectionMode::Ideal) u = ideal_correction(cost, x, theta, theta_dot);
      if (estimated) u = estimated_correction(cost, x, theta, theta_hat);
      const LyapunovGradients lg = lyapunov_gradients(cost, x, theta);
      const RedesignCheck check = check_redesign_condition(lg.grad_x, lg.grad_theta, u, estimated ? theta_hat : theta_dot);

      const Vector x_star = *cost.minimizer(theta);
      row.assign(1, t);
      push(row, theta);
      push(row, theta_dot);
      if (estimated) push(row, theta_hat);
      push(row, x);
      push(row, x_star);
      row.push_back(cost.value(x, theta));
      row.push_back((x - x_star).norm());
      row.push_back(estimated ? (theta_hat - theta_dot).norm() : 0.0);
      run.trajectory.append(row);
      run.redesign_lhs.push_back(check.lhs);
      run.lyapunov.push_back(lg.value);
    }
    if (step == steps) break;

    const VectorField rhs = [&](double ts, const Vector& xs) {
      const Vector th = signal.eval(ts, 0);
      Vector dx = newton_rhs(cost, xs, th);
      if (mode == CorrectionMode::Ideal) dx += ideal_correction(cost, xs, th, signal.eval(ts, 1));
      if (estimated) dx += estimated_correction(cost, xs, th, theta_hat);
      return dx;
    };
    x = rk4_step(rhs, t, x, cfg.h);
    require_finite_state(x, cfg.time_at(step + 1));
  }
  return run;
}

// ---------------------------------------------------------------- metrics

std::size_t steady_state_start(std::size_t rows) {
  const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(kSteadyStateFraction * static_cast<double>(rows))));
  return rows > count ? rows - count : 0;
}

Metric steady_state_metric(std::span<const double> times, std::span<const double> values,
                           std::optional<double> threshold) {
  if (values.empty()) throw InsufficientData("steady_state_metric: no samples");
  if (times.size() != values.size()) throw DimensionMismatch("steady_state_metric: times and values differ in length");
  const std::size_t start = steady_state_start(values.size());
  Metric m;
  double sum = 0.0;
  for (std::size_t i = start; i < values.size(); ++i) {
    m.steady_state_sup = std::max(m.steady_state_sup, std::abs(values[i]));
    sum += values[i];
  }
  m.steady_state_mean = sum / static_cast<double>(values.size() - start);
  if (threshold) {
    std::size_t first = values.size();
    while (first > 0 && std::abs(values[first - 1]) < *threshold) --first;
    if (first < values.size()) m.transient_time = times[first];
  }
  return m;
}

Metric steady_state_metric(const Trajectory& traj, std::string_view column, std::optional<double> threshold) {
  const std::vector<double> t = traj.column("t");
  const std::vector<double> v = traj.column(column);
  return steady_state_metric(t, v, threshold);
}

double slope_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InsufficientData("slope_fit: need at least three (sigma, error) points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [sigma, err] : points) {
    if (!(sigma > 0.0) || !(err > 0.0)) throw InsufficientData("slope_fit: sigma and error values must be positive");
    sx += std::log(sigma);
    sy += std::log(err);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [sigma, err] : points) {
    const double dx = std::log(sigma) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (sxx == 0.0) throw InsufficientData("slope_fit: sigma values must not all coincide");
  return sxy / sxx;
}

}  // namespace ddflow
