#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddflow/estimator.hpp"
#include "ddflow/flows.hpp"
#include "ddflow/numerics.hpp"
#include "ddflow/signals.hpp"

namespace ddflow {

struct SimConfig {
  double t0 = 0.0;
  double tf = 10.0;
  double h = 1e-3;
  std::uint64_t seed = 0;
  std::size_t record_stride = 1;

  // Throws InvalidArgument unless tf > t0, h > 0, stride >= 1 and the run
  // spans at least ten steps.
  void validate() const;
  [[nodiscard]] std::size_t steps() const;
  [[nodiscard]] double time_at(std::size_t step) const { return t0 + static_cast<double>(step) * h; }
};

// Largest sigma * h accepted without a warning.
inline constexpr double kStiffnessWarningThreshold = 0.5;

// A warning message when sigma * h exceeds kStiffnessWarningThreshold.
std::optional<std::string> stability_warning(double sigma, double h);

// Time-indexed table of named columns stored row-major.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::vector<std::string> columns);

  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] std::size_t rows() const noexcept { return columns_.empty() ? 0 : values_.size() / columns_.size(); }
  [[nodiscard]] std::size_t column_count() const noexcept { return columns_.size(); }

  void append(std::span<const double> row);

  [[nodiscard]] double at(std::size_t row, std::size_t col) const { return values_[row * columns_.size() + col]; }
  [[nodiscard]] std::optional<std::size_t> find_column(std::string_view name) const;
  // Throws InvalidArgument for unknown names.
  [[nodiscard]] std::size_t column_index(std::string_view name) const;
  [[nodiscard]] std::vector<double> column(std::string_view name) const;

  // Header row, then one row per sample with 17 significant digits, LF
  // line endings.
  void write_csv(std::ostream& out) const;
  static Trajectory read_csv(std::istream& in);

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<double> values_;
};

// Column names `prefix_0 .. prefix_{count-1}`.
std::vector<std::string> indexed_columns(std::string_view prefix, std::size_t count);

using VectorField = std::function<Vector(double, const Vector&)>;

// One classical Runge-Kutta step.
Vector rk4_step(const VectorField& rhs, double t, const Vector& x, double h);

// Fixed-step RK4 over [t0, tf]; columns t, x_0.. Throws NonFiniteState as
// soon as a state entry stops being finite.
Trajectory integrate_rk4(const VectorField& rhs, const Vector& x0, const SimConfig& cfg);

struct DerivativeRun {
  Trajectory trajectory;
  // order_errors[i] holds ||w_i_hat - w^{(i+1)}|| at each recorded row.
  std::vector<std::vector<double>> order_errors;
  std::vector<double> times;
};

// Feeds (possibly noisy) samples of `signal` through the estimator and
// records the estimates against the exact derivatives. hold_order < 0 uses
// the estimator's default hold.
DerivativeRun run_derivative_experiment(const AnalyticSignal& signal, const NoiseSpec& noise,
                                        const DirtyDerivativeConfig& est_cfg, const SimConfig& cfg,
                                        int hold_order = -1);

struct InterconnectionOptions {
  std::optional<DirtyDerivativeConfig> estimator;
  std::optional<Vector> x0;  // defaults to the zero vector
  int hold_order = -1;
};

struct InterconnectionRun {
  Trajectory trajectory;
  // Redesign-condition left-hand side at every recorded row:
  // <grad_x V, u> + <grad_theta V, rate>, with rate = thetadot for the
  // ideal and uncorrected flows and rate = theta_hat_1 for the estimated one.
  std::vector<double> redesign_lhs;
  // V(x, theta) at every recorded row.
  std::vector<double> lyapunov;
};

// Newton flow x' = -H^{-1} grad f + u with u chosen by `mode`. In estimated
// mode the estimator sees the (noisy) theta samples and its first output is
// held over each RK4 step; the flow itself always sees the exact theta.
InterconnectionRun run_interconnection(const CostModel& cost, const AnalyticSignal& signal, CorrectionMode mode,
                                       const SimConfig& cfg, const NoiseSpec& noise,
                                       const InterconnectionOptions& options = {});

struct Metric {
  double steady_state_sup = 0.0;
  double steady_state_mean = 0.0;
  // First recorded time after which the column stays below the threshold.
  std::optional<double> transient_time;
};

inline constexpr double kSteadyStateFraction = 0.2;

// Index of the first row in the final 20% window.
std::size_t steady_state_start(std::size_t rows);

Metric steady_state_metric(std::span<const double> times, std::span<const double> values,
                           std::optional<double> threshold = std::nullopt);
Metric steady_state_metric(const Trajectory& traj, std::string_view column,
                           std::optional<double> threshold = std::nullopt);

// Least-squares slope of log(error) against log(sigma). Needs at least three
// points, all positive; throws InsufficientData otherwise.
double slope_fit(std::span<const std::pair<double, double>> points);

}  // namespace ddflow
