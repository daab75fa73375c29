#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "ddflow/numerics.hpp"

namespace ddflow {

// Time-varying cost f(x, theta), strongly convex in x for every theta.
class CostModel {
 public:
  virtual ~CostModel() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual std::size_t decision_dim() const = 0;
  [[nodiscard]] virtual std::size_t param_dim() const = 0;
  // Declared strong-convexity modulus mu > 0.
  [[nodiscard]] virtual double strong_convexity() const = 0;

  [[nodiscard]] virtual double value(const Vector& x, const Vector& theta) const = 0;
  [[nodiscard]] virtual Vector gradient(const Vector& x, const Vector& theta) const = 0;
  [[nodiscard]] virtual Matrix hessian(const Vector& x, const Vector& theta) const = 0;
  // d/dtheta of grad_x f, an n x p matrix.
  [[nodiscard]] virtual Matrix cross_derivative(const Vector& x, const Vector& theta) const = 0;
  [[nodiscard]] virtual std::optional<Vector> minimizer(const Vector& /*theta*/) const { return std::nullopt; }
};

// f(x, theta) = 1/2 ||x - theta||^2
class QuadraticTrackingCost final : public CostModel {
 public:
  explicit QuadraticTrackingCost(std::size_t dim);

  [[nodiscard]] std::string name() const override { return "quadratic-tracking"; }
  [[nodiscard]] std::size_t decision_dim() const override { return dim_; }
  [[nodiscard]] std::size_t param_dim() const override { return dim_; }
  [[nodiscard]] double strong_convexity() const override { return 1.0; }

  [[nodiscard]] double value(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] Vector gradient(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] Matrix hessian(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] Matrix cross_derivative(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] std::optional<Vector> minimizer(const Vector& theta) const override { return theta; }

 private:
  std::size_t dim_;
};

// f(x, theta) = sum_i log cosh(x_i - theta_i) + mu/2 ||x - theta||^2
// Its Hessian depends on the state, which the quadratic cost cannot exercise.
class LogCoshTrackingCost final : public CostModel {
 public:
  explicit LogCoshTrackingCost(std::size_t dim, double mu = 0.1);

  [[nodiscard]] std::string name() const override { return "logcosh"; }
  [[nodiscard]] std::size_t decision_dim() const override { return dim_; }
  [[nodiscard]] std::size_t param_dim() const override { return dim_; }
  [[nodiscard]] double strong_convexity() const override { return mu_; }

  [[nodiscard]] double value(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] Vector gradient(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] Matrix hessian(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] Matrix cross_derivative(const Vector& x, const Vector& theta) const override;
  [[nodiscard]] std::optional<Vector> minimizer(const Vector& theta) const override { return theta; }

 private:
  std::size_t dim_;
  double mu_;
};

// Looks a cost up by its CLI name ("quadratic-tracking", "logcosh").
// Throws InvalidArgument for unknown names.
std::unique_ptr<CostModel> make_cost(std::string_view name, std::size_t dim);

enum class CorrectionMode { None, Ideal, Estimated };

std::string_view to_string(CorrectionMode mode);
std::optional<CorrectionMode> parse_correction_mode(std::string_view text);

// -H^{-1} grad_x f, the Newton direction without any correction input.
Vector newton_rhs(const CostModel& cost, const Vector& x, const Vector& theta);

// -H^{-1} (d grad_x f / d theta) thetadot
Vector ideal_correction(const CostModel& cost, const Vector& x, const Vector& theta, const Vector& theta_dot);

// Same formula as ideal_correction, fed with the estimated derivative.
Vector estimated_correction(const CostModel& cost, const Vector& x, const Vector& theta, const Vector& theta_hat);

// Descent direction -grad_x f.
Vector gradient_flow_rhs(const CostModel& cost, const Vector& x, const Vector& theta);

// V(x, theta) = 1/2 ||grad_x f||^2 with its two partial gradients.
struct LyapunovGradients {
  double value = 0.0;
  Vector grad_x;
  Vector grad_theta;
};

LyapunovGradients lyapunov_gradients(const CostModel& cost, const Vector& x, const Vector& theta);

struct RedesignCheck {
  double lhs = 0.0;
  bool satisfied = false;
};

inline constexpr double kRedesignTolerance = 1e-9;

// <grad_x V, u> + <grad_theta V, theta_rate> <= 1e-9, where theta_rate is
// thetadot + d (or the estimated derivative).
RedesignCheck check_redesign_condition(const Vector& grad_x_v, const Vector& grad_theta_v, const Vector& u,
                                       const Vector& theta_rate);

}  // namespace ddflow
