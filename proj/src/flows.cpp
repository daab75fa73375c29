#include "ddflow/flows.hpp"

#include <cmath>
#include <numbers>

#include "ddflow/errors.hpp"

namespace ddflow {

namespace {

void require_dims(const CostModel& cost, const Vector& x, const Vector& theta) {
  if (x.size() != cost.decision_dim()) throw DimensionMismatch(cost.name() + ": decision vector has wrong dimension");
  if (theta.size() != cost.param_dim()) throw DimensionMismatch(cost.name() + ": parameter vector has wrong dimension");
}

// log cosh(z) without overflow for large |z|.
double log_cosh(double z) {
  const double a = std::abs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double sech_squared(double z) {
  const double c = std::cosh(z);
  return std::isinf(c) ? 0.0 : 1.0 / (c * c);
}

}  // namespace

// ---------------------------------------------------------------- quadratic

QuadraticTrackingCost::QuadraticTrackingCost(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("QuadraticTrackingCost: dimension must be >= 1");
}

double QuadraticTrackingCost::value(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  const Vector e = x - theta;
  return 0.5 * dot(e, e);
}

Vector QuadraticTrackingCost::gradient(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  return x - theta;
}

Matrix QuadraticTrackingCost::hessian(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  return Matrix::identity(dim_);
}

Matrix QuadraticTrackingCost::cross_derivative(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  return Matrix::identity(dim_) * -1.0;
}

// ---------------------------------------------------------------- log-cosh

LogCoshTrackingCost::LogCoshTrackingCost(std::size_t dim, double mu) : dim_(dim), mu_(mu) {
  if (dim == 0) throw InvalidArgument("LogCoshTrackingCost: dimension must be >= 1");
  if (!(mu > 0.0)) throw InvalidArgument("LogCoshTrackingCost: mu must be > 0");
}

double LogCoshTrackingCost::value(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  double f = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double z = x[i] - theta[i];
    f += log_cosh(z) + 0.5 * mu_ * z * z;
  }
  return f;
}

Vector LogCoshTrackingCost::gradient(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  Vector g(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const double z = x[i] - theta[i];
    g[i] = std::tanh(z) + mu_ * z;
  }
  return g;
}

Matrix LogCoshTrackingCost::hessian(const Vector& x, const Vector& theta) const {
  require_dims(*this, x, theta);
  Matrix h(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) h(i, i) = sech_squared(x[i] - theta[i]) + mu_;
  return h;
}

Matrix LogCoshTrackingCost::cross_derivative(const Vector& x, const Vector& theta) const {
  return hessian(x, theta) * -1.0;
}

// ---------------------------------------------------------------- registry

std::unique_ptr<CostModel> make_cost(std::string_view name, std::size_t dim) {
  if (name == "quadratic-tracking") return std::make_unique<QuadraticTrackingCost>(dim);
  if (name == "logcosh") return std::make_unique<LogCoshTrackingCost>(dim);
  throw InvalidArgument("unknown cost '" + std::string(name) + "' (expected quadratic-tracking or logcosh)");
}

std::string_view to_string(CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::None: return "none";
    case CorrectionMode::Ideal: return "ideal";
    case CorrectionMode::Estimated: return "estimated";
  }
  return "none";
}

std::optional<CorrectionMode> parse_correction_mode(std::string_view text) {
  if (text == "none") return CorrectionMode::None;
  if (text == "ideal") return CorrectionMode::Ideal;
  if (text == "estimated") return CorrectionMode::Estimated;
  return std::nullopt;
}

// ---------------------------------------------------------------- flows

Vector newton_rhs(const CostModel& cost, const Vector& x, const Vector& theta) {
  return -solve_linear(cost.hessian(x, theta), cost.gradient(x, theta));
}

Vector ideal_correction(const CostModel& cost, const Vector& x, const Vector& theta, const Vector& theta_dot) {
  if (theta_dot.size() != cost.param_dim()) throw DimensionMismatch("correction: rate vector has wrong dimension");
  return -solve_linear(cost.hessian(x, theta), cost.cross_derivative(x, theta) * theta_dot);
}

Vector estimated_correction(const CostModel& cost, const Vector& x, const Vector& theta, const Vector& theta_hat) {
  return ideal_correction(cost, x, theta, theta_hat);
}

Vector gradient_flow_rhs(const CostModel& cost, const Vector& x, const Vector& theta) {
  return -cost.gradient(x, theta);
}

LyapunovGradients lyapunov_gradients(const CostModel& cost, const Vector& x, const Vector& theta) {
  const Vector g = cost.gradient(x, theta);
  return {0.5 * dot(g, g), cost.hessian(x, theta) * g, cost.cross_derivative(x, theta).transpose() * g};
}

RedesignCheck check_redesign_condition(const Vector& grad_x_v, const Vector& grad_theta_v, const Vector& u,
                                       const Vector& theta_rate) {
  const double lhs = dot(grad_x_v, u) + dot(grad_theta_v, theta_rate);
  return {lhs, lhs <= kRedesignTolerance};
}

}  // namespace ddflow
