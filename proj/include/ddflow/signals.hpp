#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "ddflow/numerics.hpp"

namespace ddflow {

enum class SinusoidKind { Sin, Cos, CosSquared };

// amplitude * kind(omega * t + phase)
struct Sinusoid {
  double amplitude = 1.0;
  double omega = 1.0;
  double phase = 0.0;
  SinusoidKind kind = SinusoidKind::Sin;
};

// c_0 + c_1 t + ... + c_d t^d
struct Polynomial {
  std::vector<double> coefficients;
};

struct Constant {
  double value = 0.0;
};

using SignalComponent = std::variant<Sinusoid, Polynomial, Constant>;

// Exact order-th time derivative of a single scalar component.
double eval_component(const SignalComponent& component, double t, int order);

// Supremum over t >= 0 of |order-th derivative|; +infinity when unbounded.
double component_sup_bound(const SignalComponent& component, int order);

// A vector-valued parameter trajectory theta(t) whose derivatives of every
// order are available in closed form.
class AnalyticSignal {
 public:
  explicit AnalyticSignal(std::vector<SignalComponent> components);

  [[nodiscard]] std::size_t dim() const noexcept { return components_.size(); }
  [[nodiscard]] const std::vector<SignalComponent>& components() const noexcept { return components_; }

  [[nodiscard]] Vector eval(double t, int order = 0) const;

  // Root-sum-of-squares of the per-component suprema. Exact for a single
  // component; an upper bound on sup_t ||theta^{(order)}(t)|| in general.
  [[nodiscard]] double sup_derivative_bound(int order) const;

  // True when every component is a Sinusoid (the analytic steady-state
  // oracle applies).
  [[nodiscard]] bool is_pure_sinusoid() const;

 private:
  std::vector<SignalComponent> components_;
};

struct NoiseSpec {
  double variance = 0.0;
  std::uint64_t seed = 0;

  [[nodiscard]] bool enabled() const noexcept { return variance > 0.0; }
};

// Zero-mean Gaussian sample stream. Uniforms come from std::mt19937_64 (the
// 64-bit Mersenne Twister, whose output sequence is fixed by the C++
// standard); normals are produced by the Box-Muller transform, so a given
// seed yields the same sequence on every platform.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  double standard_normal();

 private:
  double uniform_open();  // (0, 1]

  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// theta(t) plus an independent N(0, variance) draw per component. Each call
// consumes fresh draws, so two calls at the same t differ.
Vector sample_noisy(const AnalyticSignal& signal, const NoiseSpec& noise, double t, NoiseSource& source);

}  // namespace ddflow
