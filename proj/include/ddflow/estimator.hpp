#pragma once

// Order-k dirty-derivative estimator.
//
// The estimate of the i-th derivative obeys the recursion
//
//   W_k(s) = sigma^k s^k / (s + sigma)^k * W(s)
//   W_i(s) = sigma^i s^i / (s + sigma)^i * W(s) + F_i(s) * W_{i+1}(s)
//   F_i(s) = ((s + sigma)^i - sigma^i) / (s (s + sigma)^i)
//
// Each "branch" sigma^i s^i / (s + sigma)^i is realized in controllable
// canonical form after one polynomial division, each F_i by the companion
// block whose last row holds -binom(i, j) sigma^(i-j). The blocks are stacked
// into a single-input, k-output realization that is then discretized exactly
// with the matrix exponential.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ddflow/numerics.hpp"

namespace ddflow {

// x' = A x + B u,  y = C x + D u
struct LtiRealization {
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;

  [[nodiscard]] std::size_t state_dim() const noexcept { return a.rows(); }
  [[nodiscard]] std::size_t input_dim() const noexcept { return b.cols(); }
  [[nodiscard]] std::size_t output_dim() const noexcept { return c.rows(); }

  // Throws DimensionMismatch on inconsistent shapes.
  void validate() const;
};

// Companion block realizing F_n(s); B = e_1, C = e_1^T, D = 0.
LtiRealization build_f_block(int n, double sigma);

// Controllable canonical realization of sigma^i s^i / (s + sigma)^i.
LtiRealization build_branch_block(int i, double sigma);

// Wires branch blocks (orders 1..k) and F-blocks (orders 1..k-1) into one
// realization with input W and outputs (W_1, ..., W_k).
LtiRealization compose_cascade(std::span<const LtiRealization> branches, std::span<const LtiRealization> f_blocks);

LtiRealization build_cascade(int order, double sigma);

// C (j omega I - A)^{-1} B + D.
ComplexMatrix frequency_response(const LtiRealization& r, double omega);

// Closed-form W_i(s) / W(s) evaluated from the recursion in scalar complex
// arithmetic. Independent of any state-space realization.
Complex cascade_transfer(int order, double sigma, int i, Complex s);

struct DirtyDerivativeConfig {
  int order = 1;           // k, number of estimated derivatives
  double sigma = 1.0;      // filter gain
  std::size_t signal_dim = 1;

  void validate() const;
};

// Steady-state amplitude a |H_i(j omega) - (j omega)^i| of the i-th estimate
// error for the input a sin(omega t + phi), with H_i taken from the built
// realization.
double steady_state_sinusoid_error(const DirtyDerivativeConfig& config, int i, double amplitude, double omega);

// Exact sampled-data model of an LTI system driven through a polynomial
// input hold. With hold order q >= 1 the input over [t_n, t_{n+1}] is the
// degree-q polynomial through the samples at t_{n+1}, t_n, ..., t_{n+1-q};
// with q = 0 it is the classic zero-order hold of the sample at t_n.
struct Discretization {
  struct Tap {
    std::size_t age;  // 0 = newest sample, 1 = previous, ...
    Vector gain;      // state-dim column multiplying that sample
  };

  double step = 0.0;
  int hold_order = 0;
  Matrix a_d;
  // taps[q] is the input map for a hold of degree q (used while the sample
  // history is still shorter than hold_order + 1).
  std::vector<std::vector<Tap>> taps;
};

// Requires a single-input realization.
Discretization discretize(const LtiRealization& r, double step, int hold_order);

// m independent scalar channels sharing one realization and discretization.
class SampledLtiSystem {
 public:
  SampledLtiSystem(LtiRealization realization, double step, int hold_order, std::size_t channels);

  // Feeds the sample taken at the next grid time. The first call only
  // records the sample; every later call advances the state by one step.
  // Returns the outputs at the sample time, one row per output, one column
  // per channel.
  Matrix step(const Vector& sample);

  void set_state(std::size_t channel, const Vector& state);
  [[nodiscard]] const Vector& state(std::size_t channel) const { return states_.at(channel); }
  void reset();

  [[nodiscard]] const LtiRealization& realization() const noexcept { return realization_; }
  [[nodiscard]] const Discretization& discretization() const noexcept { return discrete_; }
  [[nodiscard]] std::size_t channels() const noexcept { return states_.size(); }

 private:
  LtiRealization realization_;
  Discretization discrete_;
  std::vector<Vector> states_;
  std::vector<Vector> history_;  // newest first
};

class DirtyDerivativeEstimator {
 public:
  // hold_order < 0 selects the default, a hold of degree k, which makes the
  // discrete estimator exact for polynomial inputs of degree <= k.
  DirtyDerivativeEstimator(const DirtyDerivativeConfig& config, double step, int hold_order = -1);

  // Returns k vectors of dimension m: the estimates of derivatives 1..k.
  std::vector<Vector> step(const Vector& sample);

  void reset() { system_.reset(); }

  [[nodiscard]] const DirtyDerivativeConfig& config() const noexcept { return config_; }
  [[nodiscard]] const LtiRealization& continuous() const noexcept { return system_.realization(); }
  [[nodiscard]] const Discretization& discrete() const noexcept { return system_.discretization(); }
  [[nodiscard]] SampledLtiSystem& system() noexcept { return system_; }

 private:
  DirtyDerivativeConfig config_;
  SampledLtiSystem system_;
};

// Output bound for the companion system x' = A_{n,sigma} x + e_1 u, y = x_1:
//   |y(t)| <= b(|x(0)|, t) + gain * sup|u| / sigma
// with b(r, t) = r * initial_gain * exp(-decay_rate * t), all constants
// derived from P_n solving A_n^T P_n + P_n A_n = -I.
struct CompanionOutputBound {
  int n = 0;
  double sigma = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double initial_gain = 0.0;
  double decay_rate = 0.0;
  double input_gain = 0.0;  // a_n

  [[nodiscard]] double transient(double x0_norm, double t) const;
  [[nodiscard]] double operator()(double x0_norm, double t, double input_sup) const;
};

CompanionOutputBound companion_output_bound(int n, double sigma);

}  // namespace ddflow
