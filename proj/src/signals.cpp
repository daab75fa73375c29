#include "ddflow/signals.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ddflow/errors.hpp"

namespace ddflow {

namespace {

// d^order/du^order of sin(u) or cos(u), cycling with period four.
double trig_derivative(bool is_sin, double u, int order) {
  const int phase = order % 4;
  if (is_sin) {
    switch (phase) {
      case 0: return std::sin(u);
      case 1: return std::cos(u);
      case 2: return -std::sin(u);
      default: return -std::cos(u);
    }
  }
  switch (phase) {
    case 0: return std::cos(u);
    case 1: return -std::sin(u);
    case 2: return -std::cos(u);
    default: return std::sin(u);
  }
}

double eval_sinusoid(const Sinusoid& s, double t, int order) {
  switch (s.kind) {
    case SinusoidKind::Sin:
      return s.amplitude * std::pow(s.omega, order) * trig_derivative(true, s.omega * t + s.phase, order);
    case SinusoidKind::Cos:
      return s.amplitude * std::pow(s.omega, order) * trig_derivative(false, s.omega * t + s.phase, order);
    case SinusoidKind::CosSquared: {
      // cos^2(u) = (1 + cos 2u) / 2
      const double half = 0.5 * s.amplitude;
      const double u2 = 2.0 * (s.omega * t + s.phase);
      const double osc = half * std::pow(2.0 * s.omega, order) * trig_derivative(false, u2, order);
      return order == 0 ? half + osc : osc;
    }
  }
  return 0.0;
}

// Index of the highest nonzero coefficient, or -1 for the zero polynomial.
int effective_degree(const Polynomial& p) {
  for (int i = static_cast<int>(p.coefficients.size()) - 1; i >= 0; --i)
    if (p.coefficients[static_cast<std::size_t>(i)] != 0.0) return i;
  return -1;
}

double eval_polynomial(const Polynomial& p, double t, int order) {
  // Horner on the order-th derivative coefficients c_j * j! / (j - order)!.
  double acc = 0.0;
  const int n = static_cast<int>(p.coefficients.size());
  for (int j = n - 1; j >= order; --j) {
    double falling = 1.0;
    for (int r = 0; r < order; ++r) falling *= static_cast<double>(j - r);
    acc = acc * t + p.coefficients[static_cast<std::size_t>(j)] * falling;
  }
  return acc;
}

}  // namespace

double eval_component(const SignalComponent& component, double t, int order) {
  if (order < 0) throw InvalidArgument("eval: derivative order must be nonnegative");
  if (const auto* s = std::get_if<Sinusoid>(&component)) return eval_sinusoid(*s, t, order);
  if (const auto* p = std::get_if<Polynomial>(&component)) return eval_polynomial(*p, t, order);
  const auto& c = std::get<Constant>(component);
  return order == 0 ? c.value : 0.0;
}

double component_sup_bound(const SignalComponent& component, int order) {
  if (order < 0) throw InvalidArgument("sup_derivative_bound: derivative order must be nonnegative");
  if (const auto* s = std::get_if<Sinusoid>(&component)) {
    const double a = std::abs(s->amplitude);
    if (s->kind != SinusoidKind::CosSquared) return a * std::pow(std::abs(s->omega), order);
    if (order == 0) return a;
    return 0.5 * a * std::pow(2.0 * std::abs(s->omega), order);
  }
  if (const auto* p = std::get_if<Polynomial>(&component)) {
    const int degree = effective_degree(*p);
    if (order > degree) return 0.0;
    if (order < degree) return std::numeric_limits<double>::infinity();
    double fact = 1.0;
    for (int r = 2; r <= degree; ++r) fact *= r;
    return std::abs(p->coefficients[static_cast<std::size_t>(degree)]) * fact;
  }
  const auto& c = std::get<Constant>(component);
  return order == 0 ? std::abs(c.value) : 0.0;
}

AnalyticSignal::AnalyticSignal(std::vector<SignalComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("AnalyticSignal: at least one component required");
  for (const auto& c : components_) {
    if (const auto* s = std::get_if<Sinusoid>(&c)) {
      if (!std::isfinite(s->amplitude) || !std::isfinite(s->omega) || !std::isfinite(s->phase))
        throw InvalidArgument("AnalyticSignal: non-finite sinusoid parameter");
    } else if (const auto* p = std::get_if<Polynomial>(&c)) {
      if (p->coefficients.empty()) throw InvalidArgument("AnalyticSignal: polynomial needs coefficients");
      for (double v : p->coefficients)
        if (!std::isfinite(v)) throw InvalidArgument("AnalyticSignal: non-finite polynomial coefficient");
    } else if (!std::isfinite(std::get<Constant>(c).value)) {
      throw InvalidArgument("AnalyticSignal: non-finite constant");
    }
  }
}

Vector AnalyticSignal::eval(double t, int order) const {
  Vector out(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = eval_component(components_[i], t, order);
  return out;
}

double AnalyticSignal::sup_derivative_bound(int order) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    const double b = component_sup_bound(c, order);
    if (std::isinf(b)) return b;
    sum += b * b;
  }
  return std::sqrt(sum);
}

bool AnalyticSignal::is_pure_sinusoid() const {
  for (const auto& c : components_)
    if (!std::holds_alternative<Sinusoid>(c)) return false;
  return true;
}

double NoiseSource::uniform_open() {
  // 53 random mantissa bits mapped onto (0, 1].
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double NoiseSource::standard_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

Vector sample_noisy(const AnalyticSignal& signal, const NoiseSpec& noise, double t, NoiseSource& source) {
  if (noise.variance < 0.0 || !std::isfinite(noise.variance))
    throw InvalidArgument("sample_noisy: variance must be finite and nonnegative");
  Vector out = signal.eval(t, 0);
  if (!noise.enabled()) return out;
  const double stddev = std::sqrt(noise.variance);
  for (double& v : out) v += stddev * source.standard_normal();
  return out;
}

}  // namespace ddflow
