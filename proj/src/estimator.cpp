#include "ddflow/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddflow/errors.hpp"

namespace ddflow {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return std::round(r);
}

void require_block_args(int n, double sigma, const char* what) {
  if (n < 1) throw InvalidArgument(std::string(what) + ": order must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument(std::string(what) + ": sigma must be > 0");
}

// Companion matrix with superdiagonal ones and characteristic polynomial
// (s + sigma)^n.
Matrix companion(int n, double sigma) {
  const auto un = static_cast<std::size_t>(n);
  Matrix a(un, un);
  for (std::size_t r = 0; r + 1 < un; ++r) a(r, r + 1) = 1.0;
  for (int j = 0; j < n; ++j) a(un - 1, static_cast<std::size_t>(j)) = -binomial(n, j) * std::pow(sigma, n - j);
  return a;
}

}  // namespace

void LtiRealization::validate() const {
  const std::size_t n = a.rows();
  if (!a.is_square()) throw DimensionMismatch("LtiRealization: A must be square");
  if (b.rows() != n) throw DimensionMismatch("LtiRealization: B row count must equal state dimension");
  if (c.cols() != n) throw DimensionMismatch("LtiRealization: C column count must equal state dimension");
  if (d.rows() != c.rows() || d.cols() != b.cols()) throw DimensionMismatch("LtiRealization: D must be q x p");
}

LtiRealization build_f_block(int n, double sigma) {
  require_block_args(n, sigma, "build_f_block");
  const auto un = static_cast<std::size_t>(n);
  LtiRealization r{companion(n, sigma), Matrix(un, 1), Matrix(1, un), Matrix(1, 1)};
  r.b(0, 0) = 1.0;
  r.c(0, 0) = 1.0;
  return r;
}

LtiRealization build_branch_block(int i, double sigma) {
  require_block_args(i, sigma, "build_branch_block");
  const auto ui = static_cast<std::size_t>(i);
  // sigma^i s^i / (s+sigma)^i = sigma^i - sigma^i ((s+sigma)^i - s^i) / (s+sigma)^i
  const double gain = std::pow(sigma, i);
  LtiRealization r{companion(i, sigma), Matrix(ui, 1), Matrix(1, ui), Matrix(1, 1)};
  r.b(ui - 1, 0) = 1.0;
  for (int j = 0; j < i; ++j) r.c(0, static_cast<std::size_t>(j)) = -gain * binomial(i, j) * std::pow(sigma, i - j);
  r.d(0, 0) = gain;
  return r;
}

LtiRealization compose_cascade(std::span<const LtiRealization> branches, std::span<const LtiRealization> f_blocks) {
  const std::size_t k = branches.size();
  if (k == 0) throw InvalidArgument("compose_cascade: need at least one branch block");
  if (f_blocks.size() + 1 != k) throw InvalidArgument("compose_cascade: need exactly k-1 F-blocks for k branches");
  auto check_siso = [](const LtiRealization& r) {
    r.validate();
    if (r.input_dim() != 1 || r.output_dim() != 1) throw DimensionMismatch("compose_cascade: blocks must be SISO");
  };

  std::size_t n = 0;
  std::vector<std::size_t> branch_off(k);
  std::vector<std::size_t> f_off(f_blocks.size());
  for (std::size_t i = 0; i < k; ++i) {
    check_siso(branches[i]);
    branch_off[i] = n;
    n += branches[i].state_dim();
  }
  for (std::size_t i = 0; i < f_blocks.size(); ++i) {
    check_siso(f_blocks[i]);
    if (f_blocks[i].d(0, 0) != 0.0) throw InvalidArgument("compose_cascade: F-blocks must be strictly proper");
    f_off[i] = n;
    n += f_blocks[i].state_dim();
  }

  LtiRealization out{Matrix(n, n), Matrix(n, 1), Matrix(k, n), Matrix(k, 1)};
  for (std::size_t i = 0; i < k; ++i) {
    const auto& br = branches[i];
    out.a.set_block(branch_off[i], branch_off[i], br.a);
    out.b.set_block(branch_off[i], 0, br.b);
    out.c.set_block(i, branch_off[i], br.c);
    out.d(i, 0) = br.d(0, 0);
  }
  // Output rows must be complete before they are fed into the F-blocks.
  for (std::size_t i = 0; i < f_blocks.size(); ++i) {
    const auto& f = f_blocks[i];
    out.a.set_block(f_off[i], f_off[i], f.a);
    out.c.add_block(i, f_off[i], f.c);
  }
  for (std::size_t i = 0; i < f_blocks.size(); ++i) {
    const auto& f = f_blocks[i];
    // input of F_i is the estimate W_{i+1} = C_{i+1} x + D_{i+1} w
    out.a.add_block(f_off[i], 0, f.b * Matrix::row(out.c.row_vector(i + 1)));
    out.b.add_block(f_off[i], 0, f.b * out.d(i + 1, 0));
  }
  return out;
}

LtiRealization build_cascade(int order, double sigma) {
  require_block_args(order, sigma, "build_cascade");
  std::vector<LtiRealization> branches;
  std::vector<LtiRealization> f_blocks;
  for (int i = 1; i <= order; ++i) branches.push_back(build_branch_block(i, sigma));
  for (int i = 1; i < order; ++i) f_blocks.push_back(build_f_block(i, sigma));
  return compose_cascade(branches, f_blocks);
}

ComplexMatrix frequency_response(const LtiRealization& r, double omega) {
  r.validate();
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw InvalidArgument("frequency_response: omega must be finite and >= 0");
  return transfer_at(r.a, r.b, r.c, r.d, Complex(0.0, omega));
}

Complex cascade_transfer(int order, double sigma, int i, Complex s) {
  require_block_args(order, sigma, "cascade_transfer");
  if (i < 1 || i > order) throw InvalidArgument("cascade_transfer: derivative index out of range");
  const Complex lag = sigma / (s + sigma);
  auto branch = [&](int j) { return std::pow(s * lag, j); };
  // ((s+sigma)^j - sigma^j) / s expanded so that s -> 0 needs no cancellation.
  auto f_block = [&](int j) {
    Complex num = 0.0;
    for (int m = j; m >= 1; --m) num = num * s + binomial(j, m) * std::pow(sigma, j - m);
    return num / std::pow(s + sigma, j);
  };
  Complex h = branch(order);
  for (int j = order - 1; j >= i; --j) h = branch(j) + f_block(j) * h;
  return h;
}

void DirtyDerivativeConfig::validate() const {
  if (order < 1) throw InvalidArgument("DirtyDerivativeConfig: order k must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("DirtyDerivativeConfig: sigma must be > 0");
  if (signal_dim < 1) throw InvalidArgument("DirtyDerivativeConfig: signal dimension must be >= 1");
}

double steady_state_sinusoid_error(const DirtyDerivativeConfig& config, int i, double amplitude, double omega) {
  config.validate();
  if (i < 1 || i > config.order) throw InvalidArgument("steady_state_sinusoid_error: derivative index out of range");
  const LtiRealization r = build_cascade(config.order, config.sigma);
  const Complex h = frequency_response(r, omega)(static_cast<std::size_t>(i - 1), 0);
  const Complex exact = std::pow(Complex(0.0, omega), i);
  return std::abs(amplitude) * std::abs(h - exact);
}

// ---------------------------------------------------------------- discretization

Discretization discretize(const LtiRealization& r, double step, int hold_order) {
  r.validate();
  if (r.input_dim() != 1) throw DimensionMismatch("discretize: realization must have a single input");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("discretize: step must be > 0");
  if (hold_order < 0) throw InvalidArgument("discretize: hold order must be >= 0");
  const std::size_t n = r.state_dim();

  Discretization out;
  out.step = step;
  out.hold_order = hold_order;
  out.taps.resize(static_cast<std::size_t>(hold_order) + 1);

  for (int degree = 0; degree <= hold_order; ++degree) {
    const auto g = static_cast<std::size_t>(degree);
    // In normalized time s = tau / h: x' = hA x + hB v_0 with the chain
    // v_j' = v_{j+1}; starting v at e_j makes v_0 = s^j / j!.
    Matrix m(n + g + 1, n + g + 1);
    m.set_block(0, 0, r.a * step);
    m.set_block(0, n, r.b * step);
    for (std::size_t j = 0; j < g; ++j) m(n + j, n + j + 1) = 1.0;
    const Matrix phi = expm(m);
    if (degree == hold_order) out.a_d = phi.block(0, 0, n, n);

    // Response to the monomial input s^j.
    std::vector<Vector> gamma;
    double factorial = 1.0;
    for (std::size_t j = 0; j <= g; ++j) {
      if (j > 0) factorial *= static_cast<double>(j);
      gamma.push_back(phi.block(0, n + j, n, 1).column_vector(0) * factorial);
    }

    std::vector<double> nodes;
    std::vector<std::size_t> ages;
    if (degree == 0) {
      nodes = {0.0};
      ages = {1};
    } else {
      for (std::size_t age = 0; age <= g; ++age) {
        nodes.push_back(1.0 - static_cast<double>(age));
        ages.push_back(age);
      }
    }
    Matrix vandermonde(g + 1, g + 1);
    for (std::size_t row = 0; row <= g; ++row)
      for (std::size_t j = 0; j <= g; ++j) vandermonde(row, j) = std::pow(nodes[row], static_cast<double>(j));
    const Matrix coeff_map = solve_linear(vandermonde, Matrix::identity(g + 1));

    auto& taps = out.taps[g];
    for (std::size_t row = 0; row <= g; ++row) {
      Vector gain(n);
      for (std::size_t j = 0; j <= g; ++j) gain += gamma[j] * coeff_map(j, row);
      taps.push_back({ages[row], std::move(gain)});
    }
  }
  return out;
}

SampledLtiSystem::SampledLtiSystem(LtiRealization realization, double step, int hold_order, std::size_t channels)
    : realization_(std::move(realization)),
      discrete_(discretize(realization_, step, hold_order)),
      states_(channels, Vector(realization_.state_dim())) {
  if (channels == 0) throw InvalidArgument("SampledLtiSystem: need at least one channel");
}

Matrix SampledLtiSystem::step(const Vector& sample) {
  if (sample.size() != states_.size())
    throw DimensionMismatch("SampledLtiSystem::step: sample has " + std::to_string(sample.size()) +
                            " entries, expected " + std::to_string(states_.size()));
  history_.insert(history_.begin(), sample);
  const auto keep = static_cast<std::size_t>(std::max(discrete_.hold_order, 1)) + 1;
  if (history_.size() > keep) history_.resize(keep);

  if (history_.size() >= 2) {
    const std::size_t degree =
        discrete_.hold_order == 0 ? 0 : std::min<std::size_t>(static_cast<std::size_t>(discrete_.hold_order), history_.size() - 1);
    const auto& taps = discrete_.taps[degree];
    for (std::size_t ch = 0; ch < states_.size(); ++ch) {
      Vector next = discrete_.a_d * states_[ch];
      for (const auto& tap : taps) next += tap.gain * history_[tap.age][ch];
      states_[ch] = std::move(next);
    }
  }

  const std::size_t q = realization_.output_dim();
  Matrix out(q, states_.size());
  for (std::size_t ch = 0; ch < states_.size(); ++ch) {
    const Vector y = realization_.c * states_[ch];
    for (std::size_t r = 0; r < q; ++r) out(r, ch) = y[r] + realization_.d(r, 0) * sample[ch];
  }
  return out;
}

void SampledLtiSystem::set_state(std::size_t channel, const Vector& state) {
  if (state.size() != realization_.state_dim()) throw DimensionMismatch("SampledLtiSystem::set_state: wrong state dimension");
  states_.at(channel) = state;
}

void SampledLtiSystem::reset() {
  for (auto& s : states_) s = Vector(realization_.state_dim());
  history_.clear();
}

DirtyDerivativeEstimator::DirtyDerivativeEstimator(const DirtyDerivativeConfig& config, double step, int hold_order)
    : config_((config.validate(), config)),
      system_(build_cascade(config.order, config.sigma), step, hold_order < 0 ? config.order : hold_order,
              config.signal_dim) {}

std::vector<Vector> DirtyDerivativeEstimator::step(const Vector& sample) {
  const Matrix y = system_.step(sample);
  std::vector<Vector> estimates;
  estimates.reserve(y.rows());
  for (std::size_t i = 0; i < y.rows(); ++i) estimates.push_back(y.row_vector(i));
  return estimates;
}

// ---------------------------------------------------------------- output bound

double CompanionOutputBound::transient(double x0_norm, double t) const {
  return x0_norm * initial_gain * std::exp(-decay_rate * t);
}

double CompanionOutputBound::operator()(double x0_norm, double t, double input_sup) const {
  return transient(x0_norm, t) + input_gain * input_sup / sigma;
}

CompanionOutputBound companion_output_bound(int n, double sigma) {
  require_block_args(n, sigma, "companion_output_bound");
  const Matrix unit = companion(n, 1.0);
  const auto un = static_cast<std::size_t>(n);
  const Matrix p = lyapunov_solve(unit, Matrix::identity(un));
  const EigenExtremes ext = eig_extremes_symmetric(p);

  CompanionOutputBound bound;
  bound.n = n;
  bound.sigma = sigma;
  bound.lambda_min = ext.min;
  bound.lambda_max = ext.max;
  bound.initial_gain = std::max(1.0, std::pow(sigma, n - 1)) * std::sqrt(ext.max / ext.min);
  bound.decay_rate = sigma / (4.0 * ext.max);
  bound.input_gain = 2.0 * std::sqrt(ext.max * ext.max * ext.max / ext.min);
  return bound;
}

}  // namespace ddflow
