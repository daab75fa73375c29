#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "ddflow/errors.hpp"
#include "ddflow/estimator.hpp"

using namespace ddflow;

namespace {

using C = std::complex<double>;

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

C transfer(const LtiRealization& r, double omega, std::size_t out = 0) {
  return C(frequency_response(r, omega)(out, 0));
}

// W_i / W written out by hand for small k.
C hand_transfer(int k, double sigma, int i, C s) {
  const C p = s + sigma;
  const C b1 = sigma * s / p;
  const C b2 = sigma * sigma * s * s / (p * p);
  const C b3 = sigma * sigma * sigma * s * s * s / (p * p * p);
  const C f1 = 1.0 / p;
  const C f2 = (p * p - sigma * sigma) / (s * p * p);
  if (k == 1) return b1;
  if (k == 2) return i == 2 ? b2 : b1 + f1 * b2;
  if (i == 3) return b3;
  const C w2 = b2 + f2 * b3;
  return i == 2 ? w2 : b1 + f1 * w2;
}

}  // namespace

TEST_CASE("F-block examples") {
  const auto f1 = build_f_block(1, 3.0);
  CHECK(f1.a == Matrix{{-3}});
  CHECK(f1.b == Matrix{{1}});
  CHECK(f1.c == Matrix{{1}});
  CHECK(f1.d == Matrix{{0}});
  CHECK(transfer(f1, 0.0).real() == doctest::Approx(1.0 / 3.0));

  const auto f2 = build_f_block(2, 2.0);
  CHECK(f2.a == Matrix{{0, 1}, {-4, -4}});
  CHECK(f2.b == Matrix{{1}, {0}});
  CHECK(f2.c == Matrix{{1, 0}});
  CHECK(transfer(build_f_block(1, 4.0), 0.0).real() == doctest::Approx(0.25));
}

TEST_CASE("branch block examples") {
  const double sigma = 5.0;
  const auto b1 = build_branch_block(1, sigma);
  CHECK(b1.a == Matrix{{-sigma}});
  CHECK(b1.b == Matrix{{1}});
  CHECK(b1.c == Matrix{{-sigma * sigma}});
  CHECK(b1.d == Matrix{{sigma}});

  const C h = transfer(b1, 5.0);
  CHECK(std::abs(h) == doctest::Approx(25.0 / std::sqrt(50.0)));
  CHECK(std::arg(h) == doctest::Approx(M_PI / 4.0));
  CHECK(std::abs(transfer(b1, 0.0)) < 1e-14);
  for (int i = 1; i <= 4; ++i) {
    const auto b = build_branch_block(i, 2.0);
    CHECK(b.d(0, 0) == std::pow(2.0, i));
    CHECK(std::abs(transfer(b, 1e7) - std::pow(2.0, i)) < 1e-4);
  }
}

TEST_CASE("block constructors validate arguments") {
  CHECK_THROWS_AS(build_f_block(0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(build_branch_block(1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(build_cascade(2, -1.0), InvalidArgument);
  std::vector<LtiRealization> branches{build_branch_block(1, 1.0), build_branch_block(2, 1.0)};
  CHECK_THROWS_AS(compose_cascade(branches, {}), InvalidArgument);
  std::vector<LtiRealization> proper{build_branch_block(1, 1.0)};
  CHECK_THROWS_AS(compose_cascade(branches, proper), InvalidArgument);
}

TEST_CASE("every built block has all eigenvalues at -sigma") {
  for (int n = 1; n <= 5; ++n)
    for (double sigma : {0.5, 3.0, 12.0})
      for (const auto& r : {build_f_block(n, sigma), build_branch_block(n, sigma)}) {
        const auto c = characteristic_polynomial(r.a);
        for (int j = 0; j <= n; ++j) {
          const double expect = binomial(n, j) * std::pow(sigma, n - j);
          CHECK(c[static_cast<std::size_t>(j)] == doctest::Approx(expect).epsilon(1e-12));
        }
      }
}

TEST_CASE("cascade dimensions") {
  for (int k = 1; k <= 4; ++k) {
    const auto r = build_cascade(k, 2.0);
    CHECK(r.state_dim() == static_cast<std::size_t>(k * k));
    CHECK(r.input_dim() == 1);
    CHECK(r.output_dim() == static_cast<std::size_t>(k));
  }
  CHECK(build_cascade(3, 1.0).state_dim() == 9);
}

TEST_CASE("cascade transfer matches hand-written recursion") {
  for (int k = 1; k <= 3; ++k)
    for (double sigma : {1.0, 5.0, 20.0}) {
      const auto r = build_cascade(k, sigma);
      for (double omega : {0.05, 1.0, 7.0, 90.0}) {
        const C s(0.0, omega);
        for (int i = 1; i <= k; ++i) {
          const C ref = hand_transfer(k, sigma, i, s);
          CHECK(std::abs(transfer(r, omega, static_cast<std::size_t>(i - 1)) - ref) <= 1e-9 * std::abs(ref));
          CHECK(std::abs(C(cascade_transfer(k, sigma, i, s)) - ref) <= 1e-12 * std::abs(ref));
        }
      }
    }
  // k = 1 is the classic dirty derivative
  CHECK(std::abs(C(cascade_transfer(1, 4.0, 1, C(0, 2))) - 4.0 * C(0, 2) / C(4, 2)) < 1e-15);
}

TEST_CASE("cascade transfer approaches s^i at low frequency") {
  // W_i(s)/W(s) - s^i = O(s^(k+1))
  const C s(0.0, 1e-3);
  for (int k = 1; k <= 3; ++k)
    for (int i = 1; i <= k; ++i) {
      const C err = C(cascade_transfer(k, 2.0, i, s)) - std::pow(s, i);
      CHECK(std::abs(err) <= 10.0 * std::pow(1e-3, k + 1));
    }
}

TEST_CASE("steady-state sinusoid error") {
  CHECK(steady_state_sinusoid_error({1, 5.0, 1}, 1, 1.0, 5.0) == doctest::Approx(25.0 / std::sqrt(50.0)));
  CHECK(steady_state_sinusoid_error({1, 20.0, 1}, 1, 1.0, 5.0) == doctest::Approx(25.0 / std::sqrt(425.0)));
  for (int k = 1; k <= 3; ++k)
    for (int i = 1; i <= k; ++i) CHECK(steady_state_sinusoid_error({k, 3.0, 1}, i, 1.0, 0.0) == 0.0);
  CHECK(steady_state_sinusoid_error({1, 5.0, 1}, 1, 2.0, 5.0) ==
        doctest::Approx(2.0 * steady_state_sinusoid_error({1, 5.0, 1}, 1, 1.0, 5.0)));
  CHECK_THROWS_AS(steady_state_sinusoid_error({1, 5.0, 1}, 2, 1.0, 5.0), InvalidArgument);
}

TEST_CASE("zero-order hold discretization of a scalar system") {
  const double sigma = 4.0, h = 0.01;
  const auto d = discretize(LtiRealization{Matrix{{-sigma}}, Matrix{{1}}, Matrix{{1}}, Matrix{{0}}}, h, 0);
  CHECK(d.a_d(0, 0) == doctest::Approx(std::exp(-sigma * h)).epsilon(1e-15));
  REQUIRE(d.taps[0].size() == 1);
  CHECK(d.taps[0][0].age == 1);
  CHECK(d.taps[0][0].gain[0] == doctest::Approx((1.0 - std::exp(-sigma * h)) / sigma).epsilon(1e-14));
  CHECK_THROWS_AS(discretize(build_cascade(1, 1.0), 0.0, 0), InvalidArgument);
  CHECK_THROWS_AS(discretize(build_cascade(1, 1.0), 0.1, -1), InvalidArgument);
}

TEST_CASE("k=1 estimator with constant input matches the closed-form solution") {
  // output sigma * s/(s+sigma) applied to a step of height u: sigma u e^{-sigma t}
  const double sigma = 7.0, h = 1e-3, u = 1.7;
  for (int hold : {0, 1}) {
    DirtyDerivativeEstimator est({1, sigma, 1}, h, hold);
    CHECK(est.step(Vector{u})[0][0] == doctest::Approx(sigma * u));
    double worst = 0.0;
    for (int n = 1; n <= 2000; ++n) {
      const double y = est.step(Vector{u})[0][0];
      worst = std::max(worst, std::abs(y - sigma * u * std::exp(-sigma * n * h)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("constant input drives every estimate to zero") {
  DirtyDerivativeEstimator est({3, 6.0, 2}, 1e-3);
  std::vector<Vector> out;
  for (int n = 0; n <= 8000; ++n) out = est.step(Vector{2.0, -1.0});
  for (const auto& e : out) CHECK(e.max_abs() < 1e-9);
}

TEST_CASE("ramp converges to its slope at rate sigma") {
  const double sigma = 5.0, h = 1e-3;
  DirtyDerivativeEstimator est({1, sigma, 1}, h);
  for (int n = 0; n <= 4000; ++n) {
    const double t = n * h;
    const double y = est.step(Vector{2.0 * t})[0][0];
    // zero initial state: y = 2 (1 - e^{-sigma t})
    if (n > 0) CHECK(std::abs(y - 2.0 * (1.0 - std::exp(-sigma * t))) < 1e-9);
  }
}

TEST_CASE("polynomial inputs are differentiated exactly after the transient") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    const double sigma = 10.0, h = 1e-3;
    std::vector<double> c(static_cast<std::size_t>(k + 1));
    for (auto& v : c) v = coeff(rng);
    auto deriv = [&](double t, int order) {
      double sum = 0.0;
      for (std::size_t p = static_cast<std::size_t>(order); p < c.size(); ++p) {
        double f = 1.0;
        for (int j = 0; j < order; ++j) f *= static_cast<double>(p) - j;
        sum += c[p] * f * std::pow(t, static_cast<double>(p) - order);
      }
      return sum;
    };
    DirtyDerivativeEstimator est({k, sigma, 1}, h);
    std::vector<Vector> out;
    const int steps = static_cast<int>(std::lround(4.0 / h));
    for (int n = 0; n <= steps; ++n) out = est.step(Vector{deriv(n * h, 0)});
    for (int i = 1; i <= k; ++i) CHECK(std::abs(out[static_cast<std::size_t>(i - 1)][0] - deriv(4.0, i)) < 1e-6);
  }
}

TEST_CASE("channels are independent copies") {
  DirtyDerivativeEstimator two({2, 4.0, 2}, 1e-3);
  DirtyDerivativeEstimator a({2, 4.0, 1}, 1e-3), b({2, 4.0, 1}, 1e-3);
  for (int n = 0; n < 500; ++n) {
    const double t = n * 1e-3;
    const auto both = two.step(Vector{std::sin(t), t * t});
    const auto ya = a.step(Vector{std::sin(t)});
    const auto yb = b.step(Vector{t * t});
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(both[i][0] == ya[i][0]);
      CHECK(both[i][1] == yb[i][0]);
    }
  }
  CHECK_THROWS_AS(two.step(Vector{1.0}), DimensionMismatch);
  two.reset();
  const auto again = two.step(Vector{0.0, 0.0});
  CHECK(again[0].max_abs() == 0.0);
}

TEST_CASE("companion output bound constants") {
  const auto b = companion_output_bound(2, 3.0);
  // P for the unit companion of (s+1)^2 is [[1.5,0.5],[0.5,0.5]]
  CHECK(b.lambda_min == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
  CHECK(b.lambda_max == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)));
  CHECK(b.decay_rate == doctest::Approx(3.0 / (4.0 * b.lambda_max)));
  CHECK(b.input_gain == doctest::Approx(2.0 * std::sqrt(std::pow(b.lambda_max, 3) / b.lambda_min)));
  CHECK(b(2.0, 0.0, 1.0) == doctest::Approx(b.transient(2.0, 0.0) + b.input_gain / 3.0));
  CHECK(b.transient(1.0, 10.0) < b.transient(1.0, 0.0));
}

TEST_CASE("companion output bound holds for random initial states") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> normal(0.0, 2.0);
  const double h = 1e-3;
  for (int n = 1; n <= 3; ++n)
    for (double sigma : {2.0, 10.0}) {
      const auto bound = companion_output_bound(n, sigma);
      for (int trial = 0; trial < 3; ++trial) {
        SampledLtiSystem sys(build_f_block(n, sigma), h, 3, 1);
        Vector x0(static_cast<std::size_t>(n));
        for (auto& v : x0) v = normal(rng);
        sys.set_state(0, x0);
        bool ok = true;
        for (int s = 0; s <= 10000; ++s) {
          const double t = s * h;
          ok = ok && std::abs(sys.step(Vector{std::cos(3.0 * t)})(0, 0)) <= bound(x0.norm(), t, 1.0);
        }
        CHECK(ok);
      }
    }
}
