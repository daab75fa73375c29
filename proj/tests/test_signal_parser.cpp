#include <doctest.h>

#include <string>
#include <variant>

#include "ddflow/errors.hpp"
#include "ddflow/signal_parser.hpp"

using namespace ddflow;

namespace {

Sinusoid only_sinusoid(const AnalyticSignal& s) {
  REQUIRE(s.dim() == 1);
  return std::get<Sinusoid>(s.components()[0]);
}

std::string error_of(const std::string& text) {
  try {
    parse_signal(text);
  } catch (const SpecError& e) {
    CHECK(e.field() == "signal");
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("single sinusoids in several spellings") {
  for (const char* text : {"sin(5t-2)", "sin(5*t-2)", "1*sin(5*t - 2)", " sin ( -2 + 5 t ) ", "+sin(5t-2)"}) {
    CAPTURE(text);
    const auto s = only_sinusoid(parse_signal(text));
    CHECK(s.kind == SinusoidKind::Sin);
    CHECK(s.amplitude == 1.0);
    CHECK(s.omega == 5.0);
    CHECK(s.phase == -2.0);
  }
  const auto c = only_sinusoid(parse_signal("-2.5*cos(0.5*t+1e-1)"));
  CHECK(c.kind == SinusoidKind::Cos);
  CHECK(c.amplitude == -2.5);
  CHECK(c.omega == 0.5);
  CHECK(c.phase == doctest::Approx(0.1));
  const auto q = only_sinusoid(parse_signal("3cos2(t)"));
  CHECK(q.kind == SinusoidKind::CosSquared);
  CHECK(q.amplitude == 3.0);
  CHECK(q.omega == 1.0);
  CHECK(q.phase == 0.0);
  CHECK(only_sinusoid(parse_signal("-sin(-t)")).omega == -1.0);
}

TEST_CASE("the online-optimization parameter trajectory") {
  const auto s = parse_signal("cos(5*t-2), sin(5*t-2), cos2(5*t-2)");
  REQUIRE(s.dim() == 3);
  CHECK(std::get<Sinusoid>(s.components()[0]).kind == SinusoidKind::Cos);
  CHECK(std::get<Sinusoid>(s.components()[1]).kind == SinusoidKind::Sin);
  CHECK(std::get<Sinusoid>(s.components()[2]).kind == SinusoidKind::CosSquared);
  CHECK(s.eval(0.4) == Vector{1.0, 0.0, 1.0});
}

TEST_CASE("polynomials absorb the numbers that follow them") {
  const auto s = parse_signal("poly:1,2,0.5");
  REQUIRE(s.dim() == 1);
  CHECK(std::get<Polynomial>(s.components()[0]).coefficients == std::vector<double>{1, 2, 0.5});
  CHECK(s.eval(5.0)[0] == 23.5);

  const auto mixed = parse_signal("poly:0,1, sin(t), poly:-3");
  REQUIRE(mixed.dim() == 3);
  CHECK(std::get<Polynomial>(mixed.components()[0]).coefficients == std::vector<double>{0, 1});
  CHECK(std::get<Polynomial>(mixed.components()[2]).coefficients == std::vector<double>{-3});
}

TEST_CASE("errors name the offending token") {
  CHECK(error_of("sin(5x)").find("'sin(5x)'") != std::string::npos);
  CHECK(error_of("sin(t), tan(t)").find("'tan(t)'") != std::string::npos);
  CHECK(error_of("abc*sin(t)").find("'abc*sin(t)'") != std::string::npos);
  CHECK(error_of("sin(2)").find("depend on t") != std::string::npos);
  CHECK(error_of("poly:x").find("'poly:x'") != std::string::npos);
  CHECK_FALSE(error_of("sin(t").empty());
  CHECK_FALSE(error_of("sin(t))").empty());
  CHECK_FALSE(error_of("").empty());
  CHECK_FALSE(error_of("sin(t),").empty());
  CHECK_FALSE(error_of("*sin(t)").empty());
  CHECK_FALSE(error_of("sin(5**t)").empty());
  CHECK_FALSE(error_of("2").empty());
}
