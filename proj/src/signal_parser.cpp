#include "ddflow/signal_parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "ddflow/errors.hpp"

namespace ddflow {

namespace {

[[noreturn]] void fail(const std::string& token, const std::string& why) {
  throw SpecError("signal", "bad token '" + token + "': " + why);
}

// Parses the whole of `text` as one finite decimal number.
std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const char first = text.front();
  if (!(std::isdigit(static_cast<unsigned char>(first)) || first == '.' || first == '+' || first == '-'))
    return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Length of the longest decimal-number prefix of `text` (0 when none).
std::size_t number_prefix(const std::string& text, std::size_t pos) {
  std::size_t i = pos;
  bool digits = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, digits = true;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, digits = true;
  }
  if (!digits) return 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
    if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      i = j;
    }
  }
  return i - pos;
}

// omega * t + phase from a sum of terms such as "5t-2" or "-2+5*t".
void parse_linear(const std::string& arg, const std::string& token, double& omega, double& phase) {
  if (arg.empty()) fail(token, "empty argument");
  omega = 0.0;
  phase = 0.0;
  bool saw_t = false;
  std::size_t i = 0;
  while (i < arg.size()) {
    double sign = 1.0;
    if (arg[i] == '+' || arg[i] == '-') {
      sign = arg[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      fail(token, "expected '+' or '-' in argument '" + arg + "'");
    }
    const std::size_t len = number_prefix(arg, i);
    double coeff = 1.0;
    if (len > 0) {
      coeff = std::strtod(arg.substr(i, len).c_str(), nullptr);
      i += len;
    }
    bool is_t = false;
    if (i < arg.size() && arg[i] == '*') {
      if (len == 0) fail(token, "dangling '*' in argument '" + arg + "'");
      ++i;
      if (i >= arg.size() || arg[i] != 't') fail(token, "expected 't' after '*' in argument '" + arg + "'");
    }
    if (i < arg.size() && arg[i] == 't') {
      is_t = true;
      ++i;
    }
    if (len == 0 && !is_t) fail(token, "expected a number or 't' in argument '" + arg + "'");
    if (i < arg.size() && arg[i] != '+' && arg[i] != '-')
      fail(token, "unexpected '" + std::string(1, arg[i]) + "' in argument '" + arg + "'");
    if (is_t) {
      omega += sign * coeff;
      saw_t = true;
    } else {
      phase += sign * coeff;
    }
  }
  if (!saw_t) fail(token, "argument must depend on t");
}

Sinusoid parse_sinusoid(const std::string& token) {
  struct Name {
    const char* text;
    SinusoidKind kind;
  };
  // cos2 before cos so the longer name wins.
  static constexpr Name names[] = {{"cos2(", SinusoidKind::CosSquared}, {"sin(", SinusoidKind::Sin}, {"cos(", SinusoidKind::Cos}};
  for (const auto& name : names) {
    const std::size_t at = token.find(name.text);
    if (at == std::string::npos) continue;
    if (token.back() != ')') fail(token, "missing closing ')'");

    Sinusoid s;
    s.kind = name.kind;
    std::string amp = token.substr(0, at);
    if (!amp.empty() && amp.back() == '*') {
      amp.pop_back();
      if (amp.empty()) fail(token, "dangling '*' before function");
    }
    if (amp.empty() || amp == "+") {
      s.amplitude = 1.0;
    } else if (amp == "-") {
      s.amplitude = -1.0;
    } else if (auto v = parse_number(amp)) {
      s.amplitude = *v;
    } else {
      fail(token, "amplitude '" + amp + "' is not a number");
    }
    const std::size_t open = at + std::string(name.text).size();
    const std::string arg = token.substr(open, token.size() - open - 1);
    parse_linear(arg, token, s.omega, s.phase);
    return s;
  }
  fail(token, "expected A*sin(...), A*cos(...), A*cos2(...) or poly:c0,c1,...");
}

}  // namespace

AnalyticSignal parse_signal(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) throw SpecError("signal", "empty signal description");

  std::vector<std::string> tokens;
  int depth = 0;
  std::string current;
  for (char c : compact) {
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) fail(compact, "unbalanced ')'");
    if (c == ',' && depth == 0) {
      tokens.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (depth != 0) fail(compact, "unbalanced '('");
  tokens.push_back(current);

  std::vector<SignalComponent> components;
  Polynomial* open_poly = nullptr;
  for (const auto& token : tokens) {
    if (token.empty()) fail(token, "empty component");
    if (token.rfind("poly:", 0) == 0) {
      const auto c0 = parse_number(token.substr(5));
      if (!c0) fail(token, "polynomial coefficient is not a number");
      components.emplace_back(Polynomial{{*c0}});
      open_poly = &std::get<Polynomial>(components.back());
      continue;
    }
    if (open_poly) {
      if (const auto c = parse_number(token)) {
        open_poly->coefficients.push_back(*c);
        continue;
      }
    }
    components.emplace_back(parse_sinusoid(token));
    open_poly = nullptr;
  }
  return AnalyticSignal(std::move(components));
}

}  // namespace ddflow
