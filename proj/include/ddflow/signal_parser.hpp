#pragma once

#include <string_view>

#include "ddflow/signals.hpp"

namespace ddflow {

// Parses the --signal mini-grammar: comma-separated components, each one of
//
//   A*sin(w*t+p)   A*cos(w*t+p)   A*cos2(w*t+p)   poly:c0,c1,...
//
// The amplitude prefix is optional ("sin(...)", "-cos(...)", "2sin(...)"),
// the argument is any sum of constant and t-terms ("5t-2", "-2+5*t"), and
// whitespace is ignored. Numbers following a poly: component extend its
// coefficient list. Throws SpecError (field "signal") naming the offending
// token.
AnalyticSignal parse_signal(std::string_view text);

}  // namespace ddflow
