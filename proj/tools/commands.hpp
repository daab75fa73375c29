#pragma once

#include <iosfwd>

#include "run_spec.hpp"

namespace ddflow::cli {

// Each command writes its files into spec.out_dir, reports on `out`,
// sends warnings to `err` and returns the process exit code.
int run_estimate(const RunSpec& spec, std::ostream& out, std::ostream& err);
int run_optimize(const RunSpec& spec, std::ostream& out, std::ostream& err);
int run_sweep(const RunSpec& spec, std::ostream& out, std::ostream& err);
int run_verify(const RunSpec& spec, std::ostream& out, std::ostream& err);

int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err);

// Full command-line entry point: 0 success, 1 runtime or check failure,
// 2 invalid specification.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddflow::cli
