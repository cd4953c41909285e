#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "assouad/metric_space.hpp"

namespace assouad::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerdictFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInputError = 3;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// An existing distance-matrix file, or a built-in sample name:
/// cantor<level>, ap<n>, grid<side>, path<segments> (path over [0, 2]).
FiniteMetricSpace load_space(const std::string& spec);

}  // namespace assouad::cli
