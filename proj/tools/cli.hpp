// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockset::cli {

inline constexpr int kReportVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // selftest found a failing check
inline constexpr int kExitInput = 2;
inline constexpr int kExitTimeout = 3;

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// the report to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Oracle-equivalence and invariant suites behind `selftest`.
struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelftestCheck> run_selftest(unsigned cases, unsigned seed);

}  // namespace blockset::cli
