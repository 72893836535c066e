/// @file cli.hpp
/// @brief Subcommand dispatch for the `henle` tool.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "henle/config.hpp"
#include "henle/diagnostics.hpp"

namespace henle {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_validation = 2,
    exit_invariant = 3,
    exit_runtime = 4,
};

/// Runs `simulate`, `converge`, `check-invariants` or `cross-validate`.
/// Messages go to `out` / `err`; the return value is one of ExitCode.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv);

/// Writes manifest.txt, fields.csv (plus fields_reduced.csv for model=both),
/// boundary.csv and invariants.csv into cfg.out.
void simulate(const RunConfig& cfg, std::ostream& log);

/// Writes manifest.txt and convergence.csv into cfg.out.
ConvergenceReport converge(const RunConfig& cfg, std::ostream& log);

/// Concurrency cap from HENLE_THREADS (default: hardware threads, at least 1).
int thread_cap();

}  // namespace henle
