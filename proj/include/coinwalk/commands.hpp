// Experiment commands behind the coinwalk executable. Each returns a table
// ready for encoding plus a short human-readable summary.

#pragma once

#include <string>
#include <vector>

#include "coinwalk/run_config.hpp"
#include "coinwalk/table.hpp"

namespace coinwalk {

inline constexpr double kEquivalenceThreshold = 1e-12;

struct RunResult {
    Table table;
    /// False when a physics check (equivalence, cavity) fails.
    bool passed = true;
    std::string summary;
};

RunResult run_walk(const RunConfig& cfg);
RunResult run_classical(const RunConfig& cfg);
RunResult run_continuum(const RunConfig& cfg);
RunResult run_compare(const RunConfig& cfg);
RunResult run_sweep(const RunConfig& cfg);
RunResult run_equivalence(const RunConfig& cfg);
RunResult run_cavity_check(const RunConfig& cfg);

/// Dispatches on cfg.command.
RunResult run(const RunConfig& cfg);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs at least 3 points.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// COINWALK_THREADS if set to a positive integer, else hardware concurrency.
unsigned sweep_threads();

}  // namespace coinwalk
