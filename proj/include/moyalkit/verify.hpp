#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moyalkit/grid.hpp"

namespace moyalkit {

struct RunConfig {
    int grid_n = 128;
    double grid_half_width = 12.0;
    double hbar = 1.0;
    std::uint64_t seed = 20240915;
    // Per-suite tolerance overrides map onto CriterionResult.tolerance when a
    // positive value is supplied; -1 keeps the pinned default.
    double tolerance_override = -1.0;
};

struct CriterionResult {
    int id = 0;
    std::string suite;
    std::string name;
    // margin convention: measured value of the checked quantity; the check
    // passes when margin <= tolerance (monotonicity-style checks report the
    // worst violation, so 0 means "clean").
    double margin = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

// The property batteries, one entry per acceptance criterion (plus module
// invariants folded into the same suites). Suites: sequences, gridfn,
// starprod, multipliers, quantize.
std::vector<CriterionResult> run_suite(const std::string& suite,
                                       const RunConfig& config);
std::vector<CriterionResult> run_all(const RunConfig& config);

std::string suite_report_json(const std::vector<CriterionResult>& results,
                              const RunConfig& config);

void print_results(const std::vector<CriterionResult>& results);

} // namespace moyalkit
