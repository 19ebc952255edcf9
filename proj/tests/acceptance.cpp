// Acceptance suite: runs every criterion of the property battery at desk
// scale (d = 1 phase space, N = 128, L = 12, hbar = 1) and prints one
// pass/fail line per criterion, followed by the module-invariant checks.

#include <chrono>
#include <cstdio>

#include "moyalkit/verify.hpp"

int main() {
    moyalkit::RunConfig config; // desk-scale defaults
    auto t0 = std::chrono::steady_clock::now();
    std::vector<moyalkit::CriterionResult> results = moyalkit::run_all(config);
    double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    int failures = 0;
    double criteria_seconds = 0.0;
    std::printf("== acceptance criteria ==\n");
    for (const auto& r : results) {
        if (r.id > 15) continue;
        criteria_seconds += r.seconds;
        if (!r.passed) ++failures;
        std::printf("criterion %2d [%s] %-52s margin %.3e tol %.1e (%.2fs)\n",
                    r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.margin,
                    r.tolerance, r.seconds);
        if (!r.passed) std::printf("    detail: %s\n", r.detail.c_str());
    }
    std::printf("== module invariants ==\n");
    for (const auto& r : results) {
        if (r.id <= 15) continue;
        if (!r.passed) ++failures;
        std::printf("invariant %3d [%s] %-51s margin %.3e tol %.1e (%.2fs)\n",
                    r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(), r.margin,
                    r.tolerance, r.seconds);
        if (!r.passed) std::printf("    detail: %s\n", r.detail.c_str());
    }
    bool on_time = total < 300.0;
    std::printf("total %.1fs (budget 300s) -> %s; failures: %d\n", total,
                on_time ? "ok" : "OVER BUDGET", failures);
    return (failures == 0 && on_time) ? 0 : 1;
}
