#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moyalkit/errors.hpp"

namespace moyalkit {

enum class SeqKind { gevrey, constant_one, explicit_list };

const char* to_string(SeqKind kind);

// A positive, normalized, log-convex sequence a_0..a_{n_max} together with
// fitted growth constants (H, K) for a_{k+n} <= K H^{k+n} a_k a_n.
// All arithmetic is done on log a_n; n^{alpha n} overflows double well before
// n = 64 for alpha = 1.
struct DefiningSequence {
    SeqKind kind = SeqKind::constant_one;
    double alpha = 0.0; // gevrey order, meaningful for kind == gevrey
    int n_max = 64;
    std::vector<double> log_values; // log a_n, n = 0..n_max
    double growth_base = 1.0;       // H
    double growth_constant = 1.0;   // K

    double log_a(int n) const { return log_values[static_cast<std::size_t>(n)]; }
    double a(int n) const;
};

struct GrowthConstants {
    double base;     // H
    double constant; // K
};

// Builds the sequence, verifies normalization/monotonicity, log-convexity and
// the product bound a_k a_n <= a_{k+n}, then fits (H, K).
DefiningSequence make_sequence(SeqKind kind, double alpha, int n_max);
DefiningSequence make_sequence(const std::vector<double>& values);

// Smallest feasible K over the H search grid (2^alpha * e^{alpha j/8} for
// gevrey, 1.25^j otherwise), ties toward the smallest H. Records the result
// into seq. Throws NoFeasibleConstant when every grid point needs K > 1e9.
GrowthConstants fit_growth_constants(DefiningSequence& seq);

struct WeightEvaluation {
    double t = 0.0;
    double log_value = 0.0;
    bool infinite = false; // constant_one sequence with t > 1
    int argmax_n = 0;
    double value() const;
};

// w_a(t) = sup_n t^n / a_n restricted to n <= n_max. Errors on truncation
// (argmax at n_max) instead of silently under-estimating the sup.
WeightEvaluation weight(const DefiningSequence& seq, double t);

struct WeightInequalityReport {
    // Worst log-domain margins (log RHS - log LHS); all must stay >= -tol.
    double margin_split = 0.0;       // w((t1+t2)/(A1+A2)) <= w(t1/A1) w(t2/A2)
    double margin_midpoint = 0.0;    // w((t1+t2)/2) <= w(t1) w(t2)
    double margin_square = 0.0;      // w(t)^2 <= K w(H t)
    double margin_moment = 0.0;      // t^n w(t) <= K a_n w(H t), n <= 8
    int checks = 0;
    int violations = 0;
    bool pass = false;
    double tolerance = 1e-9;
};

WeightInequalityReport
check_weight_inequalities(const DefiningSequence& seq,
                          const std::vector<double>& t_samples);

struct SubordinationFit {
    double constant; // C
    double base;     // L
};

struct SubordinationResult {
    bool holds = false;
    std::optional<SubordinationFit> fit;
    // (b_n / a_n)^{1/n} sampled at n_max/2 and n_max; growth of this ratio is
    // the finite surrogate for asymptotic failure of b_n <= C L^n a_n.
    double tail_ratio_half = 0.0;
    double tail_ratio_full = 0.0;
    std::string reason;
};

SubordinationResult check_subordination(const DefiningSequence& b,
                                        const DefiningSequence& a);

// {kind, alpha, N_max, H, K, values?} document.
std::string sequence_to_json(const DefiningSequence& seq);
DefiningSequence sequence_from_json(const std::string& text);

} // namespace moyalkit
