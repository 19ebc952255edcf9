#pragma once

#include <optional>
#include <string>
#include <utility>

#include "moyalkit/fourier.hpp"
#include "moyalkit/grid.hpp"
#include "moyalkit/sequences.hpp"

namespace moyalkit {

enum class NormKind { s_norm, s_norm_weighted, e_norm };

// Truncated norm estimators. Every value is a lower bound of the true sup:
// the grid is finite and the derivative order is capped at M; the report says
// so explicitly.
struct NormReport {
    NormKind kind = NormKind::s_norm_weighted;
    double A = 1.0;
    double B = 1.0;
    int M = 0;
    double value = 0.0;
    double log_value = 0.0;
    bool infinite = false;          // support violation against 1/w_1
    bool support_violation = false; // constant_one decay sequence violated
    GridSpec grid;
    int peak_weight_argmax = 0; // largest weight index that contributed
    std::string notes;
};

// sup over |beta| <= M and grid x of w_a(|x|/A) |d^beta f(x)| / (B^|beta| b_|beta|)
// with |x| the per-axis max norm.
NormReport gs_norm(const GridFunction& f, const DefiningSequence& a,
                   const DefiningSequence& b, double A, double B, int M);

// Moment form sup |x^alpha d^beta f| / (A^|alpha| B^|beta| a_|alpha| b_|beta|),
// alpha and beta both capped at M.
NormReport gs_norm_moment(const GridFunction& f, const DefiningSequence& a,
                          const DefiningSequence& b, double A, double B, int M);

// sup over |beta| <= M and grid x of |d^beta h(x)| / (w_a(|x|/A) B^|beta| b_|beta|);
// for a constant-one decay sequence the sup is restricted to |x| <= A.
NormReport e_norm(const GridFunction& h, const DefiningSequence& a,
                  const DefiningSequence& b, double A, double B, int M);

struct ClassConstants {
    double A;
    double B;
    double norm_value;
};

// Smallest (A, B) in lexicographic order on geometric grids over [2^-6, 2^6]
// (quarter-octave steps) with gs_norm <= target; a_max caps the decay-constant
// grid (sub-box caps make the fit demand decay the box can witness). nullopt
// when no grid point qualifies.
std::optional<ClassConstants>
fit_class_constants(const GridFunction& f, const DefiningSequence& a,
                    const DefiningSequence& b, int M, double target,
                    double a_max = 64.0);

} // namespace moyalkit
