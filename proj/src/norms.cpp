#include "moyalkit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace moyalkit {

namespace {

constexpr double kSupportViolationEps = 1e-12;
const double kNegInf = -std::numeric_limits<double>::infinity();

// Per derivative order s <= M and per ring r (max-norm shell |x| = r dx),
// the largest |d^beta f| with |beta| = s. The norm of (2.9)/(2.14) depends on
// x only through |x| and on beta only through |beta|, so this table is the
// whole reduction.
struct RingTable {
    int M = 0;
    int rings = 0;           // N/2 + 1
    double spacing = 0.0;
    std::vector<double> max_abs; // [s * rings + r]
    double global_max = 0.0;

    double at(int s, int r) const {
        return max_abs[static_cast<std::size_t>(s) * rings + r];
    }
};

std::vector<std::vector<int>> multi_indices(int dim, int order) {
    std::vector<std::vector<int>> out;
    if (dim == 1) {
        out.push_back({order});
        return out;
    }
    for (int i = 0; i <= order; ++i) out.push_back({i, order - i});
    return out;
}

// Fornberg's algorithm: weights reproducing the m-th derivative at x0 from
// samples at the nodes; exact on polynomials up to degree nodes.size() - 1.
std::vector<double> fornberg_weights(double x0, const std::vector<double>& x,
                                     int m) {
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> c(
        x.size(), std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                              c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) / c2;
                c[static_cast<std::size_t>(i)][0] =
                    -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) / c3;
            c[static_cast<std::size_t>(j)][0] =
                c4 * c[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        w[j] = c[j][static_cast<std::size_t>(m)];
    return w;
}

constexpr int kStencil = 11;

// High-order finite differences along one axis (windows shifted at the
// edges). Used for inputs without boundary decay, where the spectral route
// is invalid; exact on polynomials up to degree 10.
void fd_axis(std::vector<cxd>& data, int n0, int n1, int axis, int m,
             double spacing) {
    if (m == 0) return;
    const int n = axis == 0 ? n0 : n1;
    const int width = std::min(kStencil, n);
    // weights per window offset r = i - window_lo
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(width));
    std::vector<double> nodes(static_cast<std::size_t>(width));
    for (int r = 0; r < width; ++r) {
        for (int j = 0; j < width; ++j) nodes[static_cast<std::size_t>(j)] = j * spacing;
        weights[static_cast<std::size_t>(r)] =
            fornberg_weights(r * spacing, nodes, m);
    }
    std::vector<cxd> line(static_cast<std::size_t>(n));
    const int lines = axis == 0 ? n1 : n0;
    for (int l = 0; l < lines; ++l) {
        auto get = [&](int i) -> cxd& {
            return axis == 0 ? data[static_cast<std::size_t>(i) * n1 + l]
                             : data[static_cast<std::size_t>(l) * n1 + i];
        };
        for (int i = 0; i < n; ++i) line[static_cast<std::size_t>(i)] = get(i);
        for (int i = 0; i < n; ++i) {
            int lo = std::clamp(i - width / 2, 0, n - width);
            const auto& w = weights[static_cast<std::size_t>(i - lo)];
            cxd acc(0.0, 0.0);
            for (int j = 0; j < width; ++j)
                acc += w[static_cast<std::size_t>(j)] *
                       line[static_cast<std::size_t>(lo + j)];
            get(i) = acc;
        }
    }
}

// Spectral derivative when the input decays at the boundary, finite
// differences otherwise.
GridFunction derivative_any(const GridFunction& f, const std::vector<int>& beta,
                            bool spectral) {
    if (spectral) return derivative(f, beta);
    int order = 0;
    for (int b : beta) order += b;
    if (order > kMaxDerivativeOrder)
        throw OrderTooHigh("derivative order exceeds cap");
    GridFunction out = f;
    int n0 = f.spec.n;
    int n1 = f.spec.dim == 2 ? f.spec.n : 1;
    for (int axis = 0; axis < f.spec.dim; ++axis)
        fd_axis(out.samples, n0, n1, axis, beta[static_cast<std::size_t>(axis)],
                f.spec.spacing());
    return out;
}

RingTable build_ring_table(const GridFunction& f, int M) {
    RingTable table;
    table.M = M;
    table.rings = f.spec.n / 2 + 1;
    table.spacing = f.spec.spacing();
    table.max_abs.assign(static_cast<std::size_t>(M + 1) * table.rings, 0.0);
    const int n = f.spec.n;
    const int half = n / 2;
    const bool spectral = f.boundary_decay_ok();
    for (int s = 0; s <= M; ++s) {
        double* row = table.max_abs.data() + static_cast<std::size_t>(s) * table.rings;
        for (const auto& beta : multi_indices(f.spec.dim, s)) {
            GridFunction d = derivative_any(f, beta, spectral);
            if (f.spec.dim == 1) {
                for (int i = 0; i < n; ++i) {
                    int r = std::abs(i - half);
                    row[r] = std::max(row[r], std::abs(d.at(i)));
                }
            } else {
                for (int i = 0; i < n; ++i) {
                    int ri = std::abs(i - half);
                    for (int j = 0; j < n; ++j) {
                        int r = std::max(ri, std::abs(j - half));
                        row[r] = std::max(row[r], std::abs(d.at(i, j)));
                    }
                }
            }
        }
    }
    for (double v : table.max_abs) table.global_max = std::max(table.global_max, v);
    return table;
}

struct NormOutcome {
    double log_value = kNegInf;
    bool infinite = false;
    bool support_violation = false;
    bool weight_truncated = false;
    int peak_weight_argmax = 0;
};

// Shared evaluation core. gs: sup w_a(|x|/A) |d f| / (B^s b_s);
// e: sup |d f| / (w_a(|x|/A) B^s b_s) with the constant-one decay sequence
// restricting the sup to |x| <= A.
NormOutcome evaluate_from_rings(const RingTable& table, const DefiningSequence& a,
                                const DefiningSequence& b, double A, double B,
                                bool e_form) {
    NormOutcome out;
    const double log_B = std::log(B);
    const double support_cut = kSupportViolationEps * table.global_max;
    int peak = 0;
    for (int r = 0; r < table.rings; ++r) {
        // rings carrying no numerical mass contribute nothing; skipping them
        // keeps the weight evaluable at small A where the sup index explodes
        double ring_mass = 0.0;
        for (int s = 0; s <= table.M; ++s)
            ring_mass = std::max(ring_mass, table.at(s, r));
        if (ring_mass <= support_cut) continue;
        const double t = r * table.spacing / A;
        double log_w = 0.0;
        bool w_inf = false;
        if (a.kind == SeqKind::constant_one) {
            w_inf = t > 1.0;
        } else {
            WeightEvaluation ev;
            try {
                ev = weight(a, t);
            } catch (const TruncationError&) {
                out.weight_truncated = true;
                return out;
            }
            log_w = ev.log_value;
            peak = std::max(peak, ev.argmax_n);
        }
        for (int s = 0; s <= table.M; ++s) {
            double v = table.at(s, r);
            if (v <= 0.0) continue;
            if (w_inf) {
                if (e_form) continue; // defined only for |x| <= A
                if (v > support_cut) {
                    out.infinite = true;
                    out.support_violation = true;
                    return out;
                }
                continue;
            }
            double term = std::log(v) - s * log_B - b.log_a(s) +
                          (e_form ? -log_w : log_w);
            if (term > out.log_value) {
                out.log_value = term;
                out.peak_weight_argmax = peak;
            }
        }
    }
    return out;
}

NormReport make_report(NormKind kind, const GridFunction& f, double A, double B,
                       int M, const NormOutcome& outcome) {
    NormReport rep;
    rep.kind = kind;
    rep.A = A;
    rep.B = B;
    rep.M = M;
    rep.grid = f.spec;
    rep.infinite = outcome.infinite;
    rep.support_violation = outcome.support_violation;
    rep.peak_weight_argmax = outcome.peak_weight_argmax;
    if (outcome.infinite) {
        rep.value = std::numeric_limits<double>::infinity();
        rep.log_value = std::numeric_limits<double>::infinity();
    } else {
        rep.log_value = outcome.log_value;
        rep.value = std::isinf(outcome.log_value) && outcome.log_value < 0
                        ? 0.0
                        : std::exp(outcome.log_value);
    }
    rep.notes = "truncated estimator: grid extent " +
                std::to_string(f.spec.half_width) + ", derivative order <= " +
                std::to_string(M) + "; lower bound of the sup";
    return rep;
}

void check_norm_args(double A, double B, int M) {
    if (!(A > 0.0) || !(B > 0.0))
        throw ConditionViolation("norm constants A, B must be positive");
    if (M < 0 || M > kMaxDerivativeOrder)
        throw OrderTooHigh("derivative order cap M out of range");
}

} // namespace

NormReport gs_norm(const GridFunction& f, const DefiningSequence& a,
                   const DefiningSequence& b, double A, double B, int M) {
    check_norm_args(A, B, M);
    RingTable table = build_ring_table(f, M);
    NormOutcome outcome = evaluate_from_rings(table, a, b, A, B, false);
    if (outcome.weight_truncated)
        throw TruncationError("gs_norm: weight sup truncated; enlarge the "
                              "sequence N_max or the constant A");
    return make_report(NormKind::s_norm_weighted, f, A, B, M, outcome);
}

NormReport e_norm(const GridFunction& h, const DefiningSequence& a,
                  const DefiningSequence& b, double A, double B, int M) {
    check_norm_args(A, B, M);
    RingTable table = build_ring_table(h, M);
    NormOutcome outcome = evaluate_from_rings(table, a, b, A, B, true);
    if (outcome.weight_truncated)
        throw TruncationError("e_norm: weight sup truncated; enlarge the "
                              "sequence N_max or the constant A");
    return make_report(NormKind::e_norm, h, A, B, M, outcome);
}

NormReport gs_norm_moment(const GridFunction& f, const DefiningSequence& a,
                          const DefiningSequence& b, double A, double B, int M) {
    check_norm_args(A, B, M);
    const int n = f.spec.n;
    double best = kNegInf;
    const bool spectral = f.boundary_decay_ok();
    for (int s = 0; s <= M; ++s) {
        for (const auto& beta : multi_indices(f.spec.dim, s)) {
            GridFunction d = derivative_any(f, beta, spectral);
            for (int al = 0; al <= M; ++al) {
                double denom = al * std::log(A) + a.log_a(al) +
                               s * std::log(B) + b.log_a(s);
                for (const auto& alpha : multi_indices(f.spec.dim, al)) {
                    if (f.spec.dim == 1) {
                        for (int i = 0; i < n; ++i) {
                            double v = std::abs(d.at(i));
                            if (v <= 0.0) continue;
                            double x = std::abs(f.spec.point(i));
                            double lx = alpha[0] == 0
                                            ? 0.0
                                            : alpha[0] * (x > 0 ? std::log(x) : kNegInf);
                            best = std::max(best, std::log(v) + lx - denom);
                        }
                    } else {
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j) {
                                double v = std::abs(d.at(i, j));
                                if (v <= 0.0) continue;
                                double x1 = std::abs(f.spec.point(i));
                                double x2 = std::abs(f.spec.point(j));
                                double lx = 0.0;
                                if (alpha[0] > 0)
                                    lx += alpha[0] * (x1 > 0 ? std::log(x1) : kNegInf);
                                if (alpha[1] > 0)
                                    lx += alpha[1] * (x2 > 0 ? std::log(x2) : kNegInf);
                                if (std::isinf(lx)) continue;
                                best = std::max(best, std::log(v) + lx - denom);
                            }
                    }
                }
            }
        }
    }
    NormOutcome outcome;
    outcome.log_value = best;
    return make_report(NormKind::s_norm, f, A, B, M, outcome);
}

std::optional<ClassConstants>
fit_class_constants(const GridFunction& f, const DefiningSequence& a,
                    const DefiningSequence& b, int M, double target,
                    double a_max) {
    check_norm_args(1.0, 1.0, M);
    if (!(target > 0.0))
        throw ConditionViolation("fit target must be positive");
    RingTable table = build_ring_table(f, M);
    const double log_target = std::log(target);
    std::vector<double> grid;
    for (int j = -24; j <= 24; ++j) grid.push_back(std::pow(2.0, j / 4.0));
    for (double A : grid) {
        if (A > a_max) break;
        for (double B : grid) {
            NormOutcome outcome = evaluate_from_rings(table, a, b, A, B, false);
            // A truncated weight under-estimates the norm; refuse to certify.
            if (outcome.weight_truncated || outcome.infinite) continue;
            if (outcome.log_value <= log_target)
                return ClassConstants{A, B, std::exp(outcome.log_value)};
        }
    }
    return std::nullopt;
}

} // namespace moyalkit
