#include "moyalkit/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "moyalkit/report.hpp"

namespace moyalkit {

namespace {

constexpr double kFeasibleCap = 1e9;      // largest admissible fitted K or C
constexpr double kConvexitySlack = 1e-12; // roundoff slack for log comparisons
constexpr double kTailGrowthFactor = 1.1; // subordination surrogate threshold

double log_gevrey(double alpha, int n) {
    // n^{alpha n} with 0^0 = 1
    return n == 0 ? 0.0 : alpha * n * std::log(static_cast<double>(n));
}

void check_conditions(const DefiningSequence& seq) {
    const auto& la = seq.log_values;
    const int n_max = seq.n_max;
    if (la[0] != 0.0)
        throw ConditionViolation("normalization a_0 = 1 fails");
    for (int n = 0; n < n_max; ++n)
        if (la[n + 1] < la[n] - kConvexitySlack)
            throw ConditionViolation("monotonicity a_{n+1} >= a_n fails at n = " +
                                     std::to_string(n));
    for (int n = 1; n < n_max; ++n)
        if (2.0 * la[n] > la[n - 1] + la[n + 1] + kConvexitySlack)
            throw ConditionViolation(
                "log-convexity a_n^2 <= a_{n-1} a_{n+1} fails at n = " +
                std::to_string(n));
    for (int k = 0; k <= n_max; ++k)
        for (int n = 0; k + n <= n_max; ++n)
            if (la[k] + la[n] > la[k + n] + kConvexitySlack)
                throw ConditionViolation(
                    "product bound a_k a_n <= a_{k+n} fails at (k, n) = (" +
                    std::to_string(k) + ", " + std::to_string(n) + ")");
}

std::vector<double> growth_base_grid(const DefiningSequence& seq) {
    std::vector<double> grid;
    if (seq.kind == SeqKind::gevrey) {
        if (seq.alpha == 0.0) return {1.0};
        for (int j = 0; j <= 16; ++j)
            grid.push_back(std::pow(2.0, seq.alpha) *
                           std::exp(seq.alpha * j / 8.0));
        return grid;
    }
    if (seq.kind == SeqKind::constant_one) return {1.0};
    for (int j = 0; j <= 32; ++j) grid.push_back(std::pow(1.25, j));
    return grid;
}

} // namespace

const char* to_string(SeqKind kind) {
    switch (kind) {
        case SeqKind::gevrey: return "gevrey";
        case SeqKind::constant_one: return "constant_one";
        case SeqKind::explicit_list: return "explicit";
    }
    return "?";
}

double DefiningSequence::a(int n) const { return std::exp(log_a(n)); }

DefiningSequence make_sequence(SeqKind kind, double alpha, int n_max) {
    if (n_max < 32)
        throw ConditionViolation("N_max must be at least 32");
    DefiningSequence seq;
    seq.kind = kind;
    seq.n_max = n_max;
    seq.log_values.resize(static_cast<std::size_t>(n_max) + 1, 0.0);
    switch (kind) {
        case SeqKind::gevrey:
            if (alpha < 0.0)
                throw ConditionViolation("gevrey order must be nonnegative");
            seq.alpha = alpha;
            for (int n = 0; n <= n_max; ++n)
                seq.log_values[static_cast<std::size_t>(n)] = log_gevrey(alpha, n);
            break;
        case SeqKind::constant_one:
            break;
        case SeqKind::explicit_list:
            throw ConditionViolation(
                "explicit sequences take the value-list overload");
    }
    check_conditions(seq);
    // sampled surrogate of the limit a_n^{1/n} -> inf:
    // a_{N}^{1/N} must exceed a_{N/2}^{2/N}
    if (kind == SeqKind::gevrey && alpha > 0.0) {
        if (seq.log_a(n_max) <= 2.0 * seq.log_a(n_max / 2))
            throw ConditionViolation(
                "sampled growth surrogate a_N^{1/N} > a_{N/2}^{2/N} fails");
    }
    fit_growth_constants(seq);
    return seq;
}

DefiningSequence make_sequence(const std::vector<double>& values) {
    if (values.size() < 33)
        throw ConditionViolation("N_max must be at least 32");
    DefiningSequence seq;
    seq.kind = SeqKind::explicit_list;
    seq.n_max = static_cast<int>(values.size()) - 1;
    seq.log_values.reserve(values.size());
    for (double v : values) {
        if (!(v > 0.0))
            throw ConditionViolation("sequence values must be positive");
        seq.log_values.push_back(std::log(v));
    }
    if (values[0] != 1.0) throw ConditionViolation("a_0 must equal 1");
    seq.log_values[0] = 0.0;
    check_conditions(seq);
    fit_growth_constants(seq);
    return seq;
}

GrowthConstants fit_growth_constants(DefiningSequence& seq) {
    const auto& la = seq.log_values;
    const int n_max = seq.n_max;
    double best_log_k = std::numeric_limits<double>::infinity();
    double best_h = 0.0;
    for (double h : growth_base_grid(seq)) {
        const double log_h = std::log(h);
        double log_k = 0.0; // the (k, n) = (0, 0) pair forces K >= 1
        for (int k = 0; k <= n_max; ++k)
            for (int n = k; k + n <= n_max; ++n) {
                double r = la[k + n] - la[k] - la[n] - (k + n) * log_h;
                log_k = std::max(log_k, r);
            }
        if (log_k < best_log_k - 1e-9) {
            best_log_k = log_k;
            best_h = h;
        }
    }
    if (!(std::exp(best_log_k) <= kFeasibleCap))
        throw NoFeasibleConstant(
            "no grid base H admits K <= 1e9; sequence violates the growth "
            "condition on this range");
    seq.growth_base = best_h;
    seq.growth_constant = std::exp(best_log_k);
    return {seq.growth_base, seq.growth_constant};
}

double WeightEvaluation::value() const {
    if (infinite) return std::numeric_limits<double>::infinity();
    return std::exp(log_value);
}

WeightEvaluation weight(const DefiningSequence& seq, double t) {
    if (t < 0.0) throw ConditionViolation("weight argument must be >= 0");
    WeightEvaluation ev;
    ev.t = t;
    if (seq.kind == SeqKind::constant_one) {
        // sup_n t^n: 1 on [0, 1], infinite beyond. Kept as an explicit marker;
        // downstream norms use 1/w as the support indicator of [0, 1].
        ev.infinite = t > 1.0;
        ev.log_value = 0.0;
        ev.argmax_n = 0;
        return ev;
    }
    if (t == 0.0) {
        ev.log_value = 0.0;
        ev.argmax_n = 0;
        return ev;
    }
    const double log_t = std::log(t);
    // log-convexity makes the increments log a_n - log a_{n-1} nondecreasing,
    // so the term sequence n log t - log a_n rises until the increment passes
    // log t. Ties stop at the smaller index.
    int lo = 0, hi = seq.n_max; // argmax in [lo, hi]
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        double inc = seq.log_a(mid + 1) - seq.log_a(mid);
        if (inc >= log_t)
            hi = mid;
        else
            lo = mid + 1;
    }
    ev.argmax_n = lo;
    ev.log_value = lo * log_t - seq.log_a(lo);
    if (ev.log_value < 0.0) { // n = 0 term is always 1
        ev.log_value = 0.0;
        ev.argmax_n = 0;
    }
    if (ev.argmax_n == seq.n_max)
        throw TruncationError("weight sup truncated at N_max = " +
                              std::to_string(seq.n_max) + " for t = " +
                              std::to_string(t) + "; enlarge N_max");
    return ev;
}

WeightInequalityReport
check_weight_inequalities(const DefiningSequence& seq,
                          const std::vector<double>& t_samples) {
    WeightInequalityReport rep;
    const double inf = std::numeric_limits<double>::infinity();
    rep.margin_split = inf;
    rep.margin_midpoint = inf;
    rep.margin_square = inf;
    rep.margin_moment = inf;
    const double log_k = std::log(seq.growth_constant);
    const double h = seq.growth_base;
    static const double a_grid[] = {0.5, 1.0, 2.0, 4.0};

    auto log_w = [&](double t) {
        WeightEvaluation ev = weight(seq, t);
        if (ev.infinite) return inf;
        return ev.log_value;
    };
    auto track = [&](double& slot, double margin) {
        slot = std::min(slot, margin);
        ++rep.checks;
        if (margin < -rep.tolerance) ++rep.violations;
    };

    for (double t1 : t_samples)
        for (double t2 : t_samples) {
            for (double a1 : a_grid)
                for (double a2 : a_grid) {
                    double lhs = log_w((t1 + t2) / (a1 + a2));
                    double rhs = log_w(t1 / a1) + log_w(t2 / a2);
                    if (std::isinf(rhs)) continue; // constant_one out of range
                    track(rep.margin_split, rhs - lhs);
                }
            double lhs = log_w((t1 + t2) / 2.0);
            double rhs = log_w(t1) + log_w(t2);
            if (!std::isinf(rhs)) track(rep.margin_midpoint, rhs - lhs);
        }
    for (double t : t_samples) {
        double lw = log_w(t);
        double lwh = log_w(h * t);
        if (std::isinf(lwh)) continue;
        track(rep.margin_square, log_k + lwh - 2.0 * lw);
        for (int n = 0; n <= 8; ++n) {
            double lhs = (t > 0.0 ? n * std::log(t) : (n == 0 ? 0.0 : -inf)) + lw;
            double rhs = log_k + seq.log_a(n) + lwh;
            track(rep.margin_moment, rhs - lhs);
        }
    }
    rep.pass = rep.violations == 0;
    return rep;
}

SubordinationResult check_subordination(const DefiningSequence& b,
                                        const DefiningSequence& a) {
    if (a.n_max != b.n_max)
        throw ConditionViolation("subordination check needs a shared N_max");
    SubordinationResult res;
    const int n_max = a.n_max;
    auto tail_ratio = [&](int n) {
        return std::exp((b.log_a(n) - a.log_a(n)) / n);
    };
    res.tail_ratio_half = tail_ratio(n_max / 2);
    res.tail_ratio_full = tail_ratio(n_max);
    // b_n <= C L^n a_n for all n is an asymptotic statement; on a finite range
    // it is always satisfiable with a large enough L. Growth of
    // (b_n/a_n)^{1/n} across the tail is the observable failure signature.
    if (res.tail_ratio_full > kTailGrowthFactor * res.tail_ratio_half) {
        res.holds = false;
        res.reason = "ratio (b_n/a_n)^{1/n} grows across the tail; no constants "
                     "(C, L) can bound it";
        return res;
    }
    double best_log_c = std::numeric_limits<double>::infinity();
    double best_l = 0.0;
    for (int j = 0; j <= 32; ++j) {
        double l = std::pow(1.25, j);
        double log_l = std::log(l);
        double log_c = 0.0; // n = 0 forces C >= 1
        for (int n = 0; n <= n_max; ++n)
            log_c = std::max(log_c, b.log_a(n) - a.log_a(n) - n * log_l);
        if (log_c < best_log_c - 1e-9) {
            best_log_c = log_c;
            best_l = l;
        }
    }
    if (!(std::exp(best_log_c) <= kFeasibleCap)) {
        res.holds = false;
        res.reason = "no grid base L admits C <= 1e9";
        return res;
    }
    res.holds = true;
    res.fit = SubordinationFit{std::exp(best_log_c), best_l};
    return res;
}

std::string sequence_to_json(const DefiningSequence& seq) {
    JsonWriter w;
    w.begin_object();
    w.field("kind", to_string(seq.kind));
    w.field("alpha", seq.alpha);
    w.key("N_max").value(seq.n_max);
    w.field("H", seq.growth_base);
    w.field("K", seq.growth_constant);
    if (seq.kind == SeqKind::explicit_list) {
        w.key("values").begin_array();
        for (int n = 0; n <= seq.n_max; ++n) w.value(seq.a(n));
        w.end_array();
    }
    w.end_object();
    return w.str();
}

DefiningSequence sequence_from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    std::string kind = doc.at("kind").get<std::string>();
    int n_max = doc.at("N_max").get<int>();
    if (kind == "gevrey")
        return make_sequence(SeqKind::gevrey, doc.at("alpha").get<double>(),
                             n_max);
    if (kind == "constant_one")
        return make_sequence(SeqKind::constant_one, 0.0, n_max);
    if (kind == "explicit")
        return make_sequence(doc.at("values").get<std::vector<double>>());
    throw ConditionViolation("unknown sequence kind '" + kind + "'");
}

} // namespace moyalkit
