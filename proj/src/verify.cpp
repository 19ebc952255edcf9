#include "moyalkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "moyalkit/analytic.hpp"
#include "moyalkit/multipliers.hpp"
#include "moyalkit/norms.hpp"
#include "moyalkit/quantize.hpp"
#include "moyalkit/report.hpp"
#include "moyalkit/sequences.hpp"
#include "moyalkit/star.hpp"

namespace moyalkit {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

double rel_sup(const GridFunction& got, const GridFunction& want) {
    double scale = want.max_abs();
    if (scale == 0.0) return got.max_abs();
    return sup_distance(got, want) / scale;
}

struct Check {
    int id;
    const char* suite;
    const char* name;
    double tolerance;
    double budget_seconds; // <= 0 means unbudgeted
    std::function<std::pair<double, std::string>()> body;
};

CriterionResult run_check(const Check& check) {
    CriterionResult res;
    res.id = check.id;
    res.suite = check.suite;
    res.name = check.name;
    res.tolerance = check.tolerance;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [margin, detail] = check.body();
        res.margin = margin;
        res.detail = detail;
        res.passed = margin <= check.tolerance;
    } catch (const std::exception& e) {
        res.margin = std::numeric_limits<double>::infinity();
        res.detail = std::string("exception: ") + e.what();
        res.passed = false;
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (check.budget_seconds > 0.0 && res.seconds > check.budget_seconds) {
        res.passed = false;
        res.detail += fmt(" [over the %.0fs runtime budget]",
                          check.budget_seconds);
    }
    return res;
}

struct Context {
    RunConfig cfg;
    GridSpec phase;
    GridSpec line;

    explicit Context(const RunConfig& config) : cfg(config) {
        phase = GridSpec{2, config.grid_n, config.grid_half_width};
        line = GridSpec{1, config.grid_n, config.grid_half_width};
    }

    AnalyticFunction draw_gaussian(std::mt19937_64& rng) const {
        // centers stay inside the safe box |c| <= L/4 so decay survives
        std::uniform_real_distribution<double> center(-2.0, 2.0);
        std::uniform_real_distribution<double> width(0.5, 1.3);
        return isotropic_gaussian(2, cxd(1.0, 0.0), {center(rng), center(rng)},
                                  width(rng));
    }
};

// ---------------------------------------------------------------- sequences

std::pair<double, std::string> crit_sequence_conditions(const Context&) {
    double worst = -std::numeric_limits<double>::infinity();
    std::string detail;
    for (double alpha : {0.5, 1.0}) {
        DefiningSequence seq = make_sequence(SeqKind::gevrey, alpha, 64);
        const double log_h = std::log(seq.growth_base);
        const double log_k = std::log(seq.growth_constant);
        for (int k = 0; k <= seq.n_max; ++k)
            for (int n = 0; k + n <= seq.n_max; ++n)
                worst = std::max(worst, seq.log_a(k + n) - seq.log_a(k) -
                                            seq.log_a(n) - log_k -
                                            (k + n) * log_h);
        detail += fmt("alpha=%.1f: H=%.6g K=%.6g; ", alpha, seq.growth_base,
                      seq.growth_constant);
    }
    return {worst, detail + "worst (2.x) residual in logs"};
}

std::pair<double, std::string> crit_weight_inequalities(const Context&) {
    const std::vector<double> samples{0.0, 0.1, 1.0, 5.0, 20.0};
    double worst = -std::numeric_limits<double>::infinity();
    int violations = 0;
    for (double alpha : {0.5, 1.0}) {
        DefiningSequence seq = make_sequence(SeqKind::gevrey, alpha, 1024);
        WeightInequalityReport rep = check_weight_inequalities(seq, samples);
        violations += rep.violations;
        worst = std::max({worst, -rep.margin_split, -rep.margin_midpoint,
                          -rep.margin_square, -rep.margin_moment});
    }
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    WeightInequalityReport rep1 =
        check_weight_inequalities(ones, {0.0, 0.25, 0.5, 1.0});
    violations += rep1.violations;
    return {worst, fmt("violations=%d, worst log-margin deficit=%.3e",
                       violations, worst)};
}

std::pair<double, std::string> inv_weight_monotone(const Context&) {
    double worst = -std::numeric_limits<double>::infinity();
    for (double alpha : {0.5, 1.0}) {
        DefiningSequence seq = make_sequence(SeqKind::gevrey, alpha, 1024);
        double prev = 0.0;
        for (int i = 0; i <= 256; ++i) {
            double t = 40.0 * i / 256.0;
            WeightEvaluation ev = weight(seq, t);
            worst = std::max(worst, -ev.log_value); // w >= 1
            if (i > 0) worst = std::max(worst, prev - ev.log_value);
            prev = ev.log_value;
        }
        // growth beats t^m for every m <= 8 once the sup index has room:
        // for alpha = 1 that needs t/e > 8 log t (t = 150); for alpha = 1/2
        // the quadratic log-growth already dominates at t = 40
        const double t_star = alpha == 1.0 ? 150.0 : 40.0;
        WeightEvaluation far = weight(seq, t_star);
        for (int m = 0; m <= 8; ++m)
            worst = std::max(worst, m * std::log(t_star) - far.log_value);
    }
    return {worst, "monotonicity, w >= 1 and super-polynomial growth margins"};
}

std::pair<double, std::string> inv_subordination_examples(const Context&) {
    DefiningSequence g1 = make_sequence(SeqKind::gevrey, 1.0, 64);
    DefiningSequence g_half = make_sequence(SeqKind::gevrey, 0.5, 64);
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    double bad = 0.0;
    SubordinationResult r1 = check_subordination(ones, g1);
    if (!(r1.holds && r1.fit && r1.fit->constant == 1.0 && r1.fit->base == 1.0))
        bad += 1.0;
    SubordinationResult r2 = check_subordination(g1, g1);
    if (!(r2.holds && r2.fit && r2.fit->constant == 1.0 && r2.fit->base == 1.0))
        bad += 1.0;
    SubordinationResult r3 = check_subordination(g1, g_half);
    if (r3.holds) bad += 1.0;
    SubordinationResult r4 = check_subordination(g_half, g1);
    if (!r4.holds) bad += 1.0;
    return {bad, fmt("tail ratios for the failing pair: %.3f -> %.3f",
                     r3.tail_ratio_half, r3.tail_ratio_full)};
}

std::pair<double, std::string> inv_constant_one_oracle(const Context&) {
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    double worst = 0.0;
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
        WeightEvaluation ev = weight(ones, t);
        // brute-force sup over n <= N_max
        double scan = 0.0;
        for (int n = 0; n <= ones.n_max; ++n)
            scan = std::max(scan, std::pow(t, n));
        worst = std::max(worst, std::abs(ev.value() - scan));
    }
    WeightEvaluation beyond = weight(ones, 2.0);
    if (!beyond.infinite) worst = std::max(worst, 1.0);
    return {worst, "closed form vs sup-scan on the finite range"};
}

// ------------------------------------------------------------------ gridfn

std::pair<double, std::string> crit_fourier_roundtrip(const Context& ctx) {
    AnalyticFunction g2 = isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 0.5);
    GridFunction f2 = sample(g2, ctx.phase);
    GridFunction f2_hat = fourier(f2, FourierDirection::forward);
    GridFunction expect2 = sample(g2, f2_hat.spec); // self-dual at lambda = 1/2
    double self_dual = rel_sup(f2_hat, expect2);
    GridFunction back = fourier(f2_hat, FourierDirection::backward);
    double roundtrip = rel_sup(back, f2);
    AnalyticFunction g1 = isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 0.5);
    GridFunction f1 = sample(g1, ctx.line);
    GridFunction f1_hat = fourier(f1, FourierDirection::forward);
    double self_dual_1d = rel_sup(f1_hat, sample(g1, f1_hat.spec));
    double margin = std::max({self_dual, roundtrip, self_dual_1d});
    return {margin, fmt("self-dual 2d %.2e, roundtrip %.2e, 1d %.2e", self_dual,
                        roundtrip, self_dual_1d)};
}

std::pair<double, std::string> inv_parseval(const Context& ctx) {
    AnalyticFunction g = isotropic_gaussian(2, cxd(0.7, 0.4), {0.9, -0.4}, 1.1);
    GridFunction f = sample(g, ctx.phase);
    GridFunction fh = fourier(f, FourierDirection::forward);
    double a = grid_l2_norm(f);
    double b = grid_l2_norm(fh);
    return {std::abs(a - b) / a, fmt("L2 %.12e vs %.12e", a, b)};
}

std::pair<double, std::string> inv_derivative_forms(const Context&) {
    GridSpec spec{1, 128, 10.0};
    AnalyticFunction g = isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0);
    GridFunction f = sample(g, spec);
    GridFunction df = derivative(f, {1});
    GridFunction expect = make_grid_function(spec);
    for (int i = 0; i < spec.n; ++i) {
        double x = spec.point(i);
        expect.at(i) = -2.0 * x * std::exp(-x * x);
    }
    double first = sup_distance(df, expect) / expect.max_abs();
    // second derivative of the Gaussian ground state: (q^2 - 1) psi0 at hbar=1
    GridFunction psi0 = hermite_state(0, 1.0, spec);
    GridFunction d2 = derivative(psi0, {2});
    GridFunction want = make_grid_function(spec);
    for (int i = 0; i < spec.n; ++i) {
        double q = spec.point(i);
        want.at(i) = (q * q - 1.0) * psi0.at(i);
    }
    double second = sup_distance(d2, want) / want.max_abs();
    // identity at beta = 0
    GridFunction same = derivative(f, {0});
    double zero = sup_distance(same, f);
    double margin = std::max({first, second, zero});
    return {margin, fmt("d1 %.2e, d2 %.2e, d0 %.2e", first, second, zero)};
}

std::pair<double, std::string> inv_hermite_eigen(const Context& ctx) {
    double worst = 0.0;
    for (int k : {0, 1, 3, 6}) {
        GridFunction psi = hermite_state(k, 1.0, ctx.line);
        GridFunction psih = fourier(psi, FourierDirection::forward);
        GridFunction expect = hermite_state(k, 1.0, psih.spec);
        cxd phase = std::pow(cxd(0.0, -1.0), k);
        for (cxd& v : expect.samples) v *= phase;
        worst = std::max(worst, rel_sup(psih, expect));
        // L2 normalization on the grid
        worst = std::max(worst, std::abs(grid_l2_norm(psi) - 1.0));
    }
    return {worst, "transform eigenvectors (-i)^k and unit L2 norms"};
}

std::pair<double, std::string> inv_gs_norm_monotone(const Context& ctx) {
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    GridFunction f =
        sample(isotropic_gaussian(2, cxd(1.0, 0.0), {0.4, -0.2}, 1.0), ctx.phase);
    double worst = -1.0;
    double prev_a = std::numeric_limits<double>::infinity();
    for (double A : {1.0, 2.0, 4.0}) {
        double v = gs_norm(f, a, a, A, 2.0, 3).value;
        if (v > prev_a * (1.0 + 1e-12)) worst = std::max(worst, v / prev_a - 1.0);
        prev_a = v;
    }
    double prev_b = std::numeric_limits<double>::infinity();
    for (double B : {1.0, 2.0, 4.0}) {
        double v = gs_norm(f, a, a, 2.0, B, 3).value;
        if (v > prev_b * (1.0 + 1e-12)) worst = std::max(worst, v / prev_b - 1.0);
        prev_b = v;
    }
    double prev_m = 0.0;
    for (int M : {0, 2, 4}) {
        double v = gs_norm(f, a, a, 2.0, 2.0, M).value;
        if (v < prev_m * (1.0 - 1e-12)) worst = std::max(worst, 1.0 - v / prev_m);
        prev_m = v;
    }
    return {worst, "nonincreasing in A and B, nondecreasing in M"};
}

std::pair<double, std::string> inv_e_norm_leibniz(const Context& ctx) {
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    AnalyticFunction h = polynomial(
        1, {Monomial{{0}, cxd(1.0, 0.0)}, Monomial{{2}, cxd(1.0, 0.0)}});
    AnalyticFunction g = isotropic_gaussian(1, cxd(1.0, 0.0), {0.3}, 1.0);
    GridFunction hg = sample(h, ctx.line);
    GridFunction gg = sample(g, ctx.line);
    GridFunction prod = pointwise_product(hg, gg);
    const double A = 2.0, B = 2.0, B0 = 2.0;
    const int M = 3;
    double lhs = e_norm(prod, a, a, A, B + B0, M).log_value;
    double rhs = e_norm(hg, a, a, A, B, M).log_value +
                 gs_norm(gg, a, a, A, B0, M).log_value;
    return {lhs - rhs, fmt("log lhs %.6f vs log rhs %.6f", lhs, rhs)};
}

// ----------------------------------------------------------------- starprod

struct StarPairs {
    std::vector<GridFunction> f, g, direct, fourier_prod;
    std::vector<double> identity_margin; // per pair, both backends folded
};

StarPairs compute_star_pairs(const Context& ctx) {
    StarPairs out;
    std::mt19937_64 rng(ctx.cfg.seed);
    StarConfig direct_cfg{ctx.cfg.hbar, {}, StarBackend::direct_quadrature};
    StarConfig fourier_cfg{ctx.cfg.hbar, {}, StarBackend::fourier};
    for (int pair = 0; pair < 5; ++pair) {
        GridFunction f = sample(ctx.draw_gaussian(rng), ctx.phase);
        GridFunction g = sample(ctx.draw_gaussian(rng), ctx.phase);
        GridFunction d = moyal(f, g, direct_cfg);
        GridFunction w = moyal(f, g, fourier_cfg);
        cxd base = grid_integral(pointwise_product(f, g));
        double m = std::max(std::abs(grid_integral(d) - base),
                            std::abs(grid_integral(w) - base)) /
                   std::abs(base);
        out.identity_margin.push_back(m);
        out.f.push_back(std::move(f));
        out.g.push_back(std::move(g));
        out.direct.push_back(std::move(d));
        out.fourier_prod.push_back(std::move(w));
    }
    return out;
}

std::pair<double, std::string> crit_integral_identity(const StarPairs& pairs) {
    double worst = 0.0;
    for (double m : pairs.identity_margin) worst = std::max(worst, m);
    return {worst, fmt("worst relative defect over %zu seeded pairs, both "
                       "backends", pairs.identity_margin.size())};
}

std::pair<double, std::string> crit_backend_agreement(const StarPairs& pairs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.direct.size(); ++i)
        worst = std::max(worst, rel_sup(pairs.direct[i], pairs.fourier_prod[i]));
    return {worst, "sup-relative distance direct vs fourier"};
}

std::pair<double, std::string> crit_associativity(const Context& ctx) {
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.8, 0.3}, 1.0), ctx.phase);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.5, 0.6}, 0.8), ctx.phase);
    GridFunction h = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.2, -0.7}, 1.2), ctx.phase);
    StarConfig plain{ctx.cfg.hbar, {}, StarBackend::fourier};
    GridFunction left = moyal(moyal(f, g, plain), h, plain);
    GridFunction right = moyal(f, moyal(g, h, plain), plain);
    double plain_margin = rel_sup(left, right);
    StarConfig scfg{ctx.cfg.hbar, {0.0, 0.3, 0.3, 0.0}, StarBackend::fourier};
    GridFunction sleft = star_s(star_s(f, g, scfg), h, scfg);
    GridFunction sright = star_s(f, star_s(g, h, scfg), scfg);
    double s_margin = rel_sup(sleft, sright);
    return {std::max(plain_margin, s_margin),
            fmt("plain %.2e, S-ordered %.2e", plain_margin, s_margin)};
}

std::pair<double, std::string> crit_semiclassical(const Context& ctx) {
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {1.0, 0.5}, 1.0), ctx.phase);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.5, 0.8}, 0.9), ctx.phase);
    GridFunction base = pointwise_product(f, g);
    auto deviation = [&](double hbar) {
        StarConfig cfg{hbar, {}, StarBackend::fourier};
        return sup_distance(moyal(f, g, cfg), base);
    };
    double ratio = deviation(0.1) / deviation(0.2);
    return {std::abs(ratio - 0.5), fmt("deviation ratio %.4f", ratio)};
}

std::pair<double, std::string> crit_ground_state(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    GridFunction w0 = sample(isotropic_gaussian(2, cxd(1.0 / (kPi * hbar), 0.0),
                                                {0.0, 0.0}, 1.0 / hbar),
                             ctx.phase);
    StarConfig cfg{hbar, {}, StarBackend::direct_quadrature};
    GridFunction prod = moyal(w0, w0, cfg);
    // Analytic pin: radial Gaussians obey
    //   e^{-l|x|^2} * e^{-m|x|^2} = (1+lm hbar^2)^{-1}
    //                               exp(-(l+m)/(1+lm hbar^2) |x|^2),
    // so the normalized ground-state symbol reproduces itself with
    // c = 1/(2 pi hbar).
    GridFunction expect = w0;
    const double c = 1.0 / (2.0 * kPi * hbar);
    for (cxd& v : expect.samples) v *= c;
    return {rel_sup(prod, expect),
            fmt("c = 1/(2 pi hbar) = %.12g", c)};
}

std::pair<double, std::string> crit_symplectic_factorization(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.5, -0.3}, 0.8), ctx.phase);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.4, 0.4}, 0.9), ctx.phase);
    StarConfig cfg{hbar, {}, StarBackend::fourier};
    GridFunction reference = moyal(f, g, cfg);
    const double theta = 4.0 / hbar;
    const double prefactor = 1.0 / (kPi * hbar);
    GridFunction lhs = twisted_convolution(
        symplectic_fourier(f, hbar, SymplecticSign::standard), g, theta);
    for (cxd& v : lhs.samples) v *= prefactor;
    GridFunction rhs = twisted_convolution(
        f, symplectic_fourier(g, hbar, SymplecticSign::conjugate), theta);
    for (cxd& v : rhs.samples) v *= prefactor;
    double a = rel_sup(lhs, reference);
    double b = rel_sup(rhs, reference);
    return {std::max(a, b), fmt("left %.2e, right %.2e", a, b)};
}

std::pair<double, std::string> inv_twisted_gaussian_form(const Context& ctx) {
    const double lambda = 1.0, mu = 0.7, theta = ctx.cfg.hbar;
    GridFunction u = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, lambda), ctx.phase);
    GridFunction v = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, mu), ctx.phase);
    GridFunction got = twisted_convolution(u, v, theta);
    double amp = kPi / (lambda + mu);
    double rate = (lambda * mu + theta * theta / 16.0) / (lambda + mu);
    GridFunction expect = sample(
        isotropic_gaussian(2, cxd(amp, 0.0), {0.0, 0.0}, rate), ctx.phase);
    return {rel_sup(got, expect), "closed-form radial Gaussian pair"};
}

std::pair<double, std::string> inv_deformed_consistency(const Context& ctx) {
    GridFunction u = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.5, 0.1}, 1.0), ctx.phase);
    GridFunction v = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.2, 0.4}, 0.8), ctx.phase);
    StarConfig zero{ctx.cfg.hbar, {0.0, 0.0, 0.0, 0.0}, StarBackend::fourier};
    double s0 = rel_sup(deformed_convolution(u, v, zero),
                        twisted_convolution(u, v, ctx.cfg.hbar));
    // j_S intertwines the deformed and twisted convolutions
    StarConfig scfg{ctx.cfg.hbar, {0.0, 0.3, 0.3, 0.0}, StarBackend::fourier};
    auto j_s = [&](const GridFunction& x, double sign) {
        GridFunction out = x;
        for (int i = 0; i < ctx.phase.n; ++i) {
            double zq = ctx.phase.point(i);
            for (int j = 0; j < ctx.phase.n; ++j) {
                double zp = ctx.phase.point(j);
                double quad = 2.0 * 0.3 * zq * zp;
                out.at(i, j) *=
                    std::polar(1.0, sign * 0.25 * ctx.cfg.hbar * quad);
            }
        }
        return out;
    };
    GridFunction lhs = j_s(deformed_convolution(u, v, scfg), +1.0);
    GridFunction rhs =
        twisted_convolution(j_s(u, +1.0), j_s(v, +1.0), ctx.cfg.hbar);
    double inter = rel_sup(lhs, rhs);
    return {std::max(s0, inter), fmt("S=0 match %.2e, intertwine %.2e", s0, inter)};
}

std::pair<double, std::string> inv_conjugation(const Context& ctx) {
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(0.8, 0.3), {0.6, 0.2}, 1.0), ctx.phase);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, -0.2), {-0.3, 0.5}, 0.9), ctx.phase);
    StarConfig cfg{ctx.cfg.hbar, {}, StarBackend::fourier};
    GridFunction lhs = moyal(f, g, cfg);
    for (cxd& v : lhs.samples) v = std::conj(v);
    GridFunction fc = f, gc = g;
    for (cxd& v : fc.samples) v = std::conj(v);
    for (cxd& v : gc.samples) v = std::conj(v);
    GridFunction rhs = moyal(gc, fc, cfg);
    return {rel_sup(lhs, rhs), "conj(f * g) = conj(g) * conj(f)"};
}

std::pair<double, std::string> inv_degenerate_branches(const Context& ctx) {
    GridFunction u = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.4, -0.6}, 1.0), ctx.phase);
    GridFunction v = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.5, 0.2}, 0.7), ctx.phase);
    StarConfig zero{0.0, {}, StarBackend::fourier};
    double m1 = sup_distance(moyal(u, v, zero), pointwise_product(u, v));
    StarConfig zs{0.0, {0.0, 0.3, 0.3, 0.0}, StarBackend::fourier};
    double m2 = sup_distance(star_s(u, v, zs), pointwise_product(u, v));
    // the twisted phase vanishes at the center point
    GridFunction tw = twisted_convolution(u, v, ctx.cfg.hbar);
    GridFunction plain = twisted_convolution(u, v, 0.0);
    int c = ctx.phase.n / 2;
    double m3 = std::abs(tw.at(c, c) - plain.at(c, c)) / std::abs(plain.at(c, c));
    return {std::max({m1, m2, m3}),
            fmt("hbar=0 moyal %.2e, star_s %.2e, center identity %.2e", m1, m2,
                m3)};
}

std::pair<double, std::string> inv_symplectic_involution(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.5, -0.2}, 1.0), ctx.phase);
    GridFunction twice = symplectic_fourier(
        symplectic_fourier(f, hbar, SymplecticSign::standard), hbar,
        SymplecticSign::standard, Guard::permissive);
    double involution = rel_sup(twice, f);
    // conjugate after standard is the parity operator
    GridFunction mixed = symplectic_fourier(
        symplectic_fourier(f, hbar, SymplecticSign::standard), hbar,
        SymplecticSign::conjugate, Guard::permissive);
    GridFunction reflected = make_grid_function(ctx.phase);
    const int n = ctx.phase.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int ri = n - i, rj = n - j; // -x lattice partner; edge row excluded
            if (ri >= 0 && ri < n && rj >= 0 && rj < n)
                reflected.at(i, j) = f.at(ri, rj);
        }
    double parity = 0.0;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            parity = std::max(parity,
                              std::abs(mixed.at(i, j) - reflected.at(i, j)));
    parity /= f.max_abs();
    // radial Gaussian e^{-|x|^2/hbar} is a fixed point with factor one
    GridFunction fixed = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0 / hbar), ctx.phase);
    double fixed_point = rel_sup(
        symplectic_fourier(fixed, hbar, SymplecticSign::standard), fixed);
    return {std::max({involution, parity, fixed_point}),
            fmt("involution %.2e, parity %.2e, fixed point %.2e", involution,
                parity, fixed_point)};
}

// -------------------------------------------------------------- multipliers

std::pair<double, std::string> crit_approx_identity(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    const double sigma = 2.4;
    AnalyticFunction e1 = isotropic_gaussian(
        2, cxd(1.0 / (kPi * sigma * sigma), 0.0), {0.0, 0.0},
        1.0 / (sigma * sigma));
    AnalyticFunction g_fn =
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0);
    // e_n resolved on the 128 grid up to n = 8; finer lattice for n = 16, 32
    // (the 1e-10 boundary gate and the Nyquist limit are incompatible above
    // that on 128 points).
    GridSpec coarse{2, ctx.cfg.grid_n, ctx.cfg.grid_half_width};
    GridSpec fine{2, 512, ctx.cfg.grid_half_width};
    std::vector<std::pair<int, const GridSpec*>> plan{
        {1, &coarse}, {2, &coarse}, {4, &coarse}, {8, &coarse},
        {16, &fine},  {32, &fine}};
    std::vector<double> left_err, right_err;
    std::string detail = "sup errors (left/right): ";
    for (auto [n, spec] : plan) {
        GridFunction e1_grid = sample(e1, *spec);
        GridFunction g = sample(g_fn, *spec);
        ApproxIdentity ap = make_approx_identity(e1_grid, n, &e1);
        double scale = g.max_abs();
        GridFunction l = twisted_convolution(ap.e_n, g, hbar);
        GridFunction r = twisted_convolution(g, ap.e_n, hbar);
        left_err.push_back(sup_distance(l, g) / scale);
        right_err.push_back(sup_distance(r, g) / scale);
        detail += fmt("n=%d %.2e/%.2e ", n, left_err.back(), right_err.back());
    }
    double margin = std::max(left_err.back() - 1e-2, right_err.back() - 1e-2);
    for (std::size_t i = 1; i < left_err.size(); ++i) {
        margin = std::max(margin, left_err[i] - left_err[i - 1]);
        margin = std::max(margin, right_err[i] - right_err[i - 1]);
    }
    return {margin, detail};
}

std::pair<double, std::string> crit_twisted_translations(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    const double dx = ctx.phase.spacing();
    GridFunction v = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.3, -0.2}, 1.0), ctx.phase);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.4, 0.5}, 1.2), ctx.phase);
    GridFunction base = twisted_convolution(v, g, hbar);
    double scale = base.max_abs();
    const std::array<std::array<int, 2>, 4> shifts{
        {{8, 0}, {0, -12}, {20, 4}, {-16, 28}}};
    double worst = 0.0;
    for (const auto& cells : shifts) {
        std::array<double, 2> xi{cells[0] * dx, cells[1] * dx};
        GridFunction lhs =
            twisted_convolution(v, twisted_translate(g, xi, hbar), hbar);
        GridFunction rhs = twisted_translate(base, xi, hbar);
        worst = std::max(worst, sup_distance(lhs, rhs) / scale);
    }
    return {worst, fmt("worst commutator over 4 lattice shifts")};
}

std::pair<double, std::string> crit_extension_functional(const Context& ctx) {
    GridFunction f0a = sample(
        isotropic_gaussian(1, cxd(std::pow(kPi, -0.5), 0.0), {0.0}, 1.0),
        ctx.line);
    GridFunction f0b = sample(
        isotropic_gaussian(1, cxd(std::sqrt(2.0 / kPi), 0.0), {0.0}, 2.0),
        ctx.line);
    std::vector<std::pair<GridFunction, GridFunction>> pairs;
    GridFunction ones = make_grid_function(ctx.line, "constant one");
    for (cxd& v : ones.samples) v = cxd(1.0, 0.0);
    pairs.emplace_back(ones, sample(isotropic_gaussian(1, cxd(1.0, 0.0), {0.0},
                                                       1.0),
                                    ctx.line));
    GridFunction xsq = sample(
        polynomial(1, {Monomial{{2}, cxd(1.0, 0.0)}}), ctx.line);
    pairs.emplace_back(xsq, sample(isotropic_gaussian(1, cxd(1.0, 0.0), {0.4},
                                                      1.0),
                                   ctx.line));
    GridFunction ug = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {-0.3}, 0.25), ctx.line);
    pairs.emplace_back(ug, sample(isotropic_gaussian(1, cxd(1.0, 0.5), {0.2},
                                                     0.8),
                                  ctx.line));
    double worst = 0.0;
    for (const auto& [urep, h] : pairs) {
        DualElement u{urep, 1.0, ""};
        cxd direct = grid_integral(pointwise_product(urep, h));
        cxd ext_a = extend_functional(u, f0a, h);
        cxd ext_b = extend_functional(u, f0b, h);
        double scale = std::abs(direct);
        worst = std::max(worst, std::abs(ext_a - direct) / scale);
        worst = std::max(worst, std::abs(ext_a - ext_b) / scale);
    }
    return {worst, "restriction identity and f0-independence over 3 pairs"};
}

std::pair<double, std::string> crit_riemann_sums(const Context& ctx) {
    AnalyticFunction f0 =
        isotropic_gaussian(1, cxd(std::pow(kPi, -0.5), 0.0), {0.0}, 1.0);
    GridFunction h = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0 / 9.0), ctx.line);
    std::vector<double> errs;
    std::string detail = "sup errors: ";
    for (int n : {8, 16, 32}) {
        GridFunction s = riemann_sequence(h, f0, n);
        errs.push_back(sup_distance(s, h));
        detail += fmt("n=%d %.2e ", n, errs.back());
    }
    double margin = errs.back() - 1e-3;
    margin = std::max(margin, errs[1] - errs[0]);
    margin = std::max(margin, errs[2] - errs[1]);
    return {margin, detail};
}

std::pair<double, std::string> crit_multiplier_experiments(const Context& ctx) {
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    const double hbar = ctx.cfg.hbar;
    AnalyticFunction poly = polynomial(
        2, {Monomial{{0, 0}, cxd(1.0, 0.0)}, Monomial{{2, 0}, cxd(1.0, 0.0)},
            Monomial{{0, 2}, cxd(1.0, 0.0)}});
    AnalyticFunction osc_chirp =
        chirp(2, {0.0, 1.0 / hbar, 1.0 / hbar, 0.0}); // e^{(2i/hbar) q p}
    AnalyticFunction f = isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0);
    StarConfig cfg{hbar, {}, StarBackend::fourier};
    MultiplierOptions options;
    options.target = 100.0;
    options.norm_order = 2;
    std::string detail;
    double fail = 0.0;
    std::vector<double> chirp_a;
    for (double L : {8.0, 12.0, 16.0}) {
        GridSpec spec{2, ctx.cfg.grid_n, L};
        MultiplierReport rp =
            multiplier_experiment(poly, f, cfg, spec, a, a, options);
        if (!rp.success) fail += 1.0;
        MultiplierReport rc =
            multiplier_experiment(osc_chirp, f, cfg, spec, a, a, options);
        chirp_a.push_back(rc.success ? rc.fitted_A
                                     : std::numeric_limits<double>::infinity());
        detail += fmt("L=%g: poly A=%.3g chirp A=%.3g; ", L,
                      rp.success ? rp.fitted_A : -1.0,
                      rc.success ? rc.fitted_A : -1.0);
    }
    bool monotone = chirp_a[0] <= chirp_a[1] && chirp_a[1] <= chirp_a[2] &&
                    chirp_a[2] > chirp_a[0];
    if (!monotone || std::isinf(chirp_a[0])) fail += 1.0;
    return {fail, detail + "(chirp decay constants must degrade with L)"};
}

std::pair<double, std::string> inv_module_property(const Context& ctx) {
    GridFunction u = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.2, 0.6}, 0.9), ctx.phase);
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.4, 0.1}, 1.1), ctx.phase);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.5, -0.5}, 1.0), ctx.phase);
    StarConfig cfg{ctx.cfg.hbar, {}, StarBackend::fourier};
    GridFunction lhs = moyal(u, moyal(f, g, cfg), cfg);
    GridFunction rhs = moyal(moyal(u, f, cfg), g, cfg);
    return {rel_sup(lhs, rhs), "left multiplication commutes past the product"};
}

std::pair<double, std::string> inv_duality_pairing(const Context& ctx) {
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.6, -0.1}, 1.0), ctx.phase);
    GridFunction u = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.2, 0.3}, 0.8), ctx.phase);
    GridFunction h = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.1, 0.4}, 1.2), ctx.phase);
    StarConfig cfg{ctx.cfg.hbar, {}, StarBackend::fourier};
    cxd lhs = grid_integral(pointwise_product(moyal(f, u, cfg), h));
    cxd rhs = grid_integral(pointwise_product(u, moyal(h, f, cfg)));
    return {std::abs(lhs - rhs) / std::abs(rhs),
            "int (f*u) h = int u (h*f)"};
}

std::pair<double, std::string> inv_approx_identity_bounded(const Context& ctx) {
    const double sigma = 2.4;
    AnalyticFunction e1 = isotropic_gaussian(
        2, cxd(1.0 / (kPi * sigma * sigma), 0.0), {0.0, 0.0},
        1.0 / (sigma * sigma));
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.3, 0.2}, 1.0), ctx.phase);
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    GridFunction e1_grid = sample(e1, ctx.phase);
    double base = gs_norm(g, a, a, 2.0, 2.0, 2).value;
    double worst = 0.0;
    std::string detail = "norms at enlarged constants: ";
    for (int n : {1, 2, 4, 8}) {
        ApproxIdentity ap = make_approx_identity(e1_grid, n, &e1);
        GridFunction conv = twisted_convolution(ap.e_n, g, ctx.cfg.hbar);
        double v = gs_norm(conv, a, a, 4.0, 4.0, 2).value;
        detail += fmt("n=%d %.3g ", n, v);
        worst = std::max(worst, v);
    }
    // uniform boundedness surrogate: enlarged-constant norms stay within a
    // fixed multiple of the base norm
    return {worst / (4.0 * base) - 1.0, detail + fmt("(base %.3g)", base)};
}

// ----------------------------------------------------------------- quantize

std::pair<double, std::string> crit_quantization(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    // harmonic oscillator spectrum
    AnalyticFunction osc = polynomial(
        2, {Monomial{{2, 0}, cxd(0.5, 0.0)}, Monomial{{0, 2}, cxd(0.5, 0.0)}});
    StarConfig plain{hbar, {}, StarBackend::fourier};
    OperatorMatrix ho =
        op_matrix(symbol_from_analytic(osc), plain, ctx.phase, 16);
    double osc_dev = 0.0;
    for (int m = 0; m <= 10; ++m)
        for (int n = 0; n <= 10; ++n) {
            cxd want = m == n ? cxd(hbar * (n + 0.5), 0.0) : cxd(0.0, 0.0);
            osc_dev = std::max(osc_dev, std::abs(ho.at(m, n) - want));
        }
    // homomorphism for the S-ordered product on Gaussian symbols
    StarConfig scfg{hbar, {0.0, 0.3, 0.3, 0.0}, StarBackend::fourier};
    GridFunction fsym = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.6, 0.2}, 1.0), ctx.phase);
    GridFunction gsym = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.4, 0.5}, 0.8), ctx.phase);
    GridFunction star = star_s(fsym, gsym, scfg);
    OperatorMatrix lhs = op_matrix(symbol_from_grid(star), scfg, ctx.phase, 16);
    OperatorMatrix op_f = op_matrix(symbol_from_grid(fsym), scfg, ctx.phase, 16);
    OperatorMatrix op_g = op_matrix(symbol_from_grid(gsym), scfg, ctx.phase, 16);
    OperatorMatrix rhs = matrix_product(op_f, op_g);
    double scale = 0.0;
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n) scale = std::max(scale, std::abs(rhs.at(m, n)));
    double hom_dev = max_entry_distance(lhs, rhs, 8);
    // S-path independence: quantize with S directly vs transform-then-Weyl
    GridFunction transformed = weyl_symbol_of_s_ordered(fsym, scfg);
    StarConfig weyl_cfg{hbar, {}, StarBackend::fourier};
    OperatorMatrix via_weyl =
        op_matrix(symbol_from_grid(transformed), weyl_cfg, ctx.phase, 16);
    double spath = max_entry_distance(op_f, via_weyl, -1);
    double margin = std::max({osc_dev / 1e-4, hom_dev / (1e-4 * scale),
                              spath / 1e-8});
    return {margin,
            fmt("oscillator dev %.2e (tol 1e-4), homomorphism dev %.2e "
                "(tol 1e-4 x scale %.3g), S-path %.2e (tol 1e-8)",
                osc_dev, hom_dev, scale, spath)};
}

std::pair<double, std::string> inv_wigner(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    GridFunction psi0 = hermite_state(0, hbar, ctx.line);
    GridFunction w = wigner(psi0, psi0, hbar);
    GridFunction expect = sample(
        isotropic_gaussian(2, cxd(1.0 / (kPi * hbar), 0.0), {0.0, 0.0},
                           1.0 / hbar),
        w.spec);
    double ground = rel_sup(w, expect);
    double mass = std::abs(grid_integral(w) - cxd(1.0, 0.0));
    GridFunction psi1 = hermite_state(1, hbar, ctx.line);
    GridFunction cross = wigner(psi0, psi1, hbar);
    double orth = std::abs(grid_integral(cross));
    return {std::max({ground, mass, orth}),
            fmt("ground %.2e, normalization %.2e, orthogonality %.2e", ground,
                mass, orth)};
}

std::pair<double, std::string> inv_tracial_pairing(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 0.25), ctx.phase);
    StarConfig cfg{hbar, {}, StarBackend::fourier};
    OperatorMatrix m = op_matrix(symbol_from_grid(f), cfg, ctx.phase, 32);
    cxd tr = m.trace();
    cxd want = grid_integral(f) / (2.0 * kPi * hbar);
    return {std::abs(tr - want) / std::abs(want),
            fmt("trace %.6g vs phase-space integral %.6g", tr.real(),
                want.real())};
}

std::pair<double, std::string> inv_operator_consistency(const Context& ctx) {
    const double hbar = ctx.cfg.hbar;
    StarConfig cfg{hbar, {}, StarBackend::fourier};
    // real Gaussian symbol: Hermitian matrix, apply/matrix agreement
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.3, -0.2}, 0.7), ctx.phase);
    Symbol sym = symbol_from_grid(f);
    OperatorMatrix m = op_matrix(sym, cfg, ctx.phase, 12);
    double herm = m.hermiticity_defect();
    double scale = 0.0;
    for (const cxd& v : m.entries) scale = std::max(scale, std::abs(v));
    double pairing = 0.0;
    for (int n : {0, 2, 5}) {
        GridFunction psi_n = hermite_state(n, hbar, ctx.line);
        GridFunction image = apply_op(sym, psi_n, cfg, ctx.phase);
        for (int k : {0, 1, 4}) {
            GridFunction psi_k = hermite_state(k, hbar, ctx.line);
            cxd ip(0.0, 0.0);
            for (int i = 0; i < ctx.line.n; ++i)
                ip += std::conj(psi_k.at(i)) * image.at(i);
            ip *= ctx.line.spacing();
            pairing = std::max(pairing, std::abs(ip - m.at(k, n)));
        }
    }
    // identity symbol acts as the identity
    AnalyticFunction one = polynomial(2, {Monomial{{0, 0}, cxd(1.0, 0.0)}});
    GridFunction psi = hermite_state(3, hbar, ctx.line);
    GridFunction same = apply_op(symbol_from_analytic(one), psi, cfg, ctx.phase);
    double ident = sup_distance(same, psi) / psi.max_abs();
    // oscillator eigenrelation through apply_op
    AnalyticFunction osc = polynomial(
        2, {Monomial{{2, 0}, cxd(0.5, 0.0)}, Monomial{{0, 2}, cxd(0.5, 0.0)}});
    GridFunction h4 = hermite_state(4, hbar, ctx.line);
    GridFunction img = apply_op(symbol_from_analytic(osc), h4, cfg, ctx.phase);
    GridFunction want = h4;
    for (cxd& v : want.samples) v *= hbar * 4.5;
    double eig = sup_distance(img, want) / want.max_abs();
    // ground-state projector annihilates the first excited state
    AnalyticFunction proj = isotropic_gaussian(2, cxd(2.0, 0.0), {0.0, 0.0},
                                               1.0 / hbar);
    GridFunction psi1 = hermite_state(1, hbar, ctx.line);
    GridFunction killed =
        apply_op(symbol_from_analytic(proj), psi1, cfg, ctx.phase);
    double annihilate = killed.max_abs() / psi1.max_abs();
    double margin =
        std::max({herm / 1e-8, pairing / (1e-8 * std::max(scale, 1.0)),
                  ident / 1e-6, eig / 1e-4, annihilate / 1e-3});
    return {margin,
            fmt("hermiticity %.2e, pairing %.2e, identity %.2e, eigen %.2e, "
                "projector %.2e (each scaled by its tolerance)",
                herm, pairing, ident, eig, annihilate)};
}

} // namespace

std::vector<CriterionResult> run_suite(const std::string& suite,
                                       const RunConfig& config) {
    Context ctx(config);
    std::vector<CriterionResult> out;
    auto add = [&](const Check& c) { out.push_back(run_check(c)); };

    if (suite == "sequences" || suite == "all") {
        add({1, "sequences", "defining-sequence conditions and growth fit",
             1e-12, 1.0, [&] { return crit_sequence_conditions(ctx); }});
        add({2, "sequences", "weight-function inequality battery", 1e-9, 1.0,
             [&] { return crit_weight_inequalities(ctx); }});
        add({101, "sequences", "weight monotone, >= 1, super-polynomial",
             1e-12, 0.0, [&] { return inv_weight_monotone(ctx); }});
        add({102, "sequences", "subordination examples", 0.0, 0.0,
             [&] { return inv_subordination_examples(ctx); }});
        add({103, "sequences", "constant-one weight closed form", 1e-15, 0.0,
             [&] { return inv_constant_one_oracle(ctx); }});
    }
    if (suite == "gridfn" || suite == "all") {
        add({3, "gridfn", "fourier round-trip and gaussian self-duality", 1e-8,
             1.0, [&] { return crit_fourier_roundtrip(ctx); }});
        add({104, "gridfn", "parseval identity", 1e-8, 0.0,
             [&] { return inv_parseval(ctx); }});
        add({105, "gridfn", "spectral derivative closed forms", 1e-7, 0.0,
             [&] { return inv_derivative_forms(ctx); }});
        add({106, "gridfn", "hermite transform eigenvectors", 1e-8, 0.0,
             [&] { return inv_hermite_eigen(ctx); }});
        add({107, "gridfn", "gs-norm monotonicity in A, B, M", 0.0, 0.0,
             [&] { return inv_gs_norm_monotone(ctx); }});
        add({108, "gridfn", "e-norm product (Leibniz) bound", 1e-9, 0.0,
             [&] { return inv_e_norm_leibniz(ctx); }});
    }
    if (suite == "starprod" || suite == "all") {
        StarPairs pairs = compute_star_pairs(ctx);
        add({4, "starprod", "integral identity for the product", 1e-6, 30.0,
             [&] { return crit_integral_identity(pairs); }});
        add({5, "starprod", "backend agreement direct vs fourier", 1e-5, 0.0,
             [&] { return crit_backend_agreement(pairs); }});
        add({6, "starprod", "associativity, plain and S-ordered", 1e-6, 0.0,
             [&] { return crit_associativity(ctx); }});
        add({7, "starprod", "semiclassical deviation scaling", 0.1, 0.0,
             [&] { return crit_semiclassical(ctx); }});
        add({8, "starprod", "ground-state idempotency constant", 1e-6, 0.0,
             [&] { return crit_ground_state(ctx); }});
        add({9, "starprod", "symplectic factorization of the product", 1e-5,
             0.0, [&] { return crit_symplectic_factorization(ctx); }});
        add({109, "starprod", "twisted convolution gaussian closed form", 1e-8,
             0.0, [&] { return inv_twisted_gaussian_form(ctx); }});
        add({110, "starprod", "deformed convolution consistency", 1e-8, 0.0,
             [&] { return inv_deformed_consistency(ctx); }});
        add({111, "starprod", "conjugation involution", 1e-8, 0.0,
             [&] { return inv_conjugation(ctx); }});
        add({112, "starprod", "degenerate branches and center identity", 1e-12,
             0.0, [&] { return inv_degenerate_branches(ctx); }});
        add({113, "starprod", "symplectic transform involution and parity",
             1e-7, 0.0, [&] { return inv_symplectic_involution(ctx); }});
    }
    if (suite == "multipliers" || suite == "all") {
        add({10, "multipliers", "approximate identity convergence", 0.0, 0.0,
             [&] { return crit_approx_identity(ctx); }});
        add({11, "multipliers", "twisted translation commutation", 1e-7, 0.0,
             [&] { return crit_twisted_translations(ctx); }});
        add({12, "multipliers", "extension functional restriction", 1e-6, 0.0,
             [&] { return crit_extension_functional(ctx); }});
        add({13, "multipliers", "riemann sum convergence", 0.0, 0.0,
             [&] { return crit_riemann_sums(ctx); }});
        add({14, "multipliers", "multiplier experiments poly vs chirp", 0.0,
             0.0, [&] { return crit_multiplier_experiments(ctx); }});
        add({114, "multipliers", "module property of left multiplication",
             1e-6, 0.0, [&] { return inv_module_property(ctx); }});
        add({115, "multipliers", "duality pairing consistency", 1e-6, 0.0,
             [&] { return inv_duality_pairing(ctx); }});
        add({116, "multipliers", "approximate identity norm boundedness", 0.0,
             0.0, [&] { return inv_approx_identity_bounded(ctx); }});
    }
    if (suite == "quantize" || suite == "all") {
        add({15, "quantize", "oscillator spectrum, homomorphism, S-path", 1.0,
             60.0, [&] { return crit_quantization(ctx); }});
        add({117, "quantize", "wigner transform identities", 1e-6, 0.0,
             [&] { return inv_wigner(ctx); }});
        add({118, "quantize", "tracial pairing at K = 32", 1e-2, 0.0,
             [&] { return inv_tracial_pairing(ctx); }});
        add({119, "quantize", "operator matrix consistency battery", 1.0, 0.0,
             [&] { return inv_operator_consistency(ctx); }});
    }
    if (out.empty())
        throw UsageError("unknown suite '" + suite + "'");
    if (config.tolerance_override > 0.0)
        for (auto& r : out) {
            r.tolerance = config.tolerance_override;
            r.passed = r.margin <= r.tolerance;
        }
    return out;
}

std::vector<CriterionResult> run_all(const RunConfig& config) {
    return run_suite("all", config);
}

std::string suite_report_json(const std::vector<CriterionResult>& results,
                              const RunConfig& config) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value(1);
    w.key("grid_n").value(config.grid_n);
    w.field("grid_half_width", config.grid_half_width);
    w.field("hbar", config.hbar);
    w.key("seed").value(static_cast<long long>(config.seed));
    w.key("criteria").begin_array();
    for (const auto& r : results) {
        w.begin_object();
        w.key("id").value(r.id);
        w.field("suite", r.suite);
        w.field("name", r.name);
        w.field("margin", r.margin);
        w.field("tolerance", r.tolerance);
        w.field("passed", r.passed);
        w.field("detail", r.detail);
        w.end_object();
    }
    w.end_array();
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    w.key("failures").value(failures);
    w.end_object();
    return w.str();
}

void print_results(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        std::printf("[%s] %3d %-52s margin %.3e (tol %.1e) %6.2fs  %s\n",
                    r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.margin,
                    r.tolerance, r.seconds, r.passed ? "" : r.detail.c_str());
    }
}

} // namespace moyalkit
