#include "moyalkit/multipliers.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>

#include "moyalkit/threads.hpp"

namespace moyalkit {

namespace {

constexpr double kUnitIntegralTol = 1e-6;
constexpr double kOuterDecayTol = 1e-8;

// Plain convolution sum (u * f)(x_k) = dx^d sum_j u(y_j) f(x_k - y_j) with
// zero extension outside the box; differences land on the lattice exactly.
GridFunction ordinary_convolution(const GridFunction& u, const GridFunction& f) {
    require_same_spec(u, f, "convolution");
    configure_threads();
    const GridSpec& spec = u.spec;
    const int n = spec.n;
    const int half = n / 2;
    GridFunction out = make_grid_function(spec, "convolution");
    SupportBox ub = support_box(u);
    SupportBox fb = support_box(f);
    if (ub.empty() || fb.empty()) return out;
    const double measure = spec.cell_measure();
    if (spec.dim == 1) {
        for (int k = 0; k < n; ++k) {
            int lo = std::max(ub.lo[0], k + half - fb.hi[0]);
            int hi = std::min(ub.hi[0], k + half - fb.lo[0]);
            cxd acc(0.0, 0.0);
            for (int j = lo; j <= hi; ++j) acc += u.at(j) * f.at(k - j + half);
            out.at(k) = acc * measure;
        }
        return out;
    }
#pragma omp parallel for schedule(dynamic, 1)
    for (int kq = 0; kq < n; ++kq) {
        int lo0 = std::max(ub.lo[0], kq + half - fb.hi[0]);
        int hi0 = std::min(ub.hi[0], kq + half - fb.lo[0]);
        if (hi0 < lo0) continue;
        for (int kp = 0; kp < n; ++kp) {
            int lo1 = std::max(ub.lo[1], kp + half - fb.hi[1]);
            int hi1 = std::min(ub.hi[1], kp + half - fb.lo[1]);
            if (hi1 < lo1) continue;
            cxd acc(0.0, 0.0);
            for (int jq = lo0; jq <= hi0; ++jq) {
                const cxd* urow = u.samples.data() + static_cast<std::size_t>(jq) * n;
                const cxd* frow = f.samples.data() +
                                  static_cast<std::size_t>(kq - jq + half) * n;
                for (int jp = lo1; jp <= hi1; ++jp)
                    acc += urow[jp] * frow[kp - jp + half];
            }
            out.at(kq, kp) = acc * measure;
        }
    }
    return out;
}

// Max |f| per max-norm ring.
std::vector<double> ring_profile(const GridFunction& f) {
    const int n = f.spec.n;
    const int half = n / 2;
    std::vector<double> prof(static_cast<std::size_t>(half) + 1, 0.0);
    if (f.spec.dim == 1) {
        for (int i = 0; i < n; ++i) {
            int r = std::abs(i - half);
            prof[static_cast<std::size_t>(r)] =
                std::max(prof[static_cast<std::size_t>(r)], std::abs(f.at(i)));
        }
        return prof;
    }
    for (int i = 0; i < n; ++i) {
        int ri = std::abs(i - half);
        for (int j = 0; j < n; ++j) {
            int r = std::max(ri, std::abs(j - half));
            prof[static_cast<std::size_t>(r)] =
                std::max(prof[static_cast<std::size_t>(r)], std::abs(f.at(i, j)));
        }
    }
    return prof;
}

void check_nonnegative_real(const GridFunction& f, const char* where) {
    double scale = f.max_abs();
    for (const cxd& v : f.samples) {
        if (std::abs(v.imag()) > 1e-12 * scale || v.real() < -1e-12 * scale)
            throw NegativeValues(std::string(where) +
                                 ": samples must be real and nonnegative");
    }
}

void check_unit_integral(const GridFunction& f, const char* where) {
    cxd total = grid_integral(f);
    if (std::abs(total - cxd(1.0, 0.0)) > kUnitIntegralTol)
        throw NotNormalized(std::string(where) + ": grid integral " +
                            std::to_string(total.real()) + " not within 1e-6 of 1");
}

} // namespace

ApproxIdentity make_approx_identity(const GridFunction& e1, int n,
                                    const AnalyticFunction* closed_form) {
    if (n < 1) throw ConditionViolation("approximate identity index must be >= 1");
    check_nonnegative_real(e1, "make_approx_identity");
    check_unit_integral(e1, "make_approx_identity");
    ApproxIdentity out;
    out.e1 = e1;
    out.n = n;
    const GridSpec& spec = e1.spec;
    const int N = spec.n;
    const int half = N / 2;
    const double amp = std::pow(static_cast<double>(n), spec.dim);
    GridFunction en = make_grid_function(spec, "approx identity n=" + std::to_string(n));
    if (closed_form != nullptr) {
        if (spec.dim == 1) {
            for (int i = 0; i < N; ++i) {
                double x = n * spec.point(i);
                en.at(i) = amp * closed_form->eval(&x);
            }
        } else {
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    double pt[2] = {n * spec.point(i), n * spec.point(j)};
                    en.at(i, j) = amp * closed_form->eval(pt);
                }
        }
    } else {
        // n * z_j lands back on the lattice for integer n.
        auto src = [&](int i) { return n * (i - half) + half; };
        if (spec.dim == 1) {
            for (int i = 0; i < N; ++i) {
                int s = src(i);
                if (s >= 0 && s < N) en.at(i) = amp * e1.at(s);
            }
        } else {
            for (int i = 0; i < N; ++i) {
                int si = src(i);
                if (si < 0 || si >= N) continue;
                for (int j = 0; j < N; ++j) {
                    int sj = src(j);
                    if (sj >= 0 && sj < N) en.at(i, j) = amp * e1.at(si, sj);
                }
            }
        }
    }
    check_nonnegative_real(en, "make_approx_identity(e_n)");
    check_unit_integral(en, "make_approx_identity(e_n)");
    out.e_n = std::move(en);
    return out;
}

GridFunction twisted_translate(const GridFunction& g,
                               const std::array<double, 2>& xi, double hbar,
                               SymplecticSign sign) {
    if (g.spec.dim != 2)
        throw SpecMismatch("twisted_translate needs a phase-space grid");
    const double dx = g.spec.spacing();
    std::array<int, 2> cells{};
    for (int a = 0; a < 2; ++a) {
        double c = xi[static_cast<std::size_t>(a)] / dx;
        double r = std::round(c);
        if (std::abs(c - r) > 1e-9)
            throw OffLattice("translation must be a whole number of grid cells");
        cells[static_cast<std::size_t>(a)] = static_cast<int>(r);
    }
    GridFunction out = translate_cells(g, cells);
    const double s = sign == SymplecticSign::standard ? 1.0 : -1.0;
    const int n = g.spec.n;
    for (int i = 0; i < n; ++i) {
        double zq = g.spec.point(i);
        for (int j = 0; j < n; ++j) {
            double zp = g.spec.point(j);
            // xi.J z = xi_q z_p - xi_p z_q
            double ang = 0.5 * s * hbar * (xi[0] * zp - xi[1] * zq);
            out.at(i, j) *= std::polar(1.0, ang);
        }
    }
    out.meta = "twisted translate of " + g.meta;
    return out;
}

GridFunction convolve_dual(const DualElement& u, const GridFunction& f) {
    require_same_spec(u.representation, f, "convolve_dual");
    // Domination check: the worst-case integrand tail pairs u's growth ring r
    // with f's decay ring r - |x|, |x| <= L/2. It must have dropped by 1e-8
    // from its peak at the box edge, otherwise the quadrature is divergent in
    // spirit and the box cannot be trusted.
    std::vector<double> gu = ring_profile(u.representation);
    std::vector<double> gf = ring_profile(f);
    const int half = u.representation.spec.n / 2;
    double peak = 0.0;
    std::vector<double> tail(static_cast<std::size_t>(half) + 1, 0.0);
    for (int r = 0; r <= half; ++r) {
        int shifted = std::max(r - half / 2, 0);
        tail[static_cast<std::size_t>(r)] =
            gu[static_cast<std::size_t>(r)] * gf[static_cast<std::size_t>(shifted)];
        peak = std::max(peak, tail[static_cast<std::size_t>(r)]);
    }
    if (peak > 0.0 &&
        tail[static_cast<std::size_t>(half)] > kOuterDecayTol * peak) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "convolve_dual: integrand tail ratio %.3e exceeds %.1e; "
                      "u grows faster than f decays on this box",
                      tail[static_cast<std::size_t>(half)] / peak,
                      kOuterDecayTol);
        throw IntegrandGrowth(buf);
    }
    return ordinary_convolution(u.representation, f);
}

cxd extend_functional(const DualElement& u, const GridFunction& f0,
                      const GridFunction& h) {
    require_same_spec(u.representation, f0, "extend_functional");
    require_same_spec(u.representation, h, "extend_functional");
    check_unit_integral(f0, "extend_functional(f0)");
    // (u * h_xi)(xi) = ((u h) * f0)(xi): the inner pairing collapses to an
    // ordinary convolution of the pointwise product against f0.
    GridFunction uh = pointwise_product(u.representation, h);
    if (uh.max_abs() > 0.0 && uh.boundary_ratio() > kOuterDecayTol) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "extend_functional: u h boundary ratio %.3e exceeds "
                      "%.1e on this box",
                      uh.boundary_ratio(), kOuterDecayTol);
        throw IntegrandGrowth(buf);
    }
    GridFunction outer = ordinary_convolution(uh, f0);
    if (outer.max_abs() > 0.0 && outer.boundary_ratio() > kOuterDecayTol) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "extend_functional: outer integrand boundary ratio "
                      "%.3e exceeds %.1e",
                      outer.boundary_ratio(), kOuterDecayTol);
        throw OuterBoundaryLeak(buf);
    }
    return grid_integral(outer);
}

GridFunction riemann_sequence(const GridFunction& h, const AnalyticFunction& f0,
                              int n) {
    if (n < 1) throw ConditionViolation("riemann_sequence needs n >= 1");
    if (f0.dim != h.spec.dim)
        throw SpecMismatch("riemann_sequence: f0 dimension mismatch");
    const GridSpec& spec = h.spec;
    const int N = spec.n;
    const int cap = n * n;
    const double inv = 1.0 / n;
    GridFunction out = make_grid_function(spec, "riemann sum n=" + std::to_string(n));
    const double norm = std::pow(inv, spec.dim);
    if (spec.dim == 1) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < N; ++i) {
            double x = spec.point(i);
            cxd acc(0.0, 0.0);
            for (int a = -cap; a <= cap; ++a) {
                double arg = a * inv - x;
                acc += f0.eval(&arg);
            }
            out.at(i) = h.at(i) * acc * norm;
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < N; ++i) {
        double x0 = spec.point(i);
        for (int j = 0; j < N; ++j) {
            double x1 = spec.point(j);
            cxd acc(0.0, 0.0);
            for (int a = -cap; a <= cap; ++a)
                for (int b = -cap; b <= cap; ++b) {
                    double pt[2] = {a * inv - x0, b * inv - x1};
                    acc += f0.eval(pt);
                }
            out.at(i, j) = h.at(i, j) * acc * norm;
        }
    }
    return out;
}

MultiplierReport multiplier_experiment(const AnalyticFunction& h,
                                       const AnalyticFunction& f,
                                       const StarConfig& cfg,
                                       const GridSpec& spec,
                                       const DefiningSequence& a,
                                       const DefiningSequence& b,
                                       const MultiplierOptions& options) {
    MultiplierReport rep;
    rep.box_half_width = spec.half_width;
    GridFunction f_grid = sample(f, spec);
    auto windowed_product = [&](double window_factor) {
        GridFunction h_grid = sample(h, spec);
        double w = spec.half_width / window_factor;
        bool needs_window = options.window_h && !h_grid.boundary_decay_ok();
        if (needs_window) {
            for (int i = 0; i < spec.n; ++i) {
                double xq = spec.point(i);
                for (int j = 0; j < spec.n; ++j) {
                    double xp = spec.point(j);
                    h_grid.at(i, j) *=
                        std::exp(-(xq * xq + xp * xp) / (w * w));
                }
            }
        }
        StarConfig fcfg = cfg;
        fcfg.backend = StarBackend::fourier;
        return options.left ? moyal(h_grid, f_grid, fcfg, Guard::permissive)
                            : moyal(f_grid, h_grid, fcfg, Guard::permissive);
    };
    GridFunction result = windowed_product(options.window_factor);
    GridFunction alt = windowed_product(options.window_factor_alt);
    rep.window_width = spec.half_width / options.window_factor;
    double scale = result.max_abs();
    rep.window_sensitivity =
        scale > 0.0 ? sup_distance(result, alt) / scale : 0.0;
    std::vector<double> prof = ring_profile(result);
    for (std::size_t r = 0; r < prof.size(); ++r)
        rep.decay_profile.emplace_back(r * spec.spacing(), prof[r]);
    auto fit = fit_class_constants(result, a, b, options.norm_order,
                                   options.target);
    if (fit) {
        rep.success = true;
        rep.fitted_A = fit->A;
        rep.fitted_B = fit->B;
        rep.norm_value = fit->norm_value;
    }
    return rep;
}

} // namespace moyalkit
