#include "moyalkit/star.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moyalkit/threads.hpp"

namespace moyalkit {

namespace {

void require_phase_space(const GridFunction& f, const char* where) {
    if (f.spec.dim != 2)
        throw SpecMismatch(std::string(where) +
                           ": needs a 2-dimensional phase-space grid");
}

// T[a*N + b] = exp(i coeff x_a x_b) over the shared coordinate values.
std::vector<cxd> phase_table(const GridSpec& spec, double coeff) {
    const int n = spec.n;
    std::vector<cxd> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        double xa = spec.point(a);
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a) * n + b] =
                std::polar(1.0, coeff * xa * spec.point(b));
    }
    return table;
}

struct Range {
    int lo, hi; // inclusive
    bool empty() const { return hi < lo; }
};

// Indices j with j in [slo, shi] and k - j + half in [tlo, thi].
Range overlap(int k, int half, int slo, int shi, int tlo, int thi) {
    return {std::max(slo, k + half - thi), std::min(shi, k + half - tlo)};
}

} // namespace

void validate_config(const StarConfig& cfg, const GridSpec& spec) {
    if (!(cfg.hbar >= 0.0))
        throw SpecMismatch("hbar must be nonnegative");
    if (cfg.s_matrix.empty()) return;
    const int d2 = spec.dim;
    if (static_cast<int>(cfg.s_matrix.size()) != d2 * d2)
        throw SpecMismatch("S matrix must be (2d)x(2d) for the phase-space grid");
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            if (std::abs(cfg.s_matrix[static_cast<std::size_t>(i) * d2 + j] -
                         cfg.s_matrix[static_cast<std::size_t>(j) * d2 + i]) > 1e-12)
                throw SpecMismatch("S matrix must be symmetric to 1e-12");
}

GridFunction twisted_convolution(const GridFunction& u, const GridFunction& v,
                                 double theta, Guard guard) {
    require_same_spec(u, v, "twisted_convolution");
    require_phase_space(u, "twisted_convolution");
    if (guard == Guard::strict) {
        require_boundary_decay(u, "twisted_convolution(u)");
        require_boundary_decay(v, "twisted_convolution(v)");
    }
    configure_threads();
    const GridSpec& spec = u.spec;
    const int n = spec.n;
    const int half = n / 2;
    GridFunction out = make_grid_function(spec, "twisted convolution");
    SupportBox ub = support_box(u);
    SupportBox vb = support_box(v);
    if (ub.empty() || vb.empty()) return out;
    // e^{(i th/2) z.J z'} = e^{(i th/2) zq z'p} e^{-(i th/2) zp z'q}
    std::vector<cxd> tp = phase_table(spec, theta / 2.0);
    std::vector<cxd> tm = phase_table(spec, -theta / 2.0);
    const double measure = spec.cell_measure();
    const cxd* udata = u.samples.data();
    const cxd* vdata = v.samples.data();
#pragma omp parallel for schedule(dynamic, 1)
    for (int kq = 0; kq < n; ++kq) {
        Range rq = overlap(kq, half, ub.lo[0], ub.hi[0], vb.lo[0], vb.hi[0]);
        if (rq.empty()) continue;
        for (int kp = 0; kp < n; ++kp) {
            Range rp = overlap(kp, half, ub.lo[1], ub.hi[1], vb.lo[1], vb.hi[1]);
            if (rp.empty()) continue;
            cxd acc(0.0, 0.0);
            const cxd* tprow = tp.data() + static_cast<std::size_t>(kq) * n;
            const cxd* tmrow = tm.data() + static_cast<std::size_t>(kp) * n;
            for (int jq = rq.lo; jq <= rq.hi; ++jq) {
                const cxd* urow = udata + static_cast<std::size_t>(jq) * n;
                const cxd* vrow =
                    vdata + static_cast<std::size_t>(kq - jq + half) * n;
                const cxd c2 = tmrow[jq];
                cxd inner(0.0, 0.0);
                for (int jp = rp.lo; jp <= rp.hi; ++jp)
                    inner += urow[jp] * vrow[kp - jp + half] * tprow[jp];
                acc += inner * c2;
            }
            out.at(kq, kp) = acc * measure;
        }
    }
    return out;
}

GridFunction deformed_convolution(const GridFunction& u, const GridFunction& v,
                                  const StarConfig& cfg, Guard guard) {
    require_same_spec(u, v, "deformed_convolution");
    require_phase_space(u, "deformed_convolution");
    validate_config(cfg, u.spec);
    if (guard == Guard::strict) {
        require_boundary_decay(u, "deformed_convolution(u)");
        require_boundary_decay(v, "deformed_convolution(v)");
    }
    configure_threads();
    const GridSpec& spec = u.spec;
    const int n = spec.n;
    const int half = n / 2;
    const double hbar = cfg.hbar;
    // J + S acting on (q, p)
    double m00 = 0.0, m01 = 1.0, m10 = -1.0, m11 = 0.0;
    if (!cfg.s_matrix.empty()) {
        m00 += cfg.s_matrix[0];
        m01 += cfg.s_matrix[1];
        m10 += cfg.s_matrix[2];
        m11 += cfg.s_matrix[3];
    }
    GridFunction out = make_grid_function(spec, "deformed convolution");
    SupportBox ub = support_box(u);
    SupportBox vb = support_box(v);
    if (ub.empty() || vb.empty()) return out;
    // Phase split: e^{-(i hbar/2) z'.(J+S)(z - z')} =
    //   e^{-(i hbar/2) z'.(J+S) z} * e^{(i hbar/2) z'.S z'}   (z'.J z' = 0).
    // The z'-only chirp folds into a premultiplied copy of u; the bilinear
    // factor separates into four coordinate tables.
    std::vector<cxd> u_chirped = u.samples;
    if (!cfg.s_matrix.empty()) {
        const double s00 = cfg.s_matrix[0], s01 = cfg.s_matrix[1],
                     s11 = cfg.s_matrix[3];
        for (int jq = 0; jq < n; ++jq) {
            double zq = spec.point(jq);
            for (int jp = 0; jp < n; ++jp) {
                double zp = spec.point(jp);
                double quad = s00 * zq * zq + 2.0 * s01 * zq * zp + s11 * zp * zp;
                u_chirped[static_cast<std::size_t>(jq) * n + jp] *=
                    std::polar(1.0, 0.5 * hbar * quad);
            }
        }
    }
    std::vector<cxd> t1 = phase_table(spec, -0.5 * hbar * m00); // z'q zq
    std::vector<cxd> t2 = phase_table(spec, -0.5 * hbar * m01); // z'q zp
    std::vector<cxd> t3 = phase_table(spec, -0.5 * hbar * m10); // z'p zq
    std::vector<cxd> t4 = phase_table(spec, -0.5 * hbar * m11); // z'p zp
    const double measure = spec.cell_measure();
    const cxd* udata = u_chirped.data();
    const cxd* vdata = v.samples.data();
#pragma omp parallel for schedule(dynamic, 1)
    for (int kq = 0; kq < n; ++kq) {
        Range rq = overlap(kq, half, ub.lo[0], ub.hi[0], vb.lo[0], vb.hi[0]);
        if (rq.empty()) continue;
        std::vector<cxd> wp(static_cast<std::size_t>(n));
        for (int kp = 0; kp < n; ++kp) {
            Range rp = overlap(kp, half, ub.lo[1], ub.hi[1], vb.lo[1], vb.hi[1]);
            if (rp.empty()) continue;
            for (int jp = rp.lo; jp <= rp.hi; ++jp)
                wp[static_cast<std::size_t>(jp)] =
                    t3[static_cast<std::size_t>(jp) * n + kq] *
                    t4[static_cast<std::size_t>(jp) * n + kp];
            cxd acc(0.0, 0.0);
            for (int jq = rq.lo; jq <= rq.hi; ++jq) {
                const cxd* urow = udata + static_cast<std::size_t>(jq) * n;
                const cxd* vrow =
                    vdata + static_cast<std::size_t>(kq - jq + half) * n;
                const cxd c1 = t1[static_cast<std::size_t>(jq) * n + kq] *
                               t2[static_cast<std::size_t>(jq) * n + kp];
                cxd inner(0.0, 0.0);
                for (int jp = rp.lo; jp <= rp.hi; ++jp)
                    inner += urow[jp] * vrow[kp - jp + half] *
                             wp[static_cast<std::size_t>(jp)];
                acc += inner * c1;
            }
            out.at(kq, kp) = acc * measure;
        }
    }
    return out;
}

namespace {

GridFunction star_via_fourier(const GridFunction& f, const GridFunction& g,
                              const StarConfig& cfg, bool deformed, Guard guard) {
    GridFunction fh = fourier(f, FourierDirection::forward, guard);
    GridFunction gh = fourier(g, FourierDirection::forward, guard);
    GridFunction conv =
        deformed ? deformed_convolution(fh, gh, cfg, guard)
                 : twisted_convolution(fh, gh, cfg.hbar, guard);
    const double scale =
        std::pow(2.0 * std::numbers::pi, -0.5 * f.spec.dim);
    for (cxd& v : conv.samples) v *= scale;
    GridFunction out = fourier(conv, FourierDirection::backward, Guard::permissive);
    out.meta = deformed ? "s-ordered product" : "weyl-moyal product";
    return out;
}

GridFunction moyal_direct(const GridFunction& f, const GridFunction& g,
                          const StarConfig& cfg, Guard guard) {
    if (guard == Guard::strict) {
        require_boundary_decay(f, "moyal(f)");
        require_boundary_decay(g, "moyal(g)");
    }
    configure_threads();
    const GridSpec& spec = f.spec;
    const int n = spec.n;
    const int half = n / 2;
    const double hbar = cfg.hbar;
    const double c = 2.0 / hbar;
    const double measure = spec.cell_measure();

    // Quadrature of the defining double integral, inner variable first.
    // With w = x - x'' the inner sum over the lattice is independent of the
    // output point: T(x') = sum_w g(w) e^{-(2i/hbar) x'.J w} dw. The outer sum
    // then runs over x' against f(x - x') e^{(2i/hbar) x'.J x}.
    std::vector<cxd> e_plus(static_cast<std::size_t>(n) * n);
    std::vector<cxd> e_minus(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        double xa = spec.point(a);
        for (int b = 0; b < n; ++b) {
            double ang = c * xa * spec.point(b);
            e_plus[static_cast<std::size_t>(a) * n + b] = std::polar(1.0, ang);
            e_minus[static_cast<std::size_t>(a) * n + b] = std::polar(1.0, -ang);
        }
    }
    // T = E2 g E1^T (separable contractions): x'.J w = q' p_w - p' q_w.
    std::vector<cxd> stage(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
    for (int jp = 0; jp < n; ++jp) {
        // M[jp][wp] = sum_wq g[wq][wp] e^{(2i/hbar) p'_{jp} q_wq}
        for (int wp = 0; wp < n; ++wp) {
            cxd acc(0.0, 0.0);
            for (int wq = 0; wq < n; ++wq)
                acc += g.at(wq, wp) * e_plus[static_cast<std::size_t>(jp) * n + wq];
            stage[static_cast<std::size_t>(jp) * n + wp] = acc;
        }
    }
    GridFunction t_fn = make_grid_function(spec, "inner transform");
#pragma omp parallel for schedule(static)
    for (int jq = 0; jq < n; ++jq)
        for (int jp = 0; jp < n; ++jp) {
            cxd acc(0.0, 0.0);
            for (int wp = 0; wp < n; ++wp)
                acc += stage[static_cast<std::size_t>(jp) * n + wp] *
                       e_minus[static_cast<std::size_t>(jq) * n + wp];
            t_fn.at(jq, jp) = acc * measure;
        }

    SupportBox fb = support_box(f);
    SupportBox tb = support_box(t_fn);
    GridFunction out = make_grid_function(spec, "weyl-moyal product");
    if (fb.empty() || tb.empty()) return out;
    const double prefactor =
        std::pow(std::numbers::pi * hbar, -static_cast<double>(spec.dim)) *
        measure;
    const cxd* fdata = f.samples.data();
    const cxd* tdata = t_fn.samples.data();
#pragma omp parallel for schedule(dynamic, 1)
    for (int iq = 0; iq < n; ++iq) {
        Range rq = overlap(iq, half, tb.lo[0], tb.hi[0], fb.lo[0], fb.hi[0]);
        if (rq.empty()) continue;
        for (int ip = 0; ip < n; ++ip) {
            Range rp = overlap(ip, half, tb.lo[1], tb.hi[1], fb.lo[1], fb.hi[1]);
            if (rp.empty()) continue;
            cxd acc(0.0, 0.0);
            for (int jq = rq.lo; jq <= rq.hi; ++jq) {
                const cxd* trow = tdata + static_cast<std::size_t>(jq) * n;
                const cxd* frow =
                    fdata + static_cast<std::size_t>(iq - jq + half) * n;
                // e^{(2i/hbar) x'.J x} = e^{+c q' p} e^{-c p' q}
                const cxd c2 = e_plus[static_cast<std::size_t>(jq) * n + ip];
                cxd inner(0.0, 0.0);
                for (int jp = rp.lo; jp <= rp.hi; ++jp)
                    inner += trow[jp] * frow[ip - jp + half] *
                             e_minus[static_cast<std::size_t>(jp) * n + iq];
                acc += inner * c2;
            }
            out.at(iq, ip) = acc * prefactor;
        }
    }
    return out;
}

} // namespace

GridFunction moyal(const GridFunction& f, const GridFunction& g,
                   const StarConfig& cfg, Guard guard) {
    require_same_spec(f, g, "moyal");
    require_phase_space(f, "moyal");
    validate_config(cfg, f.spec);
    if (cfg.hbar == 0.0) return pointwise_product(f, g);
    if (cfg.backend == StarBackend::direct_quadrature)
        return moyal_direct(f, g, cfg, guard);
    StarConfig plain = cfg;
    plain.s_matrix.clear();
    return star_via_fourier(f, g, plain, false, guard);
}

GridFunction star_s(const GridFunction& f, const GridFunction& g,
                    const StarConfig& cfg, Guard guard) {
    require_same_spec(f, g, "star_s");
    require_phase_space(f, "star_s");
    validate_config(cfg, f.spec);
    if (cfg.hbar == 0.0) return pointwise_product(f, g);
    return star_via_fourier(f, g, cfg, true, guard);
}

GridFunction symplectic_fourier(const GridFunction& f, double hbar,
                                SymplecticSign sign, Guard guard) {
    require_phase_space(f, "symplectic_fourier");
    if (!(hbar > 0.0))
        throw SpecMismatch("symplectic_fourier needs hbar > 0");
    if (guard == Guard::strict)
        require_boundary_decay(f, "symplectic_fourier");
    configure_threads();
    const GridSpec& spec = f.spec;
    const int n = spec.n;
    // e^{-s (2i/hbar) x.J y} with s = +1 (standard) or -1 (conjugate);
    // x.J y = q_x p_y - p_x q_y separates the double sum into two passes.
    const double s = sign == SymplecticSign::standard ? 1.0 : -1.0;
    const double c = s * 2.0 / hbar;
    std::vector<cxd> e_plus(static_cast<std::size_t>(n) * n);
    std::vector<cxd> e_minus(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        double xa = spec.point(a);
        for (int b = 0; b < n; ++b) {
            double ang = c * xa * spec.point(b);
            e_plus[static_cast<std::size_t>(a) * n + b] = std::polar(1.0, ang);
            e_minus[static_cast<std::size_t>(a) * n + b] = std::polar(1.0, -ang);
        }
    }
    std::vector<cxd> stage(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
    for (int kq = 0; kq < n; ++kq) {
        // sum over jp of f[jq][jp] e^{+c p_jp q_kq}, for each jq
        for (int jq = 0; jq < n; ++jq) {
            cxd acc(0.0, 0.0);
            for (int jp = 0; jp < n; ++jp)
                acc += f.at(jq, jp) * e_plus[static_cast<std::size_t>(kq) * n + jp];
            stage[static_cast<std::size_t>(kq) * n + jq] = acc;
        }
    }
    GridFunction out = make_grid_function(spec, "symplectic transform");
    const double prefactor =
        std::pow(std::numbers::pi * hbar, -0.5 * spec.dim) * spec.cell_measure();
#pragma omp parallel for schedule(static)
    for (int kq = 0; kq < n; ++kq)
        for (int kp = 0; kp < n; ++kp) {
            cxd acc(0.0, 0.0);
            for (int jq = 0; jq < n; ++jq)
                acc += stage[static_cast<std::size_t>(kq) * n + jq] *
                       e_minus[static_cast<std::size_t>(kp) * n + jq];
            out.at(kq, kp) = acc * prefactor;
        }
    return out;
}

} // namespace moyalkit
