#include "moyalkit/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moyalkit/threads.hpp"

namespace moyalkit {

namespace {

GridSpec q_spec_of(const GridSpec& phase_spec) {
    if (phase_spec.dim != 2)
        throw SpecMismatch("quantize: needs a 2-dimensional phase-space grid");
    GridSpec q = phase_spec;
    q.dim = 1;
    return q;
}

// Symbol values on the half-spacing midpoint lattice m_s = (s - N) dx/2,
// s = 0..2N-2, for every momentum column. Grid symbols are band-limited
// interpolated; closed forms are evaluated exactly.
std::vector<cxd> midpoint_values(const Symbol& f, const GridSpec& spec,
                                 Guard guard) {
    const int n = spec.n;
    const double dx = spec.spacing();
    std::vector<cxd> mid(static_cast<std::size_t>(2 * n) * n, cxd(0.0, 0.0));
    if (f.analytic != nullptr) {
        for (int s = 0; s < 2 * n; ++s) {
            double q = (s - n) * 0.5 * dx;
            for (int k = 0; k < n; ++k) {
                double pt[2] = {q, spec.point(k)};
                mid[static_cast<std::size_t>(s) * n + k] = f.analytic->eval(pt);
            }
        }
        return mid;
    }
    if (f.grid == nullptr)
        throw UnsupportedFamily("weyl_kernel: empty symbol");
    const GridFunction& g = *f.grid;
    if (!(g.spec == spec))
        throw SpecMismatch("weyl_kernel: symbol grid does not match the phase spec");
    if (guard == Guard::strict) require_boundary_decay(g, "weyl_kernel");
    // Upsample along the position axis: forward transform, embed the spectrum
    // in a double-size centered frequency grid, transform back.
    std::vector<cxd> buf = g.samples;
    detail::centered_axis_transform(buf.data(), n, n, 0,
                                    FourierDirection::forward, dx);
    const double dz = 2.0 * std::numbers::pi / (n * dx);
    std::vector<cxd> big(static_cast<std::size_t>(2 * n) * n, cxd(0.0, 0.0));
    for (int k = 0; k < n; ++k)
        std::copy(buf.begin() + static_cast<std::size_t>(k) * n,
                  buf.begin() + static_cast<std::size_t>(k + 1) * n,
                  big.begin() + static_cast<std::size_t>(k + n / 2) * n);
    detail::centered_axis_transform(big.data(), 2 * n, n, 0,
                                    FourierDirection::backward, dz);
    // big row s holds f(-L + s dx/2, .); midpoint row s matches i + j.
    return big;
}

} // namespace

double OperatorMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (int m = 0; m < basis_size; ++m)
        for (int n = 0; n < basis_size; ++n)
            worst = std::max(worst, std::abs(at(m, n) - std::conj(at(n, m))));
    return worst;
}

cxd OperatorMatrix::trace() const {
    cxd acc(0.0, 0.0);
    for (int m = 0; m < basis_size; ++m) acc += at(m, m);
    return acc;
}

OperatorMatrix matrix_product(const OperatorMatrix& x, const OperatorMatrix& y) {
    if (x.basis_size != y.basis_size)
        throw SpecMismatch("matrix_product: size mismatch");
    OperatorMatrix out;
    out.basis_size = x.basis_size;
    out.hbar = x.hbar;
    out.symbol_meta = x.symbol_meta + " . " + y.symbol_meta;
    out.entries.assign(static_cast<std::size_t>(x.basis_size) * x.basis_size,
                       cxd(0.0, 0.0));
    for (int m = 0; m < x.basis_size; ++m)
        for (int k = 0; k < x.basis_size; ++k) {
            cxd xv = x.at(m, k);
            if (xv == cxd(0.0, 0.0)) continue;
            for (int n = 0; n < x.basis_size; ++n)
                out.at(m, n) += xv * y.at(k, n);
        }
    return out;
}

double max_entry_distance(const OperatorMatrix& x, const OperatorMatrix& y,
                          int block) {
    if (x.basis_size != y.basis_size)
        throw SpecMismatch("max_entry_distance: size mismatch");
    int cap = block > 0 ? std::min(block, x.basis_size) : x.basis_size;
    double worst = 0.0;
    for (int m = 0; m < cap; ++m)
        for (int n = 0; n < cap; ++n)
            worst = std::max(worst, std::abs(x.at(m, n) - y.at(m, n)));
    return worst;
}

Symbol symbol_from_grid(const GridFunction& f) {
    Symbol s;
    s.grid = &f;
    s.meta = f.meta;
    return s;
}

Symbol symbol_from_analytic(const AnalyticFunction& f) {
    Symbol s;
    s.analytic = &f;
    s.meta = f.description;
    return s;
}

WeylKernel weyl_kernel(const Symbol& f, const GridSpec& phase_spec, double hbar,
                       Guard guard) {
    if (!(hbar > 0.0)) throw SpecMismatch("weyl_kernel needs hbar > 0");
    GridSpec qs = q_spec_of(phase_spec);
    configure_threads();
    const int n = phase_spec.n;
    const double dx = phase_spec.spacing();
    std::vector<cxd> mid = midpoint_values(f, phase_spec, guard);
    // K(q, q') = (2 pi hbar)^{-1} \int f((q+q')/2, p) e^{i p (q-q')/hbar} dp
    std::vector<cxd> phase(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        double p = phase_spec.point(k);
        for (int i = 0; i < n; ++i)
            phase[static_cast<std::size_t>(k) * n + i] =
                std::polar(1.0, p * phase_spec.point(i) / hbar);
    }
    WeylKernel kern;
    kern.q_spec = qs;
    kern.hbar = hbar;
    kern.values.assign(static_cast<std::size_t>(n) * n, cxd(0.0, 0.0));
    const double prefactor = dx / (2.0 * std::numbers::pi * hbar);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cxd* mrow = mid.data() + static_cast<std::size_t>(i + j) * n;
            cxd acc(0.0, 0.0);
            for (int k = 0; k < n; ++k)
                acc += mrow[k] * phase[static_cast<std::size_t>(k) * n + i] *
                       std::conj(phase[static_cast<std::size_t>(k) * n + j]);
            kern.at(i, j) = acc * prefactor;
        }
    return kern;
}

GridFunction weyl_symbol_of_s_ordered(const GridFunction& f, const StarConfig& cfg,
                                      Guard guard) {
    validate_config(cfg, f.spec);
    if (cfg.s_matrix.empty()) return f;
    GridFunction fh = fourier(f, FourierDirection::forward, guard);
    const int n = fh.spec.n;
    const double s00 = cfg.s_matrix[0], s01 = cfg.s_matrix[1],
                 s11 = cfg.s_matrix[3];
    for (int i = 0; i < n; ++i) {
        double zq = fh.spec.point(i);
        for (int j = 0; j < n; ++j) {
            double zp = fh.spec.point(j);
            double quad = s00 * zq * zq + 2.0 * s01 * zq * zp + s11 * zp * zp;
            fh.at(i, j) *= std::polar(1.0, 0.25 * cfg.hbar * quad);
        }
    }
    GridFunction out = fourier(fh, FourierDirection::backward, Guard::permissive);
    out.meta = f.meta + " (weyl symbol of s-ordered)";
    return out;
}

OperatorMatrix op_matrix(const Symbol& f, const StarConfig& cfg,
                         const GridSpec& phase_spec, int basis_size,
                         Guard guard) {
    if (basis_size < 1 || basis_size > 64)
        throw SpecMismatch("basis size must lie in [1, 64]");
    GridSpec qs = q_spec_of(phase_spec);
    validate_config(cfg, phase_spec);
    WeylKernel kern;
    GridFunction transformed; // keep alive for the kernel call
    if (!cfg.s_matrix.empty()) {
        // S-ordered operator == Weyl operator of the transformed symbol.
        const GridFunction* base = f.grid;
        GridFunction sampled;
        if (base == nullptr) {
            sampled = sample(*f.analytic, phase_spec);
            base = &sampled;
        }
        transformed = weyl_symbol_of_s_ordered(*base, cfg, guard);
        kern = weyl_kernel(symbol_from_grid(transformed), phase_spec, cfg.hbar,
                           Guard::permissive);
    } else {
        kern = weyl_kernel(f, phase_spec, cfg.hbar, guard);
    }
    const int n = phase_spec.n;
    std::vector<std::vector<double>> basis(static_cast<std::size_t>(basis_size));
    for (int k = 0; k < basis_size; ++k) {
        basis[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                hermite_value(k, cfg.hbar, qs.point(i));
    }
    // entries_{mn} = dq^2 psi_m^dagger K psi_n
    std::vector<cxd> k_psi(static_cast<std::size_t>(n) * basis_size);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < basis_size; ++c) {
            cxd acc(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                acc += kern.at(i, j) * basis[static_cast<std::size_t>(c)]
                                             [static_cast<std::size_t>(j)];
            k_psi[static_cast<std::size_t>(i) * basis_size + c] = acc;
        }
    OperatorMatrix out;
    out.basis_size = basis_size;
    out.hbar = cfg.hbar;
    out.symbol_meta = f.meta;
    out.entries.assign(static_cast<std::size_t>(basis_size) * basis_size,
                       cxd(0.0, 0.0));
    const double measure = qs.spacing() * qs.spacing();
    for (int m = 0; m < basis_size; ++m)
        for (int c = 0; c < basis_size; ++c) {
            cxd acc(0.0, 0.0);
            for (int i = 0; i < n; ++i)
                acc += basis[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] *
                       k_psi[static_cast<std::size_t>(i) * basis_size + c];
            out.at(m, c) = acc * measure;
        }
    return out;
}

GridFunction apply_op(const Symbol& f, const GridFunction& psi,
                      const StarConfig& cfg, const GridSpec& phase_spec,
                      Guard guard) {
    GridSpec qs = q_spec_of(phase_spec);
    if (!(psi.spec == qs))
        throw SpecMismatch("apply_op: wavefunction grid does not match");
    validate_config(cfg, phase_spec);
    WeylKernel kern;
    GridFunction transformed;
    if (!cfg.s_matrix.empty()) {
        const GridFunction* base = f.grid;
        GridFunction sampled;
        if (base == nullptr) {
            sampled = sample(*f.analytic, phase_spec);
            base = &sampled;
        }
        transformed = weyl_symbol_of_s_ordered(*base, cfg, guard);
        kern = weyl_kernel(symbol_from_grid(transformed), phase_spec, cfg.hbar,
                           Guard::permissive);
    } else {
        kern = weyl_kernel(f, phase_spec, cfg.hbar, guard);
    }
    const int n = qs.n;
    GridFunction out = make_grid_function(qs, "op applied to " + psi.meta);
    const double measure = qs.spacing();
    for (int i = 0; i < n; ++i) {
        cxd acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) acc += kern.at(i, j) * psi.at(j);
        out.at(i) = acc * measure;
    }
    return out;
}

GridFunction wigner(const GridFunction& psi, const GridFunction& phi,
                    double hbar, Guard guard) {
    require_same_spec(psi, phi, "wigner");
    if (psi.spec.dim != 1)
        throw SpecMismatch("wigner: wavefunctions live on a 1D grid");
    if (!(hbar > 0.0)) throw SpecMismatch("wigner needs hbar > 0");
    if (guard == Guard::strict) {
        require_boundary_decay(psi, "wigner(psi)");
        require_boundary_decay(phi, "wigner(phi)");
    }
    configure_threads();
    const int n = psi.spec.n;
    const int half = n / 2;
    GridSpec phase_spec = psi.spec;
    phase_spec.dim = 2;
    GridFunction out = make_grid_function(phase_spec, "wigner transform");
    const double dx = psi.spec.spacing();
    // W(q, p) = (pi hbar)^{-1} \int conj(psi(q+y)) phi(q-y) e^{2 i p y/hbar} dy
    std::vector<cxd> phase(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        double p = phase_spec.point(k);
        for (int m = 0; m < n; ++m)
            phase[static_cast<std::size_t>(k) * n + m] =
                std::polar(1.0, 2.0 * p * phase_spec.point(m) / hbar);
    }
    const double prefactor = dx / (std::numbers::pi * hbar);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        // q + y and q - y stay on the lattice; both must land inside the box.
        const int m_lo = std::max(half - i, i - (n - 1) + half);
        const int m_hi = std::min(n - 1 - i + half, i + half);
        for (int k = 0; k < n; ++k) {
            cxd acc(0.0, 0.0);
            for (int m = m_lo; m <= m_hi; ++m)
                acc += std::conj(psi.at(i + m - half)) * phi.at(i - m + half) *
                       phase[static_cast<std::size_t>(k) * n + m];
            out.at(i, k) = acc * prefactor;
        }
    }
    return out;
}

GridFunction hermite_state(int k, double hbar, const GridSpec& q_spec) {
    if (q_spec.dim != 1)
        throw SpecMismatch("hermite_state: needs a 1D grid");
    GridFunction out = make_grid_function(q_spec, "hermite_" + std::to_string(k));
    for (int i = 0; i < q_spec.n; ++i)
        out.at(i) = cxd(hermite_value(k, hbar, q_spec.point(i)), 0.0);
    return out;
}

} // namespace moyalkit
