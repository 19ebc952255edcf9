#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "moyalkit/fourier.hpp"
#include "moyalkit/quantize.hpp"

using namespace moyalkit;

namespace {
const double kPi = std::numbers::pi;
const GridSpec kPhase{2, 128, 12.0};
const GridSpec kLine{1, 128, 12.0};

AnalyticFunction oscillator_symbol() {
    return polynomial(2, {Monomial{{2, 0}, cxd(0.5, 0.0)},
                          Monomial{{0, 2}, cxd(0.5, 0.0)}});
}
} // namespace

TEST_CASE("identity symbol acts as the identity") {
    AnalyticFunction one = polynomial(2, {Monomial{{0, 0}, cxd(1.0, 0.0)}});
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    GridFunction psi = hermite_state(2, 1.0, kLine);
    GridFunction out = apply_op(symbol_from_analytic(one), psi, cfg, kPhase);
    CHECK(sup_distance(out, psi) / psi.max_abs() < 1e-6);

    OperatorMatrix m = op_matrix(symbol_from_analytic(one), cfg, kPhase, 12);
    double worst = 0.0;
    for (int r = 0; r < 12; ++r)
        for (int c = 0; c < 12; ++c)
            worst = std::max(worst,
                             std::abs(m.at(r, c) - (r == c ? cxd(1.0, 0.0)
                                                           : cxd(0.0, 0.0))));
    CHECK(worst < 1e-6);
}

TEST_CASE("position and momentum symbols") {
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    GridFunction psi = hermite_state(0, 1.0, kLine);

    AnalyticFunction q_sym = polynomial(2, {Monomial{{1, 0}, cxd(1.0, 0.0)}});
    GridFunction q_psi = apply_op(symbol_from_analytic(q_sym), psi, cfg, kPhase);
    GridFunction want = psi;
    for (int i = 0; i < kLine.n; ++i) want.at(i) *= kLine.point(i);
    CHECK(sup_distance(q_psi, want) / psi.max_abs() < 1e-6);

    AnalyticFunction p_sym = polynomial(2, {Monomial{{0, 1}, cxd(1.0, 0.0)}});
    GridFunction p_psi = apply_op(symbol_from_analytic(p_sym), psi, cfg, kPhase);
    GridFunction dpsi = derivative(psi, {1});
    for (cxd& v : dpsi.samples) v *= cxd(0.0, -1.0); // -i hbar d/dq at hbar=1
    CHECK(sup_distance(p_psi, dpsi) / dpsi.max_abs() < 1e-6);
}

TEST_CASE("oscillator symbol quantizes to the oscillator spectrum") {
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    OperatorMatrix m =
        op_matrix(symbol_from_analytic(oscillator_symbol()), cfg, kPhase, 12);
    for (int n = 0; n <= 10; ++n)
        CHECK(std::abs(m.at(n, n) - cxd(n + 0.5, 0.0)) < 1e-4);
    CHECK(m.hermiticity_defect() < 1e-8);

    GridFunction h3 = hermite_state(3, 1.0, kLine);
    GridFunction img =
        apply_op(symbol_from_analytic(oscillator_symbol()), h3, cfg, kPhase);
    GridFunction want = h3;
    for (cxd& v : want.samples) v *= 3.5;
    CHECK(sup_distance(img, want) / want.max_abs() < 1e-4);
}

TEST_CASE("ground-state projector annihilates excited states") {
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    AnalyticFunction proj =
        isotropic_gaussian(2, cxd(2.0, 0.0), {0.0, 0.0}, 1.0);
    GridFunction psi1 = hermite_state(1, 1.0, kLine);
    GridFunction out = apply_op(symbol_from_analytic(proj), psi1, cfg, kPhase);
    CHECK(out.max_abs() / psi1.max_abs() < 1e-3);
    // and fixes the ground state
    GridFunction psi0 = hermite_state(0, 1.0, kLine);
    GridFunction kept = apply_op(symbol_from_analytic(proj), psi0, cfg, kPhase);
    CHECK(sup_distance(kept, psi0) / psi0.max_abs() < 1e-3);
}

TEST_CASE("wigner transform of the ground state") {
    const double hbar = 1.0;
    GridFunction psi0 = hermite_state(0, hbar, kLine);
    GridFunction w = wigner(psi0, psi0, hbar);
    GridFunction expect = sample(
        isotropic_gaussian(2, cxd(1.0 / (kPi * hbar), 0.0), {0.0, 0.0},
                           1.0 / hbar),
        w.spec);
    CHECK(sup_distance(w, expect) / expect.max_abs() < 1e-6);
    CHECK(std::abs(grid_integral(w) - cxd(1.0, 0.0)) < 1e-6);

    GridFunction psi1 = hermite_state(1, hbar, kLine);
    GridFunction cross = wigner(psi0, psi1, hbar);
    CHECK(std::abs(grid_integral(cross)) < 1e-8);
}

TEST_CASE("matrix entries match the applied operator") {
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.4, -0.3}, 0.8), kPhase);
    Symbol sym = symbol_from_grid(f);
    OperatorMatrix m = op_matrix(sym, cfg, kPhase, 10);
    for (int n : {0, 3}) {
        GridFunction psi_n = hermite_state(n, 1.0, kLine);
        GridFunction image = apply_op(sym, psi_n, cfg, kPhase);
        for (int k : {1, 4}) {
            GridFunction psi_k = hermite_state(k, 1.0, kLine);
            cxd ip(0.0, 0.0);
            for (int i = 0; i < kLine.n; ++i)
                ip += std::conj(psi_k.at(i)) * image.at(i);
            ip *= kLine.spacing();
            CHECK(std::abs(ip - m.at(k, n)) < 1e-8);
        }
    }
    CHECK(m.hermiticity_defect() < 1e-8); // real symbol at S = 0
}

TEST_CASE("s-ordered quantization goes through the transformed symbol") {
    StarConfig scfg{1.0, {0.0, 0.3, 0.3, 0.0}, StarBackend::fourier};
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.5, 0.1}, 1.0), kPhase);
    OperatorMatrix direct = op_matrix(symbol_from_grid(f), scfg, kPhase, 16);
    GridFunction transformed = weyl_symbol_of_s_ordered(f, scfg);
    StarConfig weyl{1.0, {}, StarBackend::fourier};
    OperatorMatrix via =
        op_matrix(symbol_from_grid(transformed), weyl, kPhase, 16);
    CHECK(max_entry_distance(direct, via, -1) < 1e-8);
    // S = 0 transform is the identity on symbols
    GridFunction same = weyl_symbol_of_s_ordered(f, weyl);
    CHECK(sup_distance(same, f) == doctest::Approx(0.0));
}

TEST_CASE("tracial pairing at K = 32") {
    const double hbar = 1.0;
    StarConfig cfg{hbar, {}, StarBackend::fourier};
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 0.25), kPhase);
    OperatorMatrix m = op_matrix(symbol_from_grid(f), cfg, kPhase, 32);
    cxd want = grid_integral(f) / (2.0 * kPi * hbar);
    CHECK(std::abs(m.trace() - want) / std::abs(want) < 1e-2);
}

TEST_CASE("argument validation") {
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    CHECK_THROWS_AS(
        op_matrix(symbol_from_analytic(oscillator_symbol()), cfg, kPhase, 65),
        SpecMismatch);
    CHECK_THROWS_AS(
        op_matrix(symbol_from_analytic(oscillator_symbol()), cfg, kLine, 8),
        SpecMismatch);
    GridFunction psi_wrong = hermite_state(0, 1.0, GridSpec{1, 64, 12.0});
    CHECK_THROWS_AS(apply_op(symbol_from_analytic(oscillator_symbol()),
                             psi_wrong, cfg, kPhase),
                    SpecMismatch);
}
