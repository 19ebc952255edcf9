#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "moyalkit/analytic.hpp"
#include "moyalkit/star.hpp"

using namespace moyalkit;

namespace {
const double kPi = std::numbers::pi;

double rel_sup(const GridFunction& got, const GridFunction& want) {
    return sup_distance(got, want) / want.max_abs();
}

GridFunction radial(const GridSpec& spec, double amp, double lambda) {
    return sample(isotropic_gaussian(2, cxd(amp, 0.0), {0.0, 0.0}, lambda),
                  spec);
}
} // namespace

// Closed form (derived by Gaussian integration of the defining formulas, and
// cross-checked against the ground-state projector idempotence):
//   e^{-l|x|^2} *_hbar e^{-m|x|^2}
//     = (1 + l m hbar^2)^{-1} exp(-(l+m)/(1 + l m hbar^2) |x|^2)
//   e^{-l|.|^2} (tw_theta) e^{-m|.|^2}
//     = pi/(l+m) exp(-((l m + theta^2/16)/(l+m)) |z|^2)
TEST_CASE("gaussian star product closed form, fourier backend") {
    GridSpec spec{2, 64, 9.0};
    const double l = 1.0, m = 0.7, hbar = 1.0;
    GridFunction f = radial(spec, 1.0, l);
    GridFunction g = radial(spec, 1.0, m);
    const double denom = 1.0 + l * m * hbar * hbar;
    GridFunction expect = radial(spec, 1.0 / denom, (l + m) / denom);
    StarConfig fourier_cfg{hbar, {}, StarBackend::fourier};
    CHECK(rel_sup(moyal(f, g, fourier_cfg), expect) < 1e-8);
}

TEST_CASE("gaussian star product closed form, direct backend") {
    // the direct quadrature needs the desk-scale grid: its inner transform
    // runs at frequencies up to 2L/hbar, which a 64-point axis cannot hold
    GridSpec spec{2, 128, 12.0};
    const double l = 1.0, m = 0.7, hbar = 1.0;
    GridFunction f = radial(spec, 1.0, l);
    GridFunction g = radial(spec, 1.0, m);
    const double denom = 1.0 + l * m * hbar * hbar;
    GridFunction expect = radial(spec, 1.0 / denom, (l + m) / denom);
    StarConfig direct{hbar, {}, StarBackend::direct_quadrature};
    CHECK(rel_sup(moyal(f, g, direct), expect) < 1e-8);
}

TEST_CASE("twisted convolution closed form") {
    GridSpec spec{2, 64, 9.0};
    const double l = 1.0, m = 0.6, theta = 1.3;
    GridFunction u = radial(spec, 1.0, l);
    GridFunction v = radial(spec, 1.0, m);
    GridFunction got = twisted_convolution(u, v, theta);
    double amp = kPi / (l + m);
    double rate = (l * m + theta * theta / 16.0) / (l + m);
    CHECK(rel_sup(got, radial(spec, amp, rate)) < 1e-8);

    // theta = 0 reduces to the plain convolution closed form
    GridFunction plain = twisted_convolution(u, v, 0.0);
    CHECK(rel_sup(plain, radial(spec, amp, l * m / (l + m))) < 1e-8);

    // the twist phase vanishes at the center point
    int c = spec.n / 2;
    CHECK(std::abs(got.at(c, c) - plain.at(c, c)) <=
          1e-12 * std::abs(plain.at(c, c)));
}

TEST_CASE("ground state reproduces itself under the product") {
    // high-resolution direct quadrature against the analytic constant
    GridSpec spec{2, 256, 12.0};
    const double hbar = 1.0;
    GridFunction w0 = radial(spec, 1.0 / (kPi * hbar), 1.0 / hbar);
    StarConfig direct{hbar, {}, StarBackend::direct_quadrature};
    GridFunction prod = moyal(w0, w0, direct);
    GridFunction expect = w0;
    for (cxd& v : expect.samples) v *= 1.0 / (2.0 * kPi * hbar);
    CHECK(rel_sup(prod, expect) < 1e-6);
}

TEST_CASE("hbar zero branches are pointwise products") {
    GridSpec spec{2, 64, 9.0};
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.2), {0.5, -0.3}, 1.0), spec);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(0.8, 0.0), {-0.2, 0.4}, 0.8), spec);
    GridFunction want = pointwise_product(f, g);
    StarConfig zero{0.0, {}, StarBackend::fourier};
    CHECK(sup_distance(moyal(f, g, zero), want) == doctest::Approx(0.0));
    StarConfig zero_s{0.0, {0.0, 0.5, 0.5, 0.0}, StarBackend::fourier};
    CHECK(sup_distance(star_s(f, g, zero_s), want) == doctest::Approx(0.0));
    GridFunction conv = twisted_convolution(f, g, 0.0);
    GridFunction conv2 = deformed_convolution(f, g, zero_s);
    CHECK(rel_sup(conv2, conv) < 1e-12);
}

TEST_CASE("deformed convolution agrees with the twisted one at S = 0") {
    GridSpec spec{2, 64, 9.0};
    GridFunction u = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.4, 0.1}, 1.0), spec);
    GridFunction v = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {-0.3, 0.2}, 0.7), spec);
    StarConfig cfg{1.0, {0.0, 0.0, 0.0, 0.0}, StarBackend::fourier};
    CHECK(rel_sup(deformed_convolution(u, v, cfg),
                  twisted_convolution(u, v, 1.0)) < 1e-8);
}

TEST_CASE("star_s at S = 0 reproduces the plain product") {
    GridSpec spec{2, 64, 9.0};
    GridFunction f = radial(spec, 1.0, 1.0);
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.3, -0.2}, 0.9), spec);
    StarConfig s0{1.0, {0.0, 0.0, 0.0, 0.0}, StarBackend::fourier};
    StarConfig plain{1.0, {}, StarBackend::fourier};
    CHECK(rel_sup(star_s(f, g, s0), moyal(f, g, plain)) < 1e-8);
}

TEST_CASE("config validation") {
    GridSpec spec{2, 64, 9.0};
    GridFunction f = radial(spec, 1.0, 1.0);
    StarConfig bad{1.0, {0.0, 0.3, 0.2, 0.0}, StarBackend::fourier};
    CHECK_THROWS_AS(star_s(f, f, bad), SpecMismatch);
    StarConfig neg{-1.0, {}, StarBackend::fourier};
    CHECK_THROWS_AS(moyal(f, f, neg), SpecMismatch);

    GridFunction g1d =
        sample(isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0),
               GridSpec{1, 64, 9.0});
    CHECK_THROWS_AS(twisted_convolution(g1d, g1d, 1.0), SpecMismatch);

    GridSpec other{2, 64, 8.0};
    GridFunction h = radial(other, 1.0, 1.0);
    CHECK_THROWS_AS(moyal(f, h, StarConfig{}), SpecMismatch);
}

TEST_CASE("symplectic transform identities") {
    // desk scale: the kernel frequency 2L/hbar must sit inside the Nyquist
    // band with room for the test functions' spectral width
    GridSpec spec{2, 128, 12.0};
    const double hbar = 1.0;
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.6, -0.4}, 1.0), spec);
    GridFunction twice = symplectic_fourier(
        symplectic_fourier(f, hbar, SymplecticSign::standard), hbar,
        SymplecticSign::standard, Guard::permissive);
    CHECK(rel_sup(twice, f) < 1e-7); // involution (aliasing floor)

    // even functions return unchanged through the conjugate round trip
    GridFunction even = radial(spec, 1.0, 0.8);
    GridFunction mixed = symplectic_fourier(
        symplectic_fourier(even, hbar, SymplecticSign::standard), hbar,
        SymplecticSign::conjugate, Guard::permissive);
    CHECK(rel_sup(mixed, even) < 1e-7);

    // e^{-|x|^2/hbar} is a fixed point with factor exactly one
    GridFunction fixed = radial(spec, 1.0, 1.0 / hbar);
    CHECK(rel_sup(symplectic_fourier(fixed, hbar, SymplecticSign::standard),
                  fixed) < 1e-9);
}
