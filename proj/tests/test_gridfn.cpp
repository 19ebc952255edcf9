#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "moyalkit/analytic.hpp"
#include "moyalkit/fourier.hpp"
#include "moyalkit/grid.hpp"
#include "moyalkit/quantize.hpp"

using namespace moyalkit;

namespace {
const double kPi = std::numbers::pi;

double rel_sup(const GridFunction& got, const GridFunction& want) {
    return sup_distance(got, want) / want.max_abs();
}
} // namespace

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(validate_spec(GridSpec{1, 100, 8.0}), SpecMismatch);
    CHECK_THROWS_AS(validate_spec(GridSpec{1, 16, 8.0}), SpecMismatch);
    CHECK_THROWS_AS(validate_spec(GridSpec{1, 1024, 8.0}), SpecMismatch);
    CHECK_THROWS_AS(validate_spec(GridSpec{3, 64, 8.0}), SpecMismatch);
    CHECK_THROWS_AS(validate_spec(GridSpec{2, 64, -1.0}), SpecMismatch);
    GridSpec ok{2, 128, 12.0};
    CHECK(ok.spacing() == doctest::Approx(0.1875));
    CHECK(ok.point(64) == doctest::Approx(0.0));
    CHECK(ok.point(0) == doctest::Approx(-12.0));
}

TEST_CASE("fourier round trip is unitary") {
    GridSpec spec{2, 128, 12.0};
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(1.0, 0.3), {0.7, -0.4}, 0.9), spec);
    GridFunction back =
        fourier(fourier(f, FourierDirection::forward), FourierDirection::backward);
    CHECK(rel_sup(back, f) < 1e-10);

    double l2_before = grid_l2_norm(f);
    double l2_after = grid_l2_norm(fourier(f, FourierDirection::forward));
    CHECK(std::abs(l2_after - l2_before) / l2_before < 1e-8); // Parseval
}

TEST_CASE("gaussian transforms match closed forms") {
    // e^{-x^2/2} is self-dual under the unitary convention
    GridSpec spec{1, 128, 12.0};
    AnalyticFunction half = isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 0.5);
    GridFunction fh = fourier(sample(half, spec), FourierDirection::forward);
    CHECK(rel_sup(fh, sample(half, fh.spec)) < 1e-8);

    // e^{-x^2} -> 2^{-1/2} e^{-z^2/4}
    AnalyticFunction unit = isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0);
    GridFunction gh = fourier(sample(unit, spec), FourierDirection::forward);
    AnalyticFunction expect = isotropic_gaussian(
        1, cxd(1.0 / std::sqrt(2.0), 0.0), {0.0}, 0.25);
    CHECK(rel_sup(gh, sample(expect, gh.spec)) < 1e-8);

    // frequency box half-width is pi N / (2 L)
    CHECK(gh.spec.half_width == doctest::Approx(kPi * 128 / 24.0));
}

TEST_CASE("hermite functions are transform eigenvectors") {
    GridSpec spec{1, 128, 12.0};
    for (int k : {0, 1, 2, 5}) {
        GridFunction psi = hermite_state(k, 1.0, spec);
        CHECK(std::abs(grid_l2_norm(psi) - 1.0) < 1e-8);
        GridFunction psih = fourier(psi, FourierDirection::forward);
        GridFunction expect = hermite_state(k, 1.0, psih.spec);
        cxd phase = std::pow(cxd(0.0, -1.0), k);
        for (cxd& v : expect.samples) v *= phase;
        CHECK(rel_sup(psih, expect) < 1e-8);
    }
}

TEST_CASE("boundary leak guard") {
    GridSpec spec{1, 64, 4.0};
    GridFunction wide = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 0.1), spec);
    CHECK_FALSE(wide.boundary_decay_ok());
    CHECK_THROWS_AS(fourier(wide, FourierDirection::forward), BoundaryLeak);
    CHECK_NOTHROW(fourier(wide, FourierDirection::forward, Guard::permissive));
}

TEST_CASE("spectral derivatives") {
    GridSpec spec{1, 128, 10.0};
    AnalyticFunction g = isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0);
    GridFunction f = sample(g, spec);

    GridFunction d = derivative(f, {1});
    GridFunction expect = make_grid_function(spec);
    for (int i = 0; i < spec.n; ++i) {
        double x = spec.point(i);
        expect.at(i) = -2.0 * x * std::exp(-x * x);
    }
    CHECK(sup_distance(d, expect) / expect.max_abs() < 1e-7);

    GridFunction same = derivative(f, {0});
    CHECK(sup_distance(same, f) == doctest::Approx(0.0));

    CHECK_THROWS_AS(derivative(f, {9}), OrderTooHigh);
    CHECK_THROWS_AS(derivative(f, std::vector<int>{1, 1}), SpecMismatch);
}

TEST_CASE("derivative commutes with whole-cell translation") {
    GridSpec spec{1, 128, 12.0};
    GridFunction f = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0), spec);
    GridFunction shifted = translate_cells(f, {5, 0});
    GridFunction a = derivative(shifted, {1});
    GridFunction b = translate_cells(derivative(f, {1}), {5, 0});
    CHECK(sup_distance(a, b) / f.max_abs() < 1e-9);
}

TEST_CASE("gsgf round trip preserves bits") {
    GridSpec spec{2, 32, 6.0};
    GridFunction f = sample(
        isotropic_gaussian(2, cxd(0.3, 0.7), {0.5, -0.5}, 1.0), spec);
    std::string path = "roundtrip.gsgf";
    write_gsgf(f, path);
    GridFunction g = read_gsgf(path);
    CHECK(g.spec == f.spec);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        CHECK(g.samples[i].real() == f.samples[i].real());
        CHECK(g.samples[i].imag() == f.samples[i].imag());
    }
    write_csv(f, "roundtrip.csv");
    std::remove("roundtrip.gsgf");
    std::remove("roundtrip.csv");
}

TEST_CASE("sample families") {
    GridSpec spec{2, 64, 8.0};
    GridFunction c = sample(chirp(2, {0.0, 2.0, 2.0, 0.0}), spec);
    // e^{i x.Qx} with the off-diagonal matrix: phase 4 q p
    int i = 40, j = 24;
    double q = spec.point(i), p = spec.point(j);
    CHECK(c.at(i, j).real() == doctest::Approx(std::cos(4.0 * q * p)));
    CHECK(c.at(i, j).imag() == doctest::Approx(std::sin(4.0 * q * p)));

    GridFunction h0 = sample(hermite_function(0, 1.0), GridSpec{1, 128, 8.0});
    CHECK(h0.at(64).real() == doctest::Approx(std::pow(kPi, -0.25)));
    CHECK(std::abs(grid_l2_norm(h0) - 1.0) < 1e-8);

    CHECK_THROWS_AS(sample(hermite_function(0, 1.0), spec), UnsupportedFamily);
    CHECK_THROWS_AS(chirp(2, {1.0}), UnsupportedFamily);
}
