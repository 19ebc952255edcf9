#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "moyalkit/analytic.hpp"
#include "moyalkit/norms.hpp"

using namespace moyalkit;

namespace {
DefiningSequence gevrey_half(int n_max = 512) {
    return make_sequence(SeqKind::gevrey, 0.5, n_max);
}
} // namespace

TEST_CASE("gs norm basics") {
    GridSpec spec{2, 128, 12.0};
    DefiningSequence a = gevrey_half();
    GridFunction zero = make_grid_function(spec);
    CHECK(gs_norm(zero, a, a, 2.0, 2.0, 2).value == doctest::Approx(0.0));

    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0), spec);
    NormReport base = gs_norm(g, a, a, 4.0, 4.0, 4);
    CHECK(std::isfinite(base.value));
    CHECK(base.value > 0.0);

    // nonincreasing in A and B, nondecreasing in M
    CHECK(gs_norm(g, a, a, 2.0, 4.0, 4).value >= base.value);
    CHECK(gs_norm(g, a, a, 4.0, 2.0, 4).value >= base.value);
    CHECK(gs_norm(g, a, a, 4.0, 4.0, 2).value <= base.value);

    // the moment form truncates the decay index too, so it cannot exceed the
    // weighted form
    NormReport moment = gs_norm_moment(g, a, a, 4.0, 4.0, 4);
    CHECK(moment.value <= base.value * (1.0 + 1e-12));
}

TEST_CASE("constant-one decay sequence turns the weight into a support gate") {
    GridSpec spec{1, 128, 12.0};
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    DefiningSequence b = gevrey_half();
    GridFunction g = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0), spec);
    // the gaussian is numerically supported well beyond |x| = 1
    NormReport violated = gs_norm(g, ones, b, 1.0, 2.0, 0);
    CHECK(violated.infinite);
    CHECK(violated.support_violation);
    // a box big enough to hold the numerical support is fine
    NormReport fine = gs_norm(g, ones, b, 12.0, 2.0, 0);
    CHECK_FALSE(fine.infinite);
    CHECK(fine.value == doctest::Approx(1.0));
}

TEST_CASE("e norm examples") {
    GridSpec spec{1, 128, 12.0};
    DefiningSequence a = gevrey_half();

    GridFunction one = make_grid_function(spec);
    for (cxd& v : one.samples) v = cxd(1.0, 0.0);
    CHECK(e_norm(one, a, a, 2.0, 2.0, 0).value == doctest::Approx(1.0));

    // polynomial x^2: finite at every A, and monotone increasing in A (a
    // larger A weakens the weight in the denominator). Finite differences
    // carry the derivatives; no boundary decay.
    GridFunction xsq =
        sample(polynomial(1, {Monomial{{2}, cxd(1.0, 0.0)}}), spec);
    double n1 = e_norm(xsq, a, a, 1.0, 2.0, 2).value;
    double n2 = e_norm(xsq, a, a, 2.0, 2.0, 2).value;
    double n4 = e_norm(xsq, a, a, 4.0, 2.0, 2).value;
    CHECK(std::isfinite(n1));
    CHECK(std::isfinite(n4));
    CHECK(n2 >= n1);
    CHECK(n4 >= n2);

    // constant-one decay sequence restricts the sup to |x| <= A
    DefiningSequence ones = make_sequence(SeqKind::constant_one, 0.0, 64);
    NormReport restricted = e_norm(xsq, ones, a, 3.0, 2.0, 0);
    CHECK(restricted.value == doctest::Approx(9.0).epsilon(0.15));
}

TEST_CASE("e norm witnesses divergence of e^{x^2}") {
    // e^{x^2} beats w_a(x/A) ~ e^{x^2/(2 e A^2)} once A > 1/sqrt(2e), so the
    // estimator must grow without bound as the box widens
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    auto grow = [](double x) { return std::exp(x * x); };
    double prev = 0.0;
    for (double L : {6.0, 9.0, 12.0}) {
        GridSpec spec{1, 128, L};
        GridFunction h = make_grid_function(spec);
        for (int i = 0; i < spec.n; ++i) h.at(i) = grow(spec.point(i));
        double v = e_norm(h, a, a, 1.0, 2.0, 0).log_value;
        CHECK(v > prev + 1.0);
        prev = v;
    }
}

TEST_CASE("truncation propagates instead of under-reporting") {
    GridSpec spec{1, 128, 12.0};
    DefiningSequence small = make_sequence(SeqKind::gevrey, 0.5, 64);
    GridFunction g = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0), spec);
    // |x|/A reaches 120: the weight sup needs ~t^2/e  >> 64 indices
    CHECK_THROWS_AS(gs_norm(g, small, small, 0.1, 2.0, 0), TruncationError);
}

TEST_CASE("class constant fit") {
    GridSpec spec{2, 128, 12.0};
    DefiningSequence a = gevrey_half();
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0), spec);
    auto fit = fit_class_constants(g, a, a, 2, 100.0);
    REQUIRE(fit.has_value());
    CHECK(fit->norm_value <= 100.0);

    GridFunction zero = make_grid_function(spec);
    auto zfit = fit_class_constants(zero, a, a, 2, 100.0);
    REQUIRE(zfit.has_value());
    CHECK(zfit->A == doctest::Approx(std::pow(2.0, -6.0)));
    CHECK(zfit->B == doctest::Approx(std::pow(2.0, -6.0)));

    // |chirp| = 1 everywhere: no decay, so no sub-box constants exist (the
    // weight defeats it at every A the box can witness)
    GridFunction c = sample(chirp(2, {0.0, 1.0, 1.0, 0.0}), spec);
    CHECK_FALSE(fit_class_constants(c, a, a, 2, 10.0, 3.0).has_value());
    GridFunction g2 = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0), spec);
    CHECK(fit_class_constants(g2, a, a, 2, 10.0, 3.0).has_value());
}
