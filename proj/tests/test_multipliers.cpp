#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "moyalkit/multipliers.hpp"

using namespace moyalkit;

namespace {
const double kPi = std::numbers::pi;

AnalyticFunction unit_gaussian_2d(double sigma) {
    return isotropic_gaussian(2, cxd(1.0 / (kPi * sigma * sigma), 0.0),
                              {0.0, 0.0}, 1.0 / (sigma * sigma));
}
} // namespace

TEST_CASE("approximate identity construction") {
    GridSpec spec{2, 128, 12.0};
    AnalyticFunction e1 = unit_gaussian_2d(2.4);
    GridFunction e1_grid = sample(e1, spec);

    ApproxIdentity first = make_approx_identity(e1_grid, 1, &e1);
    CHECK(sup_distance(first.e_n, e1_grid) < 1e-14);

    // closed-form dilation and lattice lookup agree for integer n
    ApproxIdentity exact = make_approx_identity(e1_grid, 2, &e1);
    ApproxIdentity lattice = make_approx_identity(e1_grid, 2, nullptr);
    CHECK(sup_distance(exact.e_n, lattice.e_n) / exact.e_n.max_abs() < 1e-9);
    CHECK(std::abs(grid_integral(exact.e_n).real() - 1.0) < 1e-6);

    GridFunction negative = e1_grid;
    negative.at(4, 7) = cxd(-0.5, 0.0);
    CHECK_THROWS_AS(make_approx_identity(negative, 2, nullptr), NegativeValues);

    GridFunction unnormalized = e1_grid;
    for (cxd& v : unnormalized.samples) v *= 2.0;
    CHECK_THROWS_AS(make_approx_identity(unnormalized, 2, nullptr),
                    NotNormalized);
}

TEST_CASE("twisted translations") {
    GridSpec spec{2, 128, 12.0};
    const double dx = spec.spacing();
    const double hbar = 1.0;
    GridFunction g = sample(
        isotropic_gaussian(2, cxd(1.0, 0.0), {0.3, -0.1}, 1.0), spec);

    GridFunction same = twisted_translate(g, {0.0, 0.0}, hbar);
    CHECK(sup_distance(same, g) == doctest::Approx(0.0));

    CHECK_THROWS_AS(twisted_translate(g, {0.5 * dx, 0.0}, hbar), OffLattice);

    // inverse composition returns the original (the phase cocycle cancels)
    std::array<double, 2> xi{8 * dx, -6 * dx};
    std::array<double, 2> minus_xi{-8 * dx, 6 * dx};
    GridFunction back = twisted_translate(twisted_translate(g, xi, hbar),
                                          minus_xi, hbar);
    // only compare away from the rolled-in zero band
    double worst = 0.0;
    for (int i = 16; i < 112; ++i)
        for (int j = 16; j < 112; ++j)
            worst = std::max(worst, std::abs(back.at(i, j) - g.at(i, j)));
    CHECK(worst / g.max_abs() < 1e-13);

    // cocycle: tau_xi tau_eta = e^{-(i hbar/2) eta.J xi} tau_{xi+eta}
    std::array<double, 2> eta{4 * dx, 10 * dx};
    GridFunction lhs = twisted_translate(twisted_translate(g, eta, hbar), xi,
                                         hbar);
    std::array<double, 2> xi_eta{xi[0] + eta[0], xi[1] + eta[1]};
    GridFunction rhs = twisted_translate(g, xi_eta, hbar);
    double cross = eta[0] * xi[1] - eta[1] * xi[0]; // eta.J xi
    cxd phase = std::polar(1.0, -0.5 * hbar * cross);
    for (cxd& v : rhs.samples) v *= phase;
    CHECK(sup_distance(lhs, rhs) / g.max_abs() < 1e-13);
}

TEST_CASE("convolution against dual elements") {
    GridSpec spec{1, 128, 12.0};
    GridFunction f = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0), spec);

    GridFunction ones = make_grid_function(spec);
    for (cxd& v : ones.samples) v = cxd(1.0, 0.0);
    GridFunction flat = convolve_dual(DualElement{ones, 1.0, ""}, f);
    for (int i = 32; i < 96; ++i)
        CHECK(flat.at(i).real() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));

    // second-moment dual element: closed form sqrt(pi) (x^2 + 1/2). The box
    // is only faithful where f's numerical support fits inside, so compare on
    // the interior.
    GridFunction xsq = sample(
        polynomial(1, {Monomial{{2}, cxd(1.0, 0.0)}}), spec);
    GridFunction mom = convolve_dual(DualElement{xsq, 1.0, ""}, f);
    double worst_mom = 0.0, scale_mom = 0.0;
    for (int i = 0; i < spec.n; ++i) {
        double x = spec.point(i);
        if (std::abs(x) > 6.0) continue;
        double want = std::sqrt(kPi) * (x * x + 0.5);
        scale_mom = std::max(scale_mom, want);
        worst_mom = std::max(worst_mom, std::abs(mom.at(i).real() - want) +
                                            std::abs(mom.at(i).imag()));
    }
    CHECK(worst_mom / scale_mom < 1e-9);

    // u growing faster than f decays is refused
    GridFunction growing = make_grid_function(spec);
    for (int i = 0; i < spec.n; ++i) {
        double x = spec.point(i);
        growing.at(i) = std::exp(x * x);
    }
    CHECK_THROWS_AS(convolve_dual(DualElement{growing, 1.0, ""}, f),
                    IntegrandGrowth);
}

TEST_CASE("extension functional") {
    GridSpec spec{1, 128, 12.0};
    GridFunction f0 = sample(
        isotropic_gaussian(1, cxd(std::pow(kPi, -0.5), 0.0), {0.0}, 1.0), spec);
    GridFunction h = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.2}, 1.0), spec);

    GridFunction ones = make_grid_function(spec);
    for (cxd& v : ones.samples) v = cxd(1.0, 0.0);
    cxd via_extension = extend_functional(DualElement{ones, 1.0, ""}, f0, h);
    cxd direct = grid_integral(h);
    CHECK(std::abs(via_extension - direct) / std::abs(direct) < 1e-9);

    // h == 1 with a gaussian dual element collapses to the integral of u
    GridFunction u = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {-0.4}, 0.5), spec);
    cxd total = extend_functional(DualElement{u, 1.0, ""}, f0, ones);
    CHECK(std::abs(total - grid_integral(u)) / std::abs(grid_integral(u)) <
          1e-9);

    GridFunction not_normalized = f0;
    for (cxd& v : not_normalized.samples) v *= 1.5;
    CHECK_THROWS_AS(
        extend_functional(DualElement{ones, 1.0, ""}, not_normalized, h),
        NotNormalized);

    // u h failing to decay on the box is refused
    GridFunction wide = make_grid_function(spec);
    for (int i = 0; i < spec.n; ++i) {
        double x = spec.point(i);
        wide.at(i) = std::exp(-x * x / 64.0);
    }
    CHECK_THROWS_AS(extend_functional(DualElement{ones, 1.0, ""}, f0, wide),
                    IntegrandGrowth);
}

TEST_CASE("gs-norm bound pattern for the dual convolution") {
    // |d^b (u*f)(x)| <= J G B0^|b| b_|b| / w_a(|x|/(A0+A')) with
    // J = sum |u(y)| w_a(|y|/A') dy and G the weighted norm of f: the grid
    // convolution obeys it term by term, so the norms must too.
    GridSpec spec{1, 128, 12.0};
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    GridFunction f = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0), spec);
    GridFunction xsq = sample(
        polynomial(1, {Monomial{{2}, cxd(1.0, 0.0)}}), spec);
    GridFunction conv = convolve_dual(DualElement{xsq, 2.0, ""}, f);
    const double a_prime = 2.0, a0 = 1.0, b0 = 1.0;
    const int m = 2;
    double j_u = 0.0;
    for (int i = 0; i < spec.n; ++i)
        j_u += std::abs(xsq.at(i)) *
               weight(a, std::abs(spec.point(i)) / a_prime).value();
    j_u *= spec.spacing();
    double lhs = gs_norm(conv, a, a, a0 + a_prime, b0, m).value;
    double norm_f = gs_norm(f, a, a, a0, b0, m).value;
    CHECK(lhs <= 2.0 * j_u * norm_f);
    CHECK(lhs > 0.0);
}

TEST_CASE("riemann sums") {
    GridSpec spec{1, 128, 12.0};
    AnalyticFunction f0 =
        isotropic_gaussian(1, cxd(std::pow(kPi, -0.5), 0.0), {0.0}, 1.0);
    GridFunction zero = make_grid_function(spec);
    GridFunction s0 = riemann_sequence(zero, f0, 8);
    CHECK(s0.max_abs() == doctest::Approx(0.0));

    GridFunction h = sample(
        isotropic_gaussian(1, cxd(1.0, 0.0), {0.0}, 1.0 / 9.0), spec);
    GridFunction s32 = riemann_sequence(h, f0, 32);
    CHECK(sup_distance(s32, h) < 1e-3);
    // pointwise: s_n(0) is a Riemann sum of h(0) * int f0 = h(0)
    CHECK(s32.at(spec.n / 2).real() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("multiplier experiment smoke") {
    GridSpec spec{2, 64, 8.0};
    DefiningSequence a = make_sequence(SeqKind::gevrey, 0.5, 512);
    AnalyticFunction poly = polynomial(
        2, {Monomial{{0, 0}, cxd(1.0, 0.0)}, Monomial{{2, 0}, cxd(1.0, 0.0)},
            Monomial{{0, 2}, cxd(1.0, 0.0)}});
    AnalyticFunction f = isotropic_gaussian(2, cxd(1.0, 0.0), {0.0, 0.0}, 1.0);
    StarConfig cfg{1.0, {}, StarBackend::fourier};
    MultiplierOptions options;
    options.target = 100.0;
    options.norm_order = 2;
    MultiplierReport left = multiplier_experiment(poly, f, cfg, spec, a, a,
                                                  options);
    CHECK(left.success);
    options.left = false;
    MultiplierReport right = multiplier_experiment(poly, f, cfg, spec, a, a,
                                                   options);
    CHECK(right.success);
    CHECK(left.decay_profile.size() == static_cast<std::size_t>(spec.n / 2 + 1));
}
