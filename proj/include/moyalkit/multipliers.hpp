#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "moyalkit/analytic.hpp"
#include "moyalkit/grid.hpp"
#include "moyalkit/norms.hpp"
#include "moyalkit/star.hpp"

namespace moyalkit {

// e_n(z) = n^{2d} e1(n z): nonnegative, unit grid integral within 1e-6.
struct ApproxIdentity {
    GridFunction e1;
    int n = 1;
    GridFunction e_n;
};

// When e1 carries a closed form the dilation is evaluated exactly; otherwise
// the scaled argument lands on the lattice for integer n and is looked up.
ApproxIdentity make_approx_identity(const GridFunction& e1, int n,
                                    const AnalyticFunction* closed_form = nullptr);

// tau_xi g(z) = e^{(i hbar/2) xi.J z} g(z - xi); conjugate flips the phase
// sign. xi must be a whole number of grid cells per axis.
GridFunction twisted_translate(const GridFunction& g,
                               const std::array<double, 2>& xi, double hbar,
                               SymplecticSign sign = SymplecticSign::standard);

// A dual element represented by a locally integrable function of
// weight-bounded growth, acting by integration.
struct DualElement {
    GridFunction representation;
    double growth_A = 1.0; // (a, A) certificate for finite e-norm
    std::string notes;
};

// (u * f)(x) = \int u(y) f(x - y) dy; refuses pairs whose integrand fails to
// decay at the boundary of the box.
GridFunction convolve_dual(const DualElement& u, const GridFunction& f);

// <u~, h> = \int (u * h_xi)(xi) dxi with h_xi(x) = h(xi - x) f0(x); f0 must
// have unit grid integral. The outer integrand must decay below 1e-8 relative
// at the boundary.
cxd extend_functional(const DualElement& u, const GridFunction& f0,
                      const GridFunction& h);

// s_n(x) = sum_{|alpha| <= n^2} h(x) f0(alpha/n - x) / n^d over integer
// multi-indices; f0 is evaluated in closed form at the off-grid nodes.
GridFunction riemann_sequence(const GridFunction& h, const AnalyticFunction& f0,
                              int n);

struct MultiplierReport {
    bool success = false;
    double fitted_A = 0.0;
    double fitted_B = 0.0;
    double norm_value = 0.0;
    double window_width = 0.0;
    double window_sensitivity = 0.0; // sup-relative change under the narrower window
    double box_half_width = 0.0;
    std::vector<std::pair<double, double>> decay_profile; // (|x|, max |h*f|)
};

struct MultiplierOptions {
    double target = 100.0;
    int norm_order = 2;
    double window_factor = 1.2;     // W = L / window_factor
    double window_factor_alt = 1.6; // second W for the sensitivity report
    bool window_h = true;           // growing symbols get the window
    bool left = true;               // h * f (true) or f * h (false)
};

// Star-multiplies a candidate multiplier h against a rapidly decaying f via
// the fourier backend and fits class constants on the result.
MultiplierReport multiplier_experiment(const AnalyticFunction& h,
                                       const AnalyticFunction& f,
                                       const StarConfig& cfg,
                                       const GridSpec& spec,
                                       const DefiningSequence& a,
                                       const DefiningSequence& b,
                                       const MultiplierOptions& options);

} // namespace moyalkit
