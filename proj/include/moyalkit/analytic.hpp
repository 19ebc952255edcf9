#pragma once

#include <functional>
#include <string>
#include <vector>

#include "moyalkit/grid.hpp"

namespace moyalkit {

// Closed-form test objects. Keeping the evaluator around (instead of only the
// samples) lets resampling, half-lattice kernel construction and Riemann sums
// evaluate off-grid points exactly.
struct AnalyticFunction {
    int dim = 1;
    std::string description;
    std::function<cxd(const double*)> eval;

    cxd operator()(double x) const { return eval(&x); }
    cxd operator()(double x, double y) const {
        double pt[2] = {x, y};
        return eval(pt);
    }
};

// amp * exp(-(x-c) . Lam (x-c)); Lam symmetric positive definite, row-major.
AnalyticFunction gaussian(int dim, cxd amp, std::vector<double> center,
                          std::vector<double> lam);
// Isotropic helper: amp * exp(-lambda |x - c|^2).
AnalyticFunction isotropic_gaussian(int dim, cxd amp, std::vector<double> center,
                                    double lambda);
// exp(i x . Q x), Q real symmetric row-major.
AnalyticFunction chirp(int dim, std::vector<double> q_matrix);
// L^2-normalized Hermite function of index k at scale hbar (1D).
AnalyticFunction hermite_function(int k, double hbar);
// sum_m coeff_m * prod_a x_a^{powers_m[a]}
struct Monomial {
    std::vector<int> powers;
    cxd coeff;
};
AnalyticFunction polynomial(int dim, std::vector<Monomial> monomials);

AnalyticFunction product(AnalyticFunction f, AnalyticFunction g);
AnalyticFunction sum(AnalyticFunction f, AnalyticFunction g);
AnalyticFunction scale(cxd c, AnalyticFunction f);

// Pointwise value of the normalized Hermite function (stable recurrence).
double hermite_value(int k, double hbar, double q);

GridFunction sample(const AnalyticFunction& fn, const GridSpec& spec);

} // namespace moyalkit
