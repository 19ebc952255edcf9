#include "moyalkit/analytic.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace moyalkit {

namespace {

void require_dim(int dim, const char* what) {
    if (dim != 1 && dim != 2)
        throw UnsupportedFamily(std::string(what) + ": dim must be 1 or 2");
}

double quad_form(const std::vector<double>& m, const double* x, int dim) {
    double acc = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            acc += x[i] * m[static_cast<std::size_t>(i) * dim + j] * x[j];
    return acc;
}

} // namespace

double hermite_value(int k, double hbar, double q) {
    // phi_k in the unit-scale variable u = q / sqrt(hbar); the recurrence on
    // the normalized functions (Gaussian included) stays bounded.
    const double u = q / std::sqrt(hbar);
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
    for (int m = 1; m <= k; ++m) {
        double next = std::sqrt(2.0 / m) * u * cur -
                      std::sqrt((m - 1.0) / m) * prev;
        prev = cur;
        cur = next;
    }
    return cur / std::pow(hbar, 0.25);
}

AnalyticFunction gaussian(int dim, cxd amp, std::vector<double> center,
                          std::vector<double> lam) {
    require_dim(dim, "gaussian");
    if (static_cast<int>(center.size()) != dim ||
        static_cast<int>(lam.size()) != dim * dim)
        throw UnsupportedFamily("gaussian: center/matrix arity mismatch");
    AnalyticFunction f;
    f.dim = dim;
    f.description = "gaussian";
    f.eval = [dim, amp, center = std::move(center),
              lam = std::move(lam)](const double* x) {
        double d[2] = {0.0, 0.0};
        for (int i = 0; i < dim; ++i) d[i] = x[i] - center[static_cast<std::size_t>(i)];
        return amp * std::exp(-quad_form(lam, d, dim));
    };
    return f;
}

AnalyticFunction isotropic_gaussian(int dim, cxd amp, std::vector<double> center,
                                    double lambda) {
    std::vector<double> lam(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) lam[static_cast<std::size_t>(i) * dim + i] = lambda;
    return gaussian(dim, amp, std::move(center), std::move(lam));
}

AnalyticFunction chirp(int dim, std::vector<double> q_matrix) {
    require_dim(dim, "chirp");
    if (static_cast<int>(q_matrix.size()) != dim * dim)
        throw UnsupportedFamily("chirp: matrix arity mismatch");
    AnalyticFunction f;
    f.dim = dim;
    f.description = "chirp";
    f.eval = [dim, q = std::move(q_matrix)](const double* x) {
        return std::exp(cxd(0.0, quad_form(q, x, dim)));
    };
    return f;
}

AnalyticFunction hermite_function(int k, double hbar) {
    if (k < 0 || !(hbar > 0.0))
        throw UnsupportedFamily("hermite: need k >= 0 and hbar > 0");
    AnalyticFunction f;
    f.dim = 1;
    f.description = "hermite_" + std::to_string(k);
    f.eval = [k, hbar](const double* x) {
        return cxd(hermite_value(k, hbar, x[0]), 0.0);
    };
    return f;
}

AnalyticFunction polynomial(int dim, std::vector<Monomial> monomials) {
    require_dim(dim, "polynomial");
    for (const auto& m : monomials)
        if (static_cast<int>(m.powers.size()) != dim)
            throw UnsupportedFamily("polynomial: monomial arity mismatch");
    AnalyticFunction f;
    f.dim = dim;
    f.description = "polynomial";
    f.eval = [dim, ms = std::move(monomials)](const double* x) {
        cxd acc(0.0, 0.0);
        for (const auto& m : ms) {
            double term = 1.0;
            for (int i = 0; i < dim; ++i)
                for (int p = 0; p < m.powers[static_cast<std::size_t>(i)]; ++p)
                    term *= x[i];
            acc += m.coeff * term;
        }
        return acc;
    };
    return f;
}

AnalyticFunction product(AnalyticFunction f, AnalyticFunction g) {
    if (f.dim != g.dim) throw UnsupportedFamily("product: dim mismatch");
    AnalyticFunction out;
    out.dim = f.dim;
    out.description = f.description + "*" + g.description;
    out.eval = [f = std::move(f.eval), g = std::move(g.eval)](const double* x) {
        return f(x) * g(x);
    };
    return out;
}

AnalyticFunction sum(AnalyticFunction f, AnalyticFunction g) {
    if (f.dim != g.dim) throw UnsupportedFamily("sum: dim mismatch");
    AnalyticFunction out;
    out.dim = f.dim;
    out.description = f.description + "+" + g.description;
    out.eval = [f = std::move(f.eval), g = std::move(g.eval)](const double* x) {
        return f(x) + g(x);
    };
    return out;
}

AnalyticFunction scale(cxd c, AnalyticFunction f) {
    AnalyticFunction out;
    out.dim = f.dim;
    out.description = f.description + " scaled";
    out.eval = [c, f = std::move(f.eval)](const double* x) { return c * f(x); };
    return out;
}

GridFunction sample(const AnalyticFunction& fn, const GridSpec& spec) {
    if (fn.dim != spec.dim)
        throw UnsupportedFamily("sample: expression dim does not match grid");
    GridFunction out = make_grid_function(spec, fn.description);
    const int n = spec.n;
    if (spec.dim == 1) {
        for (int i = 0; i < n; ++i) {
            double x = spec.point(i);
            out.at(i) = fn.eval(&x);
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double pt[2] = {spec.point(i), spec.point(j)};
                out.at(i, j) = fn.eval(pt);
            }
    }
    return out;
}

} // namespace moyalkit
