#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moyalkit/analytic.hpp"
#include "moyalkit/grid.hpp"
#include "moyalkit/star.hpp"

namespace moyalkit {

// Complex K x K matrix <psi_m, Op_S(f) psi_n> on the hbar-scaled Hermite basis.
struct OperatorMatrix {
    int basis_size = 0;
    double hbar = 1.0;
    std::vector<cxd> entries; // row-major
    std::string symbol_meta;

    cxd& at(int m, int n) { return entries[static_cast<std::size_t>(m) * basis_size + n]; }
    const cxd& at(int m, int n) const {
        return entries[static_cast<std::size_t>(m) * basis_size + n];
    }
    double hermiticity_defect() const; // max |A - A^dagger| entrywise
    cxd trace() const;
};

OperatorMatrix matrix_product(const OperatorMatrix& x, const OperatorMatrix& y);
double max_entry_distance(const OperatorMatrix& x, const OperatorMatrix& y,
                          int block = -1); // block > 0 compares the leading block

// A phase-space symbol entering the quantization map: either grid samples
// (decaying; half-lattice values come from trigonometric interpolation) or a
// closed form (evaluated exactly; polynomials above degree 2 must be windowed
// before they get here).
struct Symbol {
    const GridFunction* grid = nullptr;
    const AnalyticFunction* analytic = nullptr;
    std::string meta;
};

Symbol symbol_from_grid(const GridFunction& f);
Symbol symbol_from_analytic(const AnalyticFunction& f);

// Integral kernel of the Weyl operator at S = 0:
// K(q, q') = (2 pi hbar)^{-d} \int f((q+q')/2, p) e^{i p (q - q')/hbar} dp,
// sampled on the q x q' grid.
struct WeylKernel {
    GridSpec q_spec; // 1D grid both arguments live on
    double hbar = 1.0;
    std::vector<cxd> values; // row-major over (q, q')
    cxd& at(int i, int j) { return values[static_cast<std::size_t>(i) * q_spec.n + j]; }
    const cxd& at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * q_spec.n + j];
    }
};

WeylKernel weyl_kernel(const Symbol& f, const GridSpec& phase_spec, double hbar,
                       Guard guard = Guard::strict);

// The symbol whose Weyl operator equals the S-ordered operator of f:
// inverse transform of fhat(z) e^{-(i hbar/4) z.S z}.
GridFunction weyl_symbol_of_s_ordered(const GridFunction& f, const StarConfig& cfg,
                                      Guard guard = Guard::strict);

OperatorMatrix op_matrix(const Symbol& f, const StarConfig& cfg,
                         const GridSpec& phase_spec, int basis_size,
                         Guard guard = Guard::strict);

// (Op_S(f) psi)(q) = \int K(q, q') psi(q') dq' on the 1D q-grid.
GridFunction apply_op(const Symbol& f, const GridFunction& psi,
                      const StarConfig& cfg, const GridSpec& phase_spec,
                      Guard guard = Guard::strict);

// Cross-transform W(q, p) = (pi hbar)^{-1} \int conj(psi(q+y)) phi(q-y)
// e^{2 i p y / hbar} dy on the phase-space grid built from psi's q-grid.
GridFunction wigner(const GridFunction& psi, const GridFunction& phi,
                    double hbar, Guard guard = Guard::strict);

// hbar-scaled L^2-orthonormal Hermite functions sampled on a q-grid.
GridFunction hermite_state(int k, double hbar, const GridSpec& q_spec);

} // namespace moyalkit
