#pragma once

#include <vector>

#include "moyalkit/fourier.hpp"
#include "moyalkit/grid.hpp"

namespace moyalkit {

// Phase conventions (fixed once, here; the verify suite executes the
// cross-identities that prove them consistent):
//
//   Product:      (f * g)(x) = (pi hbar)^{-2d} \iint f(x-x') g(x-x'')
//                                e^{(2i/hbar) x'.J x''} dx' dx''
//   Twisted conv: (u *_th v)(z) = \int u(z') v(z-z') e^{(i th/2) z.J z'} dz'
//   Deformed:     (u *_{hbar,S} v)(z) = \int u(z') v(z-z')
//                                e^{-(i hbar/2) z'.(J+S)(z-z')} dz'
//   S-product:    (f *_S g)(x) = (pi hbar)^{-2d} \iint f(x-(J+S)x') g(x-x'')
//                                e^{(2i/hbar) x'.x''} dx' dx''
//   Sympl. FT:    (F_J f)(y) = (pi hbar)^{-d} \int f(x) e^{-(2i/hbar) x.J y} dx
//                 (conjugate variant flips the sign in the exponent)
//
// with J = [[0, I], [-I, 0]] acting on x = (q, p) so x.J y = q_x p_y - p_x q_y.
// Under the unitary Fourier transform, the product maps to the twisted
// convolution at th = hbar scaled by (2 pi)^{-d}; at S = 0 the deformed
// convolution phase collapses to the twisted one because z'.J z' = 0; and
// f * g = (pi hbar)^{-d} (F_J f) *_{4/hbar} g = (pi hbar)^{-d} f *_{4/hbar} (F_J' g).

enum class StarBackend { direct_quadrature, fourier };

struct StarConfig {
    double hbar = 1.0;                // >= 0; 0 selects the pointwise branch
    std::vector<double> s_matrix;     // 2d x 2d real symmetric, row-major;
                                      // empty means S = 0
    StarBackend backend = StarBackend::fourier;
};

void validate_config(const StarConfig& cfg, const GridSpec& spec);

// (u *_theta v) on the shared grid of u and v; theta = 0 is the ordinary
// convolution. Summation order per output point is fixed (row-major over the
// support intersection), so results are reproducible under any threading.
GridFunction twisted_convolution(const GridFunction& u, const GridFunction& v,
                                 double theta, Guard guard = Guard::strict);

GridFunction deformed_convolution(const GridFunction& u, const GridFunction& v,
                                  const StarConfig& cfg,
                                  Guard guard = Guard::strict);

// Weyl-Moyal product. The direct backend evaluates the double quadrature sum
// of the defining integral (inner sum folded analytically over the lattice);
// the fourier backend transforms, twisted-convolves, and transforms back.
GridFunction moyal(const GridFunction& f, const GridFunction& g,
                   const StarConfig& cfg, Guard guard = Guard::strict);

// S-ordered product; S = 0 reproduces moyal, hbar = 0 the pointwise product.
GridFunction star_s(const GridFunction& f, const GridFunction& g,
                    const StarConfig& cfg, Guard guard = Guard::strict);

enum class SymplecticSign { standard, conjugate };

GridFunction symplectic_fourier(const GridFunction& f, double hbar,
                                SymplecticSign sign,
                                Guard guard = Guard::strict);

} // namespace moyalkit
