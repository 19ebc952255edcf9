#pragma once

#include <vector>

#include "moyalkit/grid.hpp"

namespace moyalkit {

// Unitary convention: F[f](z) = (2*pi)^{-d/2} \int e^{-i x.z} f(x) dx.
// The forward transform of a grid on [-L, L) lands on [-pi*N/(2L), pi*N/(2L))
// with the same point count; backward inverts it exactly (up to roundoff).
enum class FourierDirection { forward, backward };

// strict: refuse inputs whose outermost layer has not decayed (aliasing risk).
// permissive: compute anyway; callers own the periodization error.
enum class Guard { strict, permissive };

inline constexpr int kMaxDerivativeOrder = 8;

GridFunction fourier(const GridFunction& f, FourierDirection dir,
                     Guard guard = Guard::strict);

// Spectral derivative: transform, multiply by (i z)^beta, transform back.
// beta holds one entry per axis.
GridFunction derivative(const GridFunction& f, const std::vector<int>& beta,
                        Guard guard = Guard::strict);

namespace detail {

// In-place centered unitary transform along `axis` of a row-major (n0, n1)
// array (n1 = 1 for one axis). spacing_in is the input grid spacing along
// that axis. Used by the module kernels that work on rectangular lattices.
void centered_axis_transform(cxd* data, int n0, int n1, int axis,
                             FourierDirection dir, double spacing_in);

} // namespace detail

} // namespace moyalkit
