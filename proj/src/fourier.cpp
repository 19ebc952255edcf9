#include "moyalkit/fourier.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "moyalkit/errors.hpp"

namespace moyalkit {

namespace detail {

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// Unnormalized DFT along one axis of a row-major (n0, n1) array.
void fft_axis(cxd* data, int n0, int n1, int axis, int sign) {
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
    int n = axis == 0 ? n0 : n1;
    int howmany = axis == 0 ? n1 : n0;
    int stride = axis == 0 ? n1 : 1;
    int dist = axis == 0 ? 1 : n1;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_many_dft(1, &n, howmany, buf, nullptr, stride, dist,
                                  buf, nullptr, stride, dist, sign,
                                  FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace

// Centered unitary transform along one axis: grids x_j = (j - n/2) dx map to
// z_k = (k - n/2) dz with dz = 2 pi / (n dx). The checkerboard factors carry
// the half-grid offsets; for n divisible by 4 the residual phase e^{-i pi n/2}
// is 1, for n = 2 mod 4 it is -1.
void centered_axis_transform(cxd* data, int n0, int n1, int axis,
                             FourierDirection dir, double spacing_in) {
    int n = axis == 0 ? n0 : n1;
    if (n % 2 != 0) throw SpecMismatch("centered transform needs even N");
    const double ph = (n % 4 == 0) ? 1.0 : -1.0;
    const double scale =
        ph * spacing_in / std::sqrt(2.0 * std::numbers::pi);
    auto checkerboard = [&](double extra) {
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n1; ++j) {
                int idx = axis == 0 ? i : j;
                double s = (idx % 2 == 0) ? 1.0 : -1.0;
                data[static_cast<std::size_t>(i) * n1 + j] *= s * extra;
            }
    };
    checkerboard(1.0);
    fft_axis(data, n0, n1, axis,
             dir == FourierDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD);
    checkerboard(scale);
}

} // namespace detail

GridFunction fourier(const GridFunction& f, FourierDirection dir, Guard guard) {
    if (guard == Guard::strict) require_boundary_decay(f, "fourier");
    GridSpec out_spec = f.spec;
    out_spec.half_width = std::numbers::pi * f.spec.n / (2.0 * f.spec.half_width);
    GridFunction out = make_grid_function(out_spec, f.meta + " transformed");
    out.samples = f.samples;
    int n0 = f.spec.n;
    int n1 = f.spec.dim == 2 ? f.spec.n : 1;
    for (int axis = 0; axis < f.spec.dim; ++axis)
        detail::centered_axis_transform(out.samples.data(), n0, n1, axis, dir,
                                        f.spec.spacing());
    return out;
}

GridFunction derivative(const GridFunction& f, const std::vector<int>& beta,
                        Guard guard) {
    if (static_cast<int>(beta.size()) != f.spec.dim)
        throw SpecMismatch("derivative: beta has wrong arity");
    int order = 0;
    for (int b : beta) {
        if (b < 0) throw SpecMismatch("derivative: negative order");
        order += b;
    }
    if (order > kMaxDerivativeOrder)
        throw OrderTooHigh("derivative order " + std::to_string(order) +
                           " exceeds cap " + std::to_string(kMaxDerivativeOrder));
    if (order == 0) return f;
    GridFunction spectrum = fourier(f, FourierDirection::forward, guard);
    const int n = spectrum.spec.n;
    auto axis_factor = [&](int b, double z) {
        cxd w(1.0, 0.0);
        const cxd iz(0.0, z);
        for (int k = 0; k < b; ++k) w *= iz;
        return w;
    };
    if (f.spec.dim == 1) {
        for (int k = 0; k < n; ++k)
            spectrum.at(k) *= axis_factor(beta[0], spectrum.spec.point(k));
    } else {
        for (int k = 0; k < n; ++k) {
            cxd wk = axis_factor(beta[0], spectrum.spec.point(k));
            for (int l = 0; l < n; ++l)
                spectrum.at(k, l) *=
                    wk * axis_factor(beta[1], spectrum.spec.point(l));
        }
    }
    GridFunction out = fourier(spectrum, FourierDirection::backward,
                               Guard::permissive);
    out.meta = f.meta + " derivative";
    return out;
}

} // namespace moyalkit
