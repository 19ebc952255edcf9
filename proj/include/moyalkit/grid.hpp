#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "moyalkit/errors.hpp"

namespace moyalkit {

using cxd = std::complex<double>;

// Relative threshold below which the outermost sample layer counts as decayed.
inline constexpr double kBoundaryDecayThreshold = 1e-10;
// Relative threshold below which samples are ignored when bounding supports.
inline constexpr double kSupportEps = 1e-14;

// Centered uniform box: per axis, x_j = -L + j * (2L/N), j = 0..N-1.
struct GridSpec {
    int dim = 1;         // 1 or 2 axes
    int n = 64;          // samples per axis, power of two in [32, 512]
    double half_width = 8.0;

    double spacing() const { return 2.0 * half_width / n; }
    double point(int index) const { return (index - n / 2) * spacing(); }
    std::size_t size() const {
        return dim == 1 ? static_cast<std::size_t>(n)
                        : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }
    double cell_measure() const {
        double h = spacing();
        return dim == 1 ? h : h * h;
    }
    bool operator==(const GridSpec&) const = default;
};

void validate_spec(const GridSpec& spec);

struct GridFunction {
    GridSpec spec;
    std::vector<cxd> samples;
    std::string meta;

    cxd& at(int i) { return samples[static_cast<std::size_t>(i)]; }
    const cxd& at(int i) const { return samples[static_cast<std::size_t>(i)]; }
    cxd& at(int i, int j) {
        return samples[static_cast<std::size_t>(i) * spec.n + j];
    }
    const cxd& at(int i, int j) const {
        return samples[static_cast<std::size_t>(i) * spec.n + j];
    }

    double max_abs() const;
    // max |samples| on the outermost layer divided by max |samples| overall.
    double boundary_ratio() const;
    bool boundary_decay_ok() const {
        return boundary_ratio() <= kBoundaryDecayThreshold;
    }
};

GridFunction make_grid_function(GridSpec spec, std::string meta = {});

void require_same_spec(const GridFunction& f, const GridFunction& g,
                       const char* where);
void require_boundary_decay(const GridFunction& f, const char* where);

// Inclusive index box [lo[a], hi[a]] per axis outside of which |f| < eps * max.
struct SupportBox {
    std::array<int, 2> lo{0, 0};
    std::array<int, 2> hi{-1, -1};
    bool empty() const { return hi[0] < lo[0]; }
};
SupportBox support_box(const GridFunction& f, double rel_eps = kSupportEps);

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g);
cxd grid_integral(const GridFunction& f);
double grid_l2_norm(const GridFunction& f);
double sup_distance(const GridFunction& f, const GridFunction& g);

// Shift by whole grid cells, filling with zeros (no wrap-around).
GridFunction translate_cells(const GridFunction& f,
                             const std::array<int, 2>& cells);

// GSGF binary format: magic "GSGF", u32 version=1, u32 d, then per axis one
// u32 N and one f64 L, then N^d little-endian (re, im) f64 pairs, row-major.
void write_gsgf(const GridFunction& f, const std::string& path);
GridFunction read_gsgf(const std::string& path);
// CSV: one row per grid point, columns x_1..x_d, re, im.
void write_csv(const GridFunction& f, const std::string& path);

} // namespace moyalkit
