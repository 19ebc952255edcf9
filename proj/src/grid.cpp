#include "moyalkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "moyalkit/report.hpp"

namespace moyalkit {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

void validate_spec(const GridSpec& spec) {
    if (spec.dim != 1 && spec.dim != 2)
        throw SpecMismatch("grid dim must be 1 or 2, got " + std::to_string(spec.dim));
    if (!is_power_of_two(spec.n) || spec.n < 32 || spec.n > 512)
        throw SpecMismatch("grid N must be a power of two in [32, 512], got " +
                           std::to_string(spec.n));
    if (!(spec.half_width > 0.0))
        throw SpecMismatch("grid half-width must be positive");
}

GridFunction make_grid_function(GridSpec spec, std::string meta) {
    validate_spec(spec);
    GridFunction f;
    f.spec = spec;
    f.samples.assign(spec.size(), cxd(0.0, 0.0));
    f.meta = std::move(meta);
    return f;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const cxd& v : samples) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::boundary_ratio() const {
    const int n = spec.n;
    double edge = 0.0;
    if (spec.dim == 1) {
        edge = std::max(std::abs(at(0)), std::abs(at(n - 1)));
    } else {
        for (int j = 0; j < n; ++j) {
            edge = std::max(edge, std::abs(at(0, j)));
            edge = std::max(edge, std::abs(at(n - 1, j)));
            edge = std::max(edge, std::abs(at(j, 0)));
            edge = std::max(edge, std::abs(at(j, n - 1)));
        }
    }
    double overall = max_abs();
    if (overall == 0.0) return 0.0;
    return edge / overall;
}

void require_same_spec(const GridFunction& f, const GridFunction& g,
                       const char* where) {
    if (!(f.spec == g.spec))
        throw SpecMismatch(std::string(where) + ": operands sampled on different grids");
}

void require_boundary_decay(const GridFunction& f, const char* where) {
    double r = f.boundary_ratio();
    if (r > kBoundaryDecayThreshold) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s: boundary ratio %.3e exceeds %.1e",
                      where, r, kBoundaryDecayThreshold);
        throw BoundaryLeak(buf);
    }
}

SupportBox support_box(const GridFunction& f, double rel_eps) {
    const double cut = rel_eps * f.max_abs();
    const int n = f.spec.n;
    SupportBox box;
    box.lo = {n, n};
    box.hi = {-1, -1};
    if (f.spec.dim == 1) {
        for (int i = 0; i < n; ++i) {
            if (std::abs(f.at(i)) > cut) {
                box.lo[0] = std::min(box.lo[0], i);
                box.hi[0] = std::max(box.hi[0], i);
            }
        }
        box.lo[1] = 0;
        box.hi[1] = 0;
        return box;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(f.at(i, j)) > cut) {
                box.lo[0] = std::min(box.lo[0], i);
                box.hi[0] = std::max(box.hi[0], i);
                box.lo[1] = std::min(box.lo[1], j);
                box.hi[1] = std::max(box.hi[1], j);
            }
    return box;
}

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
    require_same_spec(f, g, "pointwise_product");
    GridFunction out = make_grid_function(f.spec, "product");
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        out.samples[i] = f.samples[i] * g.samples[i];
    return out;
}

cxd grid_integral(const GridFunction& f) {
    cxd acc(0.0, 0.0);
    for (const cxd& v : f.samples) acc += v;
    return acc * f.spec.cell_measure();
}

double grid_l2_norm(const GridFunction& f) {
    double acc = 0.0;
    for (const cxd& v : f.samples) acc += std::norm(v);
    return std::sqrt(acc * f.spec.cell_measure());
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
    require_same_spec(f, g, "sup_distance");
    double m = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        m = std::max(m, std::abs(f.samples[i] - g.samples[i]));
    return m;
}

GridFunction translate_cells(const GridFunction& f,
                             const std::array<int, 2>& cells) {
    GridFunction out = make_grid_function(f.spec, f.meta + " translated");
    const int n = f.spec.n;
    if (f.spec.dim == 1) {
        for (int i = 0; i < n; ++i) {
            int src = i - cells[0];
            if (src >= 0 && src < n) out.at(i) = f.at(src);
        }
        return out;
    }
    for (int i = 0; i < n; ++i) {
        int si = i - cells[0];
        if (si < 0 || si >= n) continue;
        for (int j = 0; j < n; ++j) {
            int sj = j - cells[1];
            if (sj >= 0 && sj < n) out.at(i, j) = f.at(si, sj);
        }
    }
    return out;
}

namespace {

template <typename T> void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T> T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("truncated GSGF stream");
    return v;
}

} // namespace

void write_gsgf(const GridFunction& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os.write("GSGF", 4);
    put<std::uint32_t>(os, 1u);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.spec.dim));
    for (int a = 0; a < f.spec.dim; ++a)
        put<std::uint32_t>(os, static_cast<std::uint32_t>(f.spec.n));
    for (int a = 0; a < f.spec.dim; ++a) put<double>(os, f.spec.half_width);
    for (const cxd& v : f.samples) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
    if (!os) throw IoError("failed writing " + path);
}

GridFunction read_gsgf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "GSGF", 4) != 0)
        throw IoError(path + ": not a GSGF file");
    auto version = get<std::uint32_t>(is);
    if (version != 1u) throw IoError(path + ": unsupported GSGF version");
    GridSpec spec;
    spec.dim = static_cast<int>(get<std::uint32_t>(is));
    if (spec.dim != 1 && spec.dim != 2) throw IoError(path + ": bad dimension");
    std::vector<std::uint32_t> ns(spec.dim);
    for (auto& v : ns) v = get<std::uint32_t>(is);
    for (std::size_t a = 1; a < ns.size(); ++a)
        if (ns[a] != ns[0]) throw IoError(path + ": anisotropic grids unsupported");
    spec.n = static_cast<int>(ns[0]);
    std::vector<double> ls(spec.dim);
    for (auto& v : ls) v = get<double>(is);
    for (std::size_t a = 1; a < ls.size(); ++a)
        if (ls[a] != ls[0]) throw IoError(path + ": anisotropic grids unsupported");
    spec.half_width = ls[0];
    GridFunction f = make_grid_function(spec, path);
    for (cxd& v : f.samples) {
        double re = get<double>(is);
        double im = get<double>(is);
        v = cxd(re, im);
    }
    return f;
}

void write_csv(const GridFunction& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path + " for writing");
    if (f.spec.dim == 1) {
        os << "x_1,re,im\n";
        for (int i = 0; i < f.spec.n; ++i)
            os << format_double_17(f.spec.point(i)) << ','
               << format_double_17(f.at(i).real()) << ','
               << format_double_17(f.at(i).imag()) << '\n';
    } else {
        os << "x_1,x_2,re,im\n";
        for (int i = 0; i < f.spec.n; ++i)
            for (int j = 0; j < f.spec.n; ++j)
                os << format_double_17(f.spec.point(i)) << ','
                   << format_double_17(f.spec.point(j)) << ','
                   << format_double_17(f.at(i, j).real()) << ','
                   << format_double_17(f.at(i, j).imag()) << '\n';
    }
    if (!os) throw IoError("failed writing " + path);
}

} // namespace moyalkit
