#ifndef HJSWEEP_GRID_HPP
#define HJSWEEP_GRID_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hjsweep {

/// Axis-aligned rectangle [xmin,xmax] x [ymin,ymax].
struct Rect {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

    bool contains(double x, double y) const {
        return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
    }
};

/// Uniform 2-D node-centered mesh. Interior nodes are indexed
/// i in [0,nx), j in [0,ny); a fixed two-layer ghost band surrounds them,
/// addressed with negative / past-the-end indices.
class Grid2D {
  public:
    static constexpr int ghost_width = 2;

    Grid2D(int nx, int ny, const Rect& box)
        : nx_(nx), ny_(ny), box_(box) {
        if (nx < 5 || ny < 5)
            throw std::invalid_argument("Grid2D: need at least 5 points per axis");
        if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin))
            throw std::invalid_argument("Grid2D: empty domain");
        dx_ = (box.xmax - box.xmin) / (nx - 1);
        dy_ = (box.ymax - box.ymin) / (ny - 1);
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    const Rect& domain() const { return box_; }

    /// Reference spacing used for band widths and pinned boxes.
    double h() const { return std::max(dx_, dy_); }

    double x(int i) const { return box_.xmin + i * dx_; }
    double y(int j) const { return box_.ymin + j * dy_; }

    bool interior(int i, int j) const {
        return i >= 0 && i < nx_ && j >= 0 && j < ny_;
    }

    /// Total node count including the ghost band.
    long total_points() const {
        return static_cast<long>(nx_ + 2 * ghost_width) * (ny_ + 2 * ghost_width);
    }

  private:
    int nx_, ny_;
    Rect box_;
    double dx_, dy_;
};

/// Dense storage over the grid+ghost index space of a Grid2D.
template <typename T>
class Field {
  public:
    static constexpr int ghost = Grid2D::ghost_width;

    Field() = default;
    Field(int nx, int ny, T init = T{})
        : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx + 2 * ghost) * (ny + 2 * ghost), init) {}
    explicit Field(const Grid2D& g, T init = T{}) : Field(g.nx(), g.ny(), init) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    T& operator()(int i, int j) { return data_[index(i, j)]; }
    const T& operator()(int i, int j) const { return data_[index(i, j)]; }

    const std::vector<T>& raw() const { return data_; }
    std::vector<T>& raw() { return data_; }

  private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j + ghost) * (nx_ + 2 * ghost) + (i + ghost);
    }

    int nx_ = 0, ny_ = 0;
    std::vector<T> data_;
};

using GridFunction = Field<double>;

/// Node labels. GammaExact/NearGammaExact hold prescribed values for the whole
/// run; Ghost nodes are refilled by extrapolation; the two Interior labels are
/// the nodes advanced by the iteration (NearBand marks the belt around the
/// prescribed set where the hybrid reconstruction stays nonlinear).
enum class PointCategory : std::uint8_t {
    GammaExact,
    Ghost,
    NearGammaExact,
    InteriorNearBand,
    InteriorFar,
};

inline bool is_update_point(PointCategory c) {
    return c == PointCategory::InteriorNearBand || c == PointCategory::InteriorFar;
}

inline bool is_pinned(PointCategory c) {
    return c == PointCategory::GammaExact || c == PointCategory::NearGammaExact;
}

/// Inflow set description. Any combination of the three forms may be given;
/// the effective distance is the minimum over the provided parts.
struct GammaGeometry {
    std::vector<std::array<double, 2>> points;
    std::function<double(double, double)> distance;   // signed or unsigned distance to a curve set
    std::function<bool(double, double)> region;       // rasterized onto the mesh
};

/// Box of nodes holding prescribed values. The half side is
/// half_abs + half_in_h * h, evaluated per mesh.
struct PinnedBox {
    double cx = 0.0, cy = 0.0;
    double half_abs = 0.0;
    double half_in_h = 0.0;

    double half_side(double h) const { return half_abs + half_in_h * h; }
    bool contains(double x, double y, double h) const {
        const double r = half_side(h) * (1.0 + 1e-12);
        return std::fabs(x - cx) <= r && std::fabs(y - cy) <= r;
    }
};

namespace detail {

/// Near-exact Euclidean distance transform: propagates the nearest seed node
/// with four 8-neighbor raster sweeps.
inline std::vector<double> distance_to_seeds(const Grid2D& g, const std::vector<std::uint8_t>& seed) {
    const int nx = g.nx(), ny = g.ny();
    const double big = std::numeric_limits<double>::max();
    std::vector<double> sx(static_cast<std::size_t>(nx) * ny, 0.0);
    std::vector<double> sy(static_cast<std::size_t>(nx) * ny, 0.0);
    std::vector<double> d(static_cast<std::size_t>(nx) * ny, big);
    auto at = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (seed[at(i, j)]) {
                d[at(i, j)] = 0.0;
                sx[at(i, j)] = g.x(i);
                sy[at(i, j)] = g.y(j);
            }

    auto relax = [&](int i, int j, int pi, int pj) {
        if (pi < 0 || pi >= nx || pj < 0 || pj >= ny) return;
        const std::size_t p = at(pi, pj);
        if (d[p] == big) return;
        const double cand = std::hypot(g.x(i) - sx[p], g.y(j) - sy[p]);
        if (cand < d[at(i, j)]) {
            d[at(i, j)] = cand;
            sx[at(i, j)] = sx[p];
            sy[at(i, j)] = sy[p];
        }
    };

    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                relax(i, j, i - 1, j);
                relax(i, j, i, j - 1);
                relax(i, j, i - 1, j - 1);
                relax(i, j, i + 1, j - 1);
            }
        for (int j = ny - 1; j >= 0; --j)
            for (int i = nx - 1; i >= 0; --i) {
                relax(i, j, i + 1, j);
                relax(i, j, i, j + 1);
                relax(i, j, i + 1, j + 1);
                relax(i, j, i - 1, j + 1);
            }
    }
    return d;
}

} // namespace detail

/// Labels every grid+ghost node. Throws if the inflow set does not intersect
/// the domain (list points outside the box, or no node within the 2h band).
inline Field<PointCategory> classify_points(const Grid2D& g, const GammaGeometry& gamma,
                                            const std::vector<PinnedBox>& boxes) {
    const int nx = g.nx(), ny = g.ny();
    const double h = g.h();
    const double band = 2.0 * h * (1.0 + 1e-12);
    const double on_tol = 1e-12 * std::max({1.0, std::fabs(g.domain().xmax), std::fabs(g.domain().ymax)});

    if (!gamma.distance && !gamma.region && gamma.points.empty())
        throw std::invalid_argument("classify_points: empty inflow set");
    for (const auto& p : gamma.points)
        if (!g.domain().contains(p[0], p[1]))
            throw std::invalid_argument("classify_points: inflow point outside the domain");

    std::vector<double> raster;
    if (gamma.region) {
        std::vector<std::uint8_t> seed(static_cast<std::size_t>(nx) * ny, 0);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                seed[static_cast<std::size_t>(j) * nx + i] = gamma.region(g.x(i), g.y(j)) ? 1 : 0;
        raster = detail::distance_to_seeds(g, seed);
    }

    auto gamma_dist = [&](int i, int j) {
        double d = std::numeric_limits<double>::max();
        const double x = g.x(i), y = g.y(j);
        for (const auto& p : gamma.points)
            d = std::min(d, std::hypot(x - p[0], y - p[1]));
        if (gamma.distance) d = std::min(d, std::fabs(gamma.distance(x, y)));
        if (!raster.empty()) d = std::min(d, raster[static_cast<std::size_t>(j) * nx + i]);
        return d;
    };

    Field<PointCategory> cat(g, PointCategory::Ghost);
    bool any_reached = false;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double d = gamma_dist(i, j);
            const double x = g.x(i), y = g.y(j);
            bool boxed = false;
            for (const auto& b : boxes)
                if (b.contains(x, y, h)) { boxed = true; break; }
            if (d <= on_tol)
                cat(i, j) = PointCategory::GammaExact;
            else if (d <= band || boxed)
                cat(i, j) = PointCategory::NearGammaExact;
            else
                cat(i, j) = PointCategory::InteriorFar;
            if (d <= band) any_reached = true;
        }
    if (!any_reached)
        throw std::invalid_argument("classify_points: inflow set does not reach the mesh");

    // Belt pass: interior nodes within 2h of a NearGammaExact node.
    std::vector<std::array<int, 2>> offsets;
    const int ri = static_cast<int>(std::floor(band / g.dx())) + 1;
    const int rj = static_cast<int>(std::floor(band / g.dy())) + 1;
    for (int dj = -rj; dj <= rj; ++dj)
        for (int di = -ri; di <= ri; ++di) {
            const double dist = std::hypot(di * g.dx(), dj * g.dy());
            if (dist > 0.0 && dist <= band) offsets.push_back({di, dj});
        }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (cat(i, j) != PointCategory::InteriorFar) continue;
            for (const auto& o : offsets) {
                const int pi = i + o[0], pj = j + o[1];
                if (g.interior(pi, pj) && cat(pi, pj) == PointCategory::NearGammaExact) {
                    cat(i, j) = PointCategory::InteriorNearBand;
                    break;
                }
            }
        }
    return cat;
}

namespace detail {

// Degree-4 extrapolation one and two steps beyond a 5-point line, and the
// derivative of the same extrapolating polynomial at those stations
// (argument order: edge value first, inward).
inline double extrap1(double f0, double f1, double f2, double f3, double f4) {
    return 5.0 * f0 - 10.0 * f1 + 10.0 * f2 - 5.0 * f3 + f4;
}
inline double extrap2(double f0, double f1, double f2, double f3, double f4) {
    return 15.0 * f0 - 40.0 * f1 + 45.0 * f2 - 24.0 * f3 + 5.0 * f4;
}
inline double extrap_d1(double f0, double f1, double f2, double f3, double f4) {
    return -77.0 / 12.0 * f0 + 107.0 / 6.0 * f1 - 39.0 / 2.0 * f2 + 61.0 / 6.0 * f3 - 25.0 / 12.0 * f4;
}
inline double extrap_d2(double f0, double f1, double f2, double f3, double f4) {
    return -57.0 / 4.0 * f0 + 134.0 / 3.0 * f1 - 54.0 * f2 + 30.0 * f3 - 77.0 / 12.0 * f4;
}

} // namespace detail

/// Ghost band of the stored derivative fields. The solver only ever reads
/// u at x-ghost columns and v at y-ghost rows, and stability of the boundary
/// feedback wants those values consistent with phi's own extrapolant, so the
/// ghosts are the derivative of phi's degree-4 boundary polynomial rather
/// than an independent extrapolation of the derivative field.
inline void derivative_ghosts_x(GridFunction& u, const GridFunction& phi, const Grid2D& g, int j) {
    const int nx = g.nx();
    const double inv = 1.0 / g.dx();
    u(-1, j) = detail::extrap_d1(phi(0, j), phi(1, j), phi(2, j), phi(3, j), phi(4, j)) * inv;
    u(-2, j) = detail::extrap_d2(phi(0, j), phi(1, j), phi(2, j), phi(3, j), phi(4, j)) * inv;
    u(nx, j) = -detail::extrap_d1(phi(nx - 1, j), phi(nx - 2, j), phi(nx - 3, j), phi(nx - 4, j),
                                  phi(nx - 5, j)) * inv;
    u(nx + 1, j) = -detail::extrap_d2(phi(nx - 1, j), phi(nx - 2, j), phi(nx - 3, j), phi(nx - 4, j),
                                      phi(nx - 5, j)) * inv;
}

inline void derivative_ghosts_y(GridFunction& v, const GridFunction& phi, const Grid2D& g, int i) {
    const int ny = g.ny();
    const double inv = 1.0 / g.dy();
    v(i, -1) = detail::extrap_d1(phi(i, 0), phi(i, 1), phi(i, 2), phi(i, 3), phi(i, 4)) * inv;
    v(i, -2) = detail::extrap_d2(phi(i, 0), phi(i, 1), phi(i, 2), phi(i, 3), phi(i, 4)) * inv;
    v(i, ny) = -detail::extrap_d1(phi(i, ny - 1), phi(i, ny - 2), phi(i, ny - 3), phi(i, ny - 4),
                                  phi(i, ny - 5)) * inv;
    v(i, ny + 1) = -detail::extrap_d2(phi(i, ny - 1), phi(i, ny - 2), phi(i, ny - 3), phi(i, ny - 4),
                                      phi(i, ny - 5)) * inv;
}

/// Refreshes the ghost entries whose extrapolation stencil contains the
/// interior node (i,j): phi's line ghosts plus the dependent derivative
/// ghosts. Keeps stencil inputs consistent with the newest interior values
/// during Gauss-Seidel sweeps; corner ghosts are not touched (axis stencils
/// never read them).
inline void refresh_point_ghosts(GridFunction& phi, GridFunction& u, GridFunction& v,
                                 const Grid2D& g, int i, int j) {
    const int nx = g.nx(), ny = g.ny();
    using detail::extrap1;
    using detail::extrap2;
    if (i <= 4) {
        phi(-1, j) = extrap1(phi(0, j), phi(1, j), phi(2, j), phi(3, j), phi(4, j));
        phi(-2, j) = extrap2(phi(0, j), phi(1, j), phi(2, j), phi(3, j), phi(4, j));
    }
    if (i >= nx - 5) {
        phi(nx, j) = extrap1(phi(nx - 1, j), phi(nx - 2, j), phi(nx - 3, j), phi(nx - 4, j), phi(nx - 5, j));
        phi(nx + 1, j) = extrap2(phi(nx - 1, j), phi(nx - 2, j), phi(nx - 3, j), phi(nx - 4, j), phi(nx - 5, j));
    }
    if (i <= 4 || i >= nx - 5) derivative_ghosts_x(u, phi, g, j);
    if (j <= 4) {
        phi(i, -1) = extrap1(phi(i, 0), phi(i, 1), phi(i, 2), phi(i, 3), phi(i, 4));
        phi(i, -2) = extrap2(phi(i, 0), phi(i, 1), phi(i, 2), phi(i, 3), phi(i, 4));
    }
    if (j >= ny - 5) {
        phi(i, ny) = extrap1(phi(i, ny - 1), phi(i, ny - 2), phi(i, ny - 3), phi(i, ny - 4), phi(i, ny - 5));
        phi(i, ny + 1) = extrap2(phi(i, ny - 1), phi(i, ny - 2), phi(i, ny - 3), phi(i, ny - 4), phi(i, ny - 5));
    }
    if (j <= 4 || j >= ny - 5) derivative_ghosts_y(v, phi, g, i);
}

/// Fills the ghost band by degree-4 polynomial extrapolation along grid
/// lines: x-direction first from interior data, then y-direction over all
/// columns so the corners come from already extended columns.
inline void extrapolate_ghosts(GridFunction& f, const Grid2D& g) {
    const int nx = g.nx(), ny = g.ny();
    using detail::extrap1;
    using detail::extrap2;
    for (int j = 0; j < ny; ++j) {
        f(-1, j) = extrap1(f(0, j), f(1, j), f(2, j), f(3, j), f(4, j));
        f(-2, j) = extrap2(f(0, j), f(1, j), f(2, j), f(3, j), f(4, j));
        f(nx, j) = extrap1(f(nx - 1, j), f(nx - 2, j), f(nx - 3, j), f(nx - 4, j), f(nx - 5, j));
        f(nx + 1, j) = extrap2(f(nx - 1, j), f(nx - 2, j), f(nx - 3, j), f(nx - 4, j), f(nx - 5, j));
    }
    for (int i = -2; i < nx + 2; ++i) {
        f(i, -1) = extrap1(f(i, 0), f(i, 1), f(i, 2), f(i, 3), f(i, 4));
        f(i, -2) = extrap2(f(i, 0), f(i, 1), f(i, 2), f(i, 3), f(i, 4));
        f(i, ny) = extrap1(f(i, ny - 1), f(i, ny - 2), f(i, ny - 3), f(i, ny - 4), f(i, ny - 5));
        f(i, ny + 1) = extrap2(f(i, ny - 1), f(i, ny - 2), f(i, ny - 3), f(i, ny - 4), f(i, ny - 5));
    }
}

} // namespace hjsweep

#endif // HJSWEEP_GRID_HPP
