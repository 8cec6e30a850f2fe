#ifndef HJSWEEP_INTERPOLATE_HPP
#define HJSWEEP_INTERPOLATE_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "hjsweep/grid.hpp"

namespace hjsweep {

namespace detail {

// 1-D Lagrange weights for the 6-node window starting at index i0.
inline std::array<double, 6> lagrange6_weights(double t) {
    // t = fractional position within the window, in node-index units
    std::array<double, 6> w;
    for (int k = 0; k < 6; ++k) {
        double num = 1.0, den = 1.0;
        for (int m = 0; m < 6; ++m) {
            if (m == k) continue;
            num *= (t - m);
            den *= (k - m);
        }
        w[k] = num / den;
    }
    return w;
}

} // namespace detail

/// Degree-5 tensor-product Lagrange sampling of a grid function at an
/// arbitrary point of the domain (used to compare solutions across meshes).
/// Windows are clamped to the interior, so ghost values are never read.
inline double sample_field(const GridFunction& f, const Grid2D& g, double x, double y) {
    const double fx = (x - g.domain().xmin) / g.dx();
    const double fy = (y - g.domain().ymin) / g.dy();
    int i0 = static_cast<int>(std::floor(fx)) - 2;
    int j0 = static_cast<int>(std::floor(fy)) - 2;
    i0 = std::clamp(i0, 0, g.nx() - 6);
    j0 = std::clamp(j0, 0, g.ny() - 6);
    const auto wx = detail::lagrange6_weights(fx - i0);
    const auto wy = detail::lagrange6_weights(fy - j0);
    double acc = 0.0;
    for (int b = 0; b < 6; ++b) {
        double row = 0.0;
        for (int a = 0; a < 6; ++a) row += wx[a] * f(i0 + a, j0 + b);
        acc += wy[b] * row;
    }
    return acc;
}

} // namespace hjsweep

#endif // HJSWEEP_INTERPOLATE_HPP
