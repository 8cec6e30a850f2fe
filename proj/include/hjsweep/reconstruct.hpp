#ifndef HJSWEEP_RECONSTRUCT_HPP
#define HJSWEEP_RECONSTRUCT_HPP

#include <array>
#include <cmath>
#include <cstdint>

#include "hjsweep/grid.hpp"

namespace hjsweep {

/// Linear weights and the floor used in the nonlinear weights.
struct WeightParams {
    double epsilon = 1e-6;
    double gamma1 = 0.98, gamma2 = 0.01, gamma3 = 0.01;
};

enum class Side : std::uint8_t { Minus, Plus };
enum class ReconMode : std::uint8_t { Hweno, Hybrid };
enum class ReconChoice : std::uint8_t { Linear, Hweno };

/// One-direction stencil data around node i: four consecutive values of the
/// grid function (i-2..i+1 on the minus side, i-1..i+2 on the plus side) and
/// the stored derivative at the two Hermite nodes i-1 and i+1.
struct StencilSlice {
    std::array<double, 4> phi{};
    double u_lo = 0.0;   // derivative at i-1
    double u_hi = 0.0;   // derivative at i+1
    double h = 1.0;
};

/// Derivative candidates at node i: quintic Hermite, then the two quadratics.
struct CandidateTriple {
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

inline CandidateTriple candidates_minus(const StencilSlice& s) {
    const auto& p = s.phi; // p[0..3] = phi_{i-2..i+1}
    const double h = s.h;
    CandidateTriple c;
    c.d1 = (p[0] + 18.0 * p[1] - 9.0 * p[2] - 10.0 * p[3] + 9.0 * h * s.u_lo + 3.0 * h * s.u_hi) / (-18.0 * h);
    c.d2 = (p[0] - 4.0 * p[1] + 3.0 * p[2]) / (2.0 * h);
    c.d3 = (-p[1] + p[3]) / (2.0 * h);
    return c;
}

inline CandidateTriple candidates_plus(const StencilSlice& s) {
    const auto& p = s.phi; // p[0..3] = phi_{i-1..i+2}
    const double h = s.h;
    CandidateTriple c;
    c.d1 = (10.0 * p[0] + 9.0 * p[1] - 18.0 * p[2] - p[3] + 3.0 * h * s.u_lo + 9.0 * h * s.u_hi) / (-18.0 * h);
    c.d2 = (p[2] - p[0]) / (2.0 * h);
    c.d3 = (-3.0 * p[1] + 4.0 * p[2] - p[3]) / (2.0 * h);
    return c;
}

namespace detail {

// Scaled integrals of squared derivatives (orders 2..5) of the Hermite
// quintic over the center cell, as a quadratic form in its monomial
// coefficients a2..a5 (local coordinate xi = (x - x_i)/h):
//   Q = 4 a2^2 + 4 a2 a4 + 39 a3^2 + 63 a3 a5 + 3129/5 a4^2 + 438085/28 a5^2.
inline double quintic_indicator(double a2, double a3, double a4, double a5) {
    return 4.0 * a2 * a2 + 4.0 * a2 * a4 + 39.0 * a3 * a3 + 63.0 * a3 * a5 +
           (3129.0 / 5.0) * a4 * a4 + (438085.0 / 28.0) * a5 * a5;
}

// Monomial coefficients of the two Hermite quintics (derived once from the
// six interpolation conditions; g = h * stored derivative).
struct QuinticCoeffs {
    double a1, a2, a3, a4, a5;
};

inline QuinticCoeffs quintic_minus(const std::array<double, 4>& p, double g1, double g3) {
    QuinticCoeffs c;
    c.a1 = -p[0] / 18.0 - p[1] + p[2] / 2.0 + 5.0 * p[3] / 9.0 - g1 / 2.0 - g3 / 6.0;
    c.a2 = p[1] - 2.0 * p[2] + p[3] + 0.25 * (g1 - g3);
    c.a3 = p[0] / 9.0 + 0.75 * p[1] - p[2] + 5.0 * p[3] / 36.0 + 0.75 * g1 + g3 / 12.0;
    c.a4 = -0.5 * p[1] + p[2] - 0.5 * p[3] - 0.25 * (g1 - g3);
    c.a5 = -p[0] / 18.0 - 0.25 * p[1] + 0.5 * p[2] - 7.0 * p[3] / 36.0 - 0.25 * g1 + g3 / 12.0;
    return c;
}

inline QuinticCoeffs quintic_plus(const std::array<double, 4>& p, double g1, double g3) {
    QuinticCoeffs c;
    c.a1 = -5.0 * p[0] / 9.0 - 0.5 * p[1] + p[2] + p[3] / 18.0 - g1 / 6.0 - g3 / 2.0;
    c.a2 = p[0] - 2.0 * p[1] + p[2] + 0.25 * (g1 - g3);
    c.a3 = -5.0 * p[0] / 36.0 + p[1] - 0.75 * p[2] - p[3] / 9.0 + g1 / 12.0 + 0.75 * g3;
    c.a4 = -0.5 * p[0] + p[1] - 0.5 * p[2] - 0.25 * (g1 - g3);
    c.a5 = 7.0 * p[0] / 36.0 - 0.5 * p[1] + 0.25 * p[2] + p[3] / 18.0 + g1 / 12.0 - 0.25 * g3;
    return c;
}

} // namespace detail

/// Smoothness indicators of the three candidate interpolants. The quintic
/// uses derivative orders 2..5, the quadratics only order 2; all integrals
/// are over the cell [x_{i-1/2}, x_{i+1/2}] in closed form.
inline std::array<double, 3> smoothness_indicators(const StencilSlice& s, Side side) {
    const auto& p = s.phi;
    const double h = s.h;
    const double g1 = h * s.u_lo, g3 = h * s.u_hi;
    const double inv_h2 = 1.0 / (h * h);
    std::array<double, 3> beta;
    if (side == Side::Minus) {
        const auto c = detail::quintic_minus(p, g1, g3);
        beta[0] = detail::quintic_indicator(c.a2, c.a3, c.a4, c.a5) * inv_h2;
        const double s2 = p[0] - 2.0 * p[1] + p[2];
        const double s3 = p[1] - 2.0 * p[2] + p[3];
        beta[1] = s2 * s2 * inv_h2;
        beta[2] = s3 * s3 * inv_h2;
    } else {
        const auto c = detail::quintic_plus(p, g1, g3);
        beta[0] = detail::quintic_indicator(c.a2, c.a3, c.a4, c.a5) * inv_h2;
        const double s2 = p[0] - 2.0 * p[1] + p[2];
        const double s3 = p[1] - 2.0 * p[2] + p[3];
        beta[1] = s2 * s2 * inv_h2;
        beta[2] = s3 * s3 * inv_h2;
    }
    return beta;
}

/// Nonlinear weights from the smoothness indicators.
inline std::array<double, 3> nonlinear_weights(const std::array<double, 3>& beta,
                                               const WeightParams& wp) {
    const double t = 0.5 * (std::fabs(beta[0] - beta[1]) + std::fabs(beta[0] - beta[2]));
    const double tau = t * t;
    const double w1 = wp.gamma1 * (1.0 + tau / (wp.epsilon + beta[0]));
    const double w2 = wp.gamma2 * (1.0 + tau / (wp.epsilon + beta[1]));
    const double w3 = wp.gamma3 * (1.0 + tau / (wp.epsilon + beta[2]));
    const double inv_sum = 1.0 / (w1 + w2 + w3);
    return {w1 * inv_sum, w2 * inv_sum, w3 * inv_sum};
}

/// Weighted combination; reduces to the quintic value d1 when the weights
/// equal the linear weights.
inline double hweno_value(const CandidateTriple& c, const std::array<double, 3>& w,
                          const WeightParams& wp) {
    const double corrected = (c.d1 - wp.gamma2 * c.d2 - wp.gamma3 * c.d3) / wp.gamma1;
    return w[0] * corrected + w[1] * c.d2 + w[2] * c.d3;
}

inline double linear_value(const CandidateTriple& c) { return c.d1; }

/// Switch of the hybrid strategy: the cheap quintic formula applies only to
/// far-field nodes whose stored derivative keeps one strict sign across the
/// four nodes of the relevant big stencil.
inline ReconChoice hybrid_select(const std::array<double, 4>& u_big, PointCategory cat) {
    if (cat != PointCategory::InteriorFar) return ReconChoice::Hweno;
    const bool all_pos = u_big[0] > 0.0 && u_big[1] > 0.0 && u_big[2] > 0.0 && u_big[3] > 0.0;
    const bool all_neg = u_big[0] < 0.0 && u_big[1] < 0.0 && u_big[2] < 0.0 && u_big[3] < 0.0;
    return (all_pos || all_neg) ? ReconChoice::Linear : ReconChoice::Hweno;
}

/// One-sided derivatives at a node.
struct Gradient4 {
    double xm = 0.0, xp = 0.0, ym = 0.0, yp = 0.0;
};

struct ReconCounters {
    long long linear_evals = 0;
    long long hweno_evals = 0;
};

struct ReconConfig {
    ReconMode mode = ReconMode::Hweno;
    WeightParams weights{};
};

namespace detail {

inline double one_sided(const StencilSlice& s, Side side, const std::array<double, 4>& u_big,
                        PointCategory cat, const ReconConfig& rc, ReconCounters* counters) {
    const CandidateTriple c = (side == Side::Minus) ? candidates_minus(s) : candidates_plus(s);
    if (rc.mode == ReconMode::Hybrid && hybrid_select(u_big, cat) == ReconChoice::Linear) {
        if (counters) ++counters->linear_evals;
        return linear_value(c);
    }
    if (counters) ++counters->hweno_evals;
    const auto beta = smoothness_indicators(s, side);
    return hweno_value(c, nonlinear_weights(beta, rc.weights), rc.weights);
}

} // namespace detail

/// All four one-sided derivatives at node (i,j). Stencils read phi at
/// i-2..i+2 / j-2..j+2 and the stored derivative fields at the Hermite and
/// big-stencil nodes, so the ghost band must be current.
inline Gradient4 reconstruct_point(const GridFunction& phi, const GridFunction& u,
                                   const GridFunction& v, const Grid2D& g, int i, int j,
                                   const ReconConfig& rc, PointCategory cat,
                                   ReconCounters* counters = nullptr) {
    Gradient4 out;

    const std::array<double, 5> px = {phi(i - 2, j), phi(i - 1, j), phi(i, j), phi(i + 1, j), phi(i + 2, j)};
    const std::array<double, 5> ux = {u(i - 2, j), u(i - 1, j), u(i, j), u(i + 1, j), u(i + 2, j)};
    StencilSlice sx;
    sx.h = g.dx();
    sx.u_lo = ux[1];
    sx.u_hi = ux[3];
    sx.phi = {px[0], px[1], px[2], px[3]};
    out.xm = detail::one_sided(sx, Side::Minus, {ux[0], ux[1], ux[2], ux[3]}, cat, rc, counters);
    sx.phi = {px[1], px[2], px[3], px[4]};
    out.xp = detail::one_sided(sx, Side::Plus, {ux[1], ux[2], ux[3], ux[4]}, cat, rc, counters);

    const std::array<double, 5> py = {phi(i, j - 2), phi(i, j - 1), phi(i, j), phi(i, j + 1), phi(i, j + 2)};
    const std::array<double, 5> vy = {v(i, j - 2), v(i, j - 1), v(i, j), v(i, j + 1), v(i, j + 2)};
    StencilSlice sy;
    sy.h = g.dy();
    sy.u_lo = vy[1];
    sy.u_hi = vy[3];
    sy.phi = {py[0], py[1], py[2], py[3]};
    out.ym = detail::one_sided(sy, Side::Minus, {vy[0], vy[1], vy[2], vy[3]}, cat, rc, counters);
    sy.phi = {py[1], py[2], py[3], py[4]};
    out.yp = detail::one_sided(sy, Side::Plus, {vy[1], vy[2], vy[3], vy[4]}, cat, rc, counters);

    return out;
}

} // namespace hjsweep

#endif // HJSWEEP_RECONSTRUCT_HPP
