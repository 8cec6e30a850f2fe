#ifndef HJSWEEP_PROBLEMS_HPP
#define HJSWEEP_PROBLEMS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hjsweep/grid.hpp"
#include "hjsweep/hamiltonian.hpp"

namespace hjsweep {

// ---------------------------------------------------------------------------
// Quartic slowness surfaces (travel-time problems in homogeneous elastic
// media) and the support-function travel time they induce for a point source.
// ---------------------------------------------------------------------------

struct AnisoParams {
    double a11, a33, a13, a44;
};

enum class WaveBranch : std::uint8_t { QuasiP, QuasiSV };

/// Slowness curve c1 p1^4 + c2 p1^2 p2^2 + c3 p2^4 + c4 p1^2 + c5 p2^2 + 1 = 0
/// and the travel time t(x) = max_theta x . p(theta) of a source at the
/// origin. Exact for the convex quasi-P branch; for the nonconvex quasi-SV
/// branch it carries kinks along the hull-bridge directions.
class SlownessSupport {
  public:
    explicit SlownessSupport(const AnisoParams& a, WaveBranch branch, int samples = 4096)
        : branch_(branch), samples_(samples) {
        c1_ = a.a11 * a.a44;
        c2_ = a.a11 * a.a33 + a.a44 * a.a44 - (a.a13 + a.a44) * (a.a13 + a.a44);
        c3_ = a.a33 * a.a44;
        c4_ = -(a.a11 + a.a44);
        c5_ = -(a.a33 + a.a44);
        px_.resize(samples_);
        py_.resize(samples_);
        for (int k = 0; k < samples_; ++k) {
            const double th = 2.0 * std::numbers::pi * k / samples_;
            const double r = radius(th);
            px_[k] = r * std::cos(th);
            py_[k] = r * std::sin(th);
            max_radius_ = std::max(max_radius_, r);
        }
    }

    /// Positive root of the quartic along direction theta.
    double radius(double theta) const {
        const double d1 = std::cos(theta), d2 = std::sin(theta);
        const double A = c1_ * d1 * d1 * d1 * d1 + c2_ * d1 * d1 * d2 * d2 + c3_ * d2 * d2 * d2 * d2;
        const double B = c4_ * d1 * d1 + c5_ * d2 * d2;
        const double disc = B * B - 4.0 * A;
        if (disc < 0.0 || A <= 0.0)
            throw std::domain_error("SlownessSupport: no real slowness along direction");
        const double s = (branch_ == WaveBranch::QuasiP) ? (-B - std::sqrt(disc)) / (2.0 * A)
                                                         : (-B + std::sqrt(disc)) / (2.0 * A);
        if (!(s > 0.0))
            throw std::domain_error("SlownessSupport: nonpositive squared slowness");
        return std::sqrt(s);
    }

    double max_radius() const { return max_radius_; }

    /// Support value max_theta (x,y) . p(theta): dense scan plus golden
    /// section refinement around the best sample.
    double operator()(double x, double y) const {
        if (x == 0.0 && y == 0.0) return 0.0;
        int best = 0;
        double fbest = -std::numeric_limits<double>::max();
        for (int k = 0; k < samples_; ++k) {
            const double f = x * px_[k] + y * py_[k];
            if (f > fbest) {
                fbest = f;
                best = k;
            }
        }
        const double step = 2.0 * std::numbers::pi / samples_;
        double lo = (best - 1) * step, hi = (best + 1) * step;
        auto val = [&](double th) {
            const double r = radius(th);
            return x * r * std::cos(th) + y * r * std::sin(th);
        };
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
        double f1 = val(t1), f2 = val(t2);
        for (int it = 0; it < 60 && (hi - lo) > 1e-13; ++it) {
            if (f1 < f2) {
                lo = t1;
                t1 = t2;
                f1 = f2;
                t2 = lo + gr * (hi - lo);
                f2 = val(t2);
            } else {
                hi = t2;
                t2 = t1;
                f2 = f1;
                t1 = hi - gr * (hi - lo);
                f1 = val(t1);
            }
        }
        return std::max(fbest, std::max(f1, f2));
    }

    /// H(u,v) with H = 1 on the slowness curve.
    std::function<double(double, double)> hamiltonian() const {
        const double c1 = c1_, c2 = c2_, c3 = c3_, c4 = c4_, c5 = c5_;
        const bool p_branch = branch_ == WaveBranch::QuasiP;
        return [=](double u, double v) {
            const double u2 = u * u, v2 = v * v;
            const double A = c1 * u2 * u2 + c2 * u2 * v2 + c3 * v2 * v2;
            const double B = c4 * u2 + c5 * v2;
            const double disc = std::sqrt(std::max(0.25 * B * B - A, 0.0));
            const double inner = p_branch ? (-0.5 * B + disc) : (-0.5 * B - disc);
            return std::sqrt(std::max(inner, 0.0));
        };
    }

  private:
    double c1_, c2_, c3_, c4_, c5_;
    WaveBranch branch_;
    int samples_;
    std::vector<double> px_, py_;
    double max_radius_ = 0.0;
};

inline AnisoParams ex8_pwave_params() { return {15.0638, 10.8373, 1.6381, 3.1258}; }
inline AnisoParams ex8_svwave_params() { return {15.90, 6.21, 4.82, 4.00}; }

/// Travel-time reference for the quasi-P benchmark medium.
inline double pwave_reference(double x, double y) {
    static const SlownessSupport support(ex8_pwave_params(), WaveBranch::QuasiP);
    return support(x, y);
}

// ---------------------------------------------------------------------------
// Problem description
// ---------------------------------------------------------------------------

struct HamiltonianSpec {
    HamiltonianForm form = HamiltonianForm::GodunovEikonal;
    std::function<double(double, double)> H;   // Lax-Friedrichs only
    double u_hint = 1.0, v_hint = 1.0;         // startup derivative range
};

using ScalarFn = std::function<double(double, double)>;
using VectorFn = std::function<std::array<double, 2>(double, double)>;
using MaskFn = std::function<bool(double, double)>;

/// A static Hamilton-Jacobi boundary-value problem on a rectangle.
struct ProblemSpec {
    std::string name;
    std::string summary;
    Rect domain;
    HamiltonianSpec hamiltonian;
    ScalarFn f;
    GammaGeometry gamma;
    ScalarFn pin_phi;          // prescribed values on the inflow set, its band, and pinned boxes
    VectorFn pin_grad;         // empty: derive pinned derivatives from pin_phi
    std::optional<ScalarFn> exact_phi;
    VectorFn exact_grad;       // empty when unknown
    std::vector<PinnedBox> pinned_boxes;
    MaskFn error_mask;         // empty: whole domain
    // Dirichlet values prescribed on the outermost node layer only (data on
    // the domain edge that is not an inflow curve, so no 2h band applies).
    bool pin_domain_edge = false;
};

// ---------------------------------------------------------------------------
// Built-in benchmark geometry helpers
// ---------------------------------------------------------------------------

namespace geom {

inline double circle_distance(double x, double y, double cx, double cy, double r) {
    return std::fabs(std::hypot(x - cx, y - cy) - r);
}

inline std::array<double, 2> circle_gradient(double x, double y, double cx, double cy, double r) {
    const double dxc = x - cx, dyc = y - cy;
    const double rr = std::hypot(dxc, dyc);
    if (rr < 1e-300) return {0.0, 0.0};
    const double s = (rr >= r) ? 1.0 : -1.0;
    return {s * dxc / rr, s * dyc / rr};
}

inline double segment_distance(double x, double y, double ax, double ay, double bx, double by,
                               std::array<double, 2>* nearest = nullptr) {
    const double ux = bx - ax, uy = by - ay;
    const double len2 = ux * ux + uy * uy;
    double t = ((x - ax) * ux + (y - ay) * uy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const double qx = ax + t * ux, qy = ay + t * uy;
    if (nearest) *nearest = {qx, qy};
    return std::hypot(x - qx, y - qy);
}

/// Distance to the three-quarter circle (radius 1/2, angles outside the open
/// first quadrant) closed by the two axis segments of length 1/2.
inline double sector_distance(double x, double y, std::array<double, 2>* nearest = nullptr) {
    const double r = std::hypot(x, y);
    double theta = std::atan2(y, x);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;

    double d_arc;
    std::array<double, 2> q_arc;
    const bool on_arc_range = theta >= 0.5 * std::numbers::pi || theta == 0.0;
    if (on_arc_range && r > 1e-300) {
        d_arc = std::fabs(r - 0.5);
        q_arc = {0.5 * x / r, 0.5 * y / r};
    } else {
        const double de1 = std::hypot(x - 0.5, y);
        const double de2 = std::hypot(x, y - 0.5);
        if (de1 <= de2) {
            d_arc = de1;
            q_arc = {0.5, 0.0};
        } else {
            d_arc = de2;
            q_arc = {0.0, 0.5};
        }
    }

    std::array<double, 2> q_sx, q_sy;
    const double d_sx = segment_distance(x, y, 0.0, 0.0, 0.5, 0.0, &q_sx);
    const double d_sy = segment_distance(x, y, 0.0, 0.0, 0.0, 0.5, &q_sy);

    double d = d_arc;
    std::array<double, 2> q = q_arc;
    if (d_sx < d) {
        d = d_sx;
        q = q_sx;
    }
    if (d_sy < d) {
        d = d_sy;
        q = q_sy;
    }
    if (nearest) *nearest = q;
    return d;
}

inline std::array<double, 2> distance_gradient(double x, double y, const std::array<double, 2>& q,
                                               double d) {
    if (d < 1e-300) return {0.0, 0.0};
    return {(x - q[0]) / d, (y - q[1]) / d};
}

} // namespace geom

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace detail {

inline ProblemSpec make_ex1() {
    using std::numbers::pi;
    ProblemSpec p;
    p.name = "ex1_sine_source";
    p.summary = "eikonal, smooth cosine solution, point source at the origin";
    p.domain = {-1.0, 1.0, -1.0, 1.0};
    p.f = [](double x, double y) {
        const double sx = std::sin(pi + 0.5 * pi * x), sy = std::sin(pi + 0.5 * pi * y);
        return 0.5 * pi * std::sqrt(sx * sx + sy * sy);
    };
    p.gamma.points = {{0.0, 0.0}};
    auto exact = [](double x, double y) {
        return std::cos(pi + 0.5 * pi * x) + std::cos(pi + 0.5 * pi * y);
    };
    auto grad = [](double x, double y) -> std::array<double, 2> {
        return {-0.5 * pi * std::sin(pi + 0.5 * pi * x), -0.5 * pi * std::sin(pi + 0.5 * pi * y)};
    };
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    return p;
}

inline ProblemSpec make_ex2() {
    ProblemSpec p;
    p.name = "ex2_circle";
    p.summary = "eikonal distance to a circle of radius 1/2";
    p.domain = {-1.0, 1.0, -1.0, 1.0};
    p.f = [](double, double) { return 1.0; };
    p.gamma.distance = [](double x, double y) { return std::hypot(x, y) - 0.5; };
    auto exact = [](double x, double y) { return geom::circle_distance(x, y, 0.0, 0.0, 0.5); };
    auto grad = [](double x, double y) { return geom::circle_gradient(x, y, 0.0, 0.0, 0.5); };
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    p.error_mask = [](double x, double y) {
        const bool inside = std::fabs(x) <= 0.9 && std::fabs(y) <= 0.9;
        const bool center = std::fabs(x) <= 0.15 && std::fabs(y) <= 0.15;
        return inside && !center;
    };
    return p;
}

inline ProblemSpec make_ex3() {
    const double cx2 = std::sqrt(1.5);
    ProblemSpec p;
    p.name = "ex3_two_circles";
    p.summary = "eikonal distance to two circles";
    p.domain = {-3.0, 3.0, -3.0, 3.0};
    p.f = [](double, double) { return 1.0; };
    p.gamma.distance = [cx2](double x, double y) {
        return std::min(geom::circle_distance(x, y, -1.0, 0.0, 0.5),
                        geom::circle_distance(x, y, cx2, 0.0, 0.5));
    };
    auto exact = p.gamma.distance;
    auto grad = [cx2](double x, double y) {
        const double d1 = geom::circle_distance(x, y, -1.0, 0.0, 0.5);
        const double d2 = geom::circle_distance(x, y, cx2, 0.0, 0.5);
        return (d1 <= d2) ? geom::circle_gradient(x, y, -1.0, 0.0, 0.5)
                          : geom::circle_gradient(x, y, cx2, 0.0, 0.5);
    };
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    const double sq375 = std::sqrt(0.375);
    p.error_mask = [cx2, sq375](double x, double y) {
        if (std::fabs(x) > 2.85 || std::fabs(y) > 2.85) return false;
        if (x >= -1.15 && x <= -0.85 && std::fabs(y) <= 0.15) return false;
        if (x >= cx2 - 0.15 && x <= cx2 + 0.15 && std::fabs(y) <= 0.15) return false;
        if (x >= sq375 - 0.65 && x <= sq375 - 0.35 && std::fabs(y) <= 2.85) return false;
        return true;
    };
    return p;
}

inline ProblemSpec make_ex4() {
    ProblemSpec p;
    p.name = "ex4_point_source";
    p.summary = "eikonal distance to a point source, exact box of side 0.3";
    p.domain = {-1.0, 1.0, -1.0, 1.0};
    p.f = [](double, double) { return 1.0; };
    p.gamma.points = {{0.0, 0.0}};
    auto exact = [](double x, double y) { return std::hypot(x, y); };
    auto grad = [](double x, double y) -> std::array<double, 2> {
        const double r = std::hypot(x, y);
        if (r < 1e-300) return {0.0, 0.0};
        return {x / r, y / r};
    };
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    // exact values prescribed out to 0.3 from the source; the benchmark
    // error levels pin down this reading of the box extent
    p.pinned_boxes = {{0.0, 0.0, 0.3, 0.0}};
    return p;
}

inline ProblemSpec make_ex5() {
    ProblemSpec p;
    p.name = "ex5_sector";
    p.summary = "eikonal distance to a three-quarter circle closed by axis segments";
    p.domain = {-1.0, 1.0, -1.0, 1.0};
    p.f = [](double, double) { return 1.0; };
    p.gamma.distance = [](double x, double y) { return geom::sector_distance(x, y); };
    auto exact = [](double x, double y) { return geom::sector_distance(x, y); };
    auto grad = [](double x, double y) {
        std::array<double, 2> q;
        const double d = geom::sector_distance(x, y, &q);
        return geom::distance_gradient(x, y, q, d);
    };
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    p.error_mask = [](double x, double y) {
        const bool smooth_half = x <= 0.0 || y <= 0.0;
        const bool center = std::fabs(x) <= 0.5 && std::fabs(y) <= 0.5;
        return smooth_half && !center;
    };
    return p;
}

inline ProblemSpec make_ex6(bool case_a) {
    using std::numbers::pi;
    ProblemSpec p;
    p.name = case_a ? "ex6a_shape" : "ex6b_shape";
    p.summary = case_a ? "shape-from-shading, smooth sine product"
                       : "shape-from-shading, nonsmooth composite solution";
    p.domain = {0.0, 1.0, 0.0, 1.0};
    p.f = [](double x, double y) {
        const double a = std::cos(2.0 * pi * x) * std::sin(2.0 * pi * y);
        const double b = std::sin(2.0 * pi * x) * std::cos(2.0 * pi * y);
        return 2.0 * pi * std::sqrt(a * a + b * b);
    };
    p.gamma.points = {{0.25, 0.25}, {0.75, 0.75}, {0.25, 0.75}, {0.75, 0.25}, {0.5, 0.5}};
    p.gamma.distance = [](double x, double y) {
        return std::min(std::min(x, 1.0 - x), std::min(y, 1.0 - y));
    };
    ScalarFn exact;
    VectorFn grad;
    if (case_a) {
        exact = [](double x, double y) { return std::sin(2.0 * pi * x) * std::sin(2.0 * pi * y); };
        grad = [](double x, double y) -> std::array<double, 2> {
            return {2.0 * pi * std::cos(2.0 * pi * x) * std::sin(2.0 * pi * y),
                    2.0 * pi * std::sin(2.0 * pi * x) * std::cos(2.0 * pi * y)};
        };
    } else {
        exact = [](double x, double y) {
            const double ss = std::sin(2.0 * pi * x) * std::sin(2.0 * pi * y);
            if (std::fabs(x + y - 1.0) < 0.5 && std::fabs(x - y) < 0.5) {
                const double cc = 1.0 + std::cos(2.0 * pi * x) * std::cos(2.0 * pi * y);
                return std::max(std::fabs(ss), cc);
            }
            return std::fabs(ss);
        };
        grad = [](double x, double y) -> std::array<double, 2> {
            const double ss = std::sin(2.0 * pi * x) * std::sin(2.0 * pi * y);
            const double cc = 1.0 + std::cos(2.0 * pi * x) * std::cos(2.0 * pi * y);
            const bool diamond = std::fabs(x + y - 1.0) < 0.5 && std::fabs(x - y) < 0.5;
            if (diamond && cc > std::fabs(ss)) {
                return {-2.0 * pi * std::sin(2.0 * pi * x) * std::cos(2.0 * pi * y),
                        -2.0 * pi * std::cos(2.0 * pi * x) * std::sin(2.0 * pi * y)};
            }
            const double s = (ss >= 0.0) ? 1.0 : -1.0;
            return {s * 2.0 * pi * std::cos(2.0 * pi * x) * std::sin(2.0 * pi * y),
                    s * 2.0 * pi * std::sin(2.0 * pi * x) * std::cos(2.0 * pi * y)};
        };
    }
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    for (const auto& src : p.gamma.points)
        p.pinned_boxes.push_back({src[0], src[1], 0.0, 1.0});
    return p;
}

inline ProblemSpec make_ex7() {
    ProblemSpec p;
    p.name = "ex7_biquadratic";
    p.summary = "eikonal with bi-quadratic exact solution, data on the full boundary";
    p.domain = {-1.0, 1.0, -1.0, 1.0};
    p.f = [](double x, double y) {
        const double a = y * (1.0 - x * x), b = x * (1.0 - y * y);
        return 2.0 * std::sqrt(a * a + b * b);
    };
    p.gamma.points = {{0.0, 0.0}};
    p.gamma.distance = [](double x, double y) {
        return std::min(1.0 - std::fabs(x), 1.0 - std::fabs(y));
    };
    auto exact = [](double x, double y) { return (1.0 - x * x) * (1.0 - y * y); };
    auto grad = [](double x, double y) -> std::array<double, 2> {
        return {-2.0 * x * (1.0 - y * y), -2.0 * y * (1.0 - x * x)};
    };
    p.exact_phi = exact;
    p.exact_grad = grad;
    p.pin_phi = exact;
    p.pin_grad = grad;
    p.pinned_boxes = {{0.0, 0.0, 0.0, 1.5}};
    return p;
}

inline ProblemSpec make_ex8(WaveBranch branch) {
    const bool p_branch = branch == WaveBranch::QuasiP;
    const AnisoParams params = p_branch ? ex8_pwave_params() : ex8_svwave_params();
    auto support = std::make_shared<SlownessSupport>(params, branch);

    ProblemSpec p;
    p.name = p_branch ? "ex8_pwave" : "ex8_svwave";
    p.summary = p_branch ? "quasi-P travel time, convex quartic Hamiltonian"
                         : "quasi-SV travel time, nonconvex quartic Hamiltonian";
    p.domain = {-1.0, 1.0, -1.0, 1.0};
    p.f = [](double, double) { return 1.0; };
    p.gamma.points = {{0.0, 0.0}};
    p.hamiltonian.form = HamiltonianForm::LaxFriedrichs;
    p.hamiltonian.H = support->hamiltonian();
    p.hamiltonian.u_hint = 1.2 * support->max_radius();
    p.hamiltonian.v_hint = 1.2 * support->max_radius();
    p.pin_phi = [support](double x, double y) { return (*support)(x, y); };
    if (p_branch)
        p.exact_phi = p.pin_phi;
    p.pinned_boxes = {{0.0, 0.0, 0.15, 0.0}};
    if (p_branch) {
        p.error_mask = [](double x, double y) { return std::fabs(x) <= 0.9 && std::fabs(y) <= 0.9; };
    } else {
        p.error_mask = [](double x, double y) {
            return std::fabs(x) <= 0.9 && std::fabs(y) <= 0.9 &&
                   std::min(std::fabs(x), std::fabs(y)) >= 0.15;
        };
    }
    return p;
}

} // namespace detail

/// The benchmark problems, in presentation order.
inline const std::vector<ProblemSpec>& registry() {
    static const std::vector<ProblemSpec> problems = [] {
        std::vector<ProblemSpec> v;
        v.push_back(detail::make_ex1());
        v.push_back(detail::make_ex2());
        v.push_back(detail::make_ex3());
        v.push_back(detail::make_ex4());
        v.push_back(detail::make_ex5());
        v.push_back(detail::make_ex6(true));
        v.push_back(detail::make_ex6(false));
        v.push_back(detail::make_ex7());
        v.push_back(detail::make_ex8(WaveBranch::QuasiP));
        v.push_back(detail::make_ex8(WaveBranch::QuasiSV));
        return v;
    }();
    return problems;
}

/// Looks a problem up by full name or short alias (ex1..ex5, ex6a, ex6b,
/// ex7, ex8p, ex8sv). Returns nullptr if unknown.
inline const ProblemSpec* find_problem(const std::string& name) {
    static const std::vector<std::pair<std::string, std::string>> aliases = {
        {"ex1", "ex1_sine_source"}, {"ex2", "ex2_circle"},      {"ex3", "ex3_two_circles"},
        {"ex4", "ex4_point_source"}, {"ex5", "ex5_sector"},     {"ex6a", "ex6a_shape"},
        {"ex6b", "ex6b_shape"},      {"ex7", "ex7_biquadratic"}, {"ex8p", "ex8_pwave"},
        {"ex8sv", "ex8_svwave"},
    };
    std::string full = name;
    for (const auto& [alias, target] : aliases)
        if (name == alias) full = target;
    for (const auto& p : registry())
        if (p.name == full) return &p;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Problem instantiated on a mesh
// ---------------------------------------------------------------------------

/// A ProblemSpec sampled onto a Grid2D: node categories, cached right-hand
/// side and exact values, the error mask, and the numerical Hamiltonian with
/// its dissipation bounds.
class DiscreteProblem {
  public:
    DiscreteProblem(const ProblemSpec& spec, int n) : DiscreteProblem(spec, n, n) {}

    DiscreteProblem(const ProblemSpec& spec, int nx, int ny)
        : spec_(spec), grid_(nx, ny, spec.domain),
          categories_(classify_points(grid_, spec.gamma, spec.pinned_boxes)),
          f_(grid_), exact_(grid_) {
        if (spec_.pin_domain_edge) {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1)
                        categories_(i, j) = PointCategory::GammaExact;
        }
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                f_(i, j) = spec_.f(grid_.x(i), grid_.y(j));
                if (is_update_point(categories_(i, j))) ++n_update_;
            }
        if (spec_.exact_phi) {
            for (int j = 0; j < ny; ++j)
                for (int i = 0; i < nx; ++i)
                    exact_(i, j) = (*spec_.exact_phi)(grid_.x(i), grid_.y(j));
        }
        ham_.form = spec_.hamiltonian.form;
        if (ham_.form == HamiltonianForm::LaxFriedrichs) {
            ham_.H = spec_.hamiltonian.H;
            auto [a, b] = estimate_lf_bounds(ham_.H, spec_.hamiltonian.u_hint, spec_.hamiltonian.v_hint);
            ham_.alpha = a;
            ham_.beta = b;
        }
    }

    const ProblemSpec& spec() const { return spec_; }
    const Grid2D& grid() const { return grid_; }
    const Field<PointCategory>& categories() const { return categories_; }
    PointCategory category(int i, int j) const { return categories_(i, j); }
    const NumericalHamiltonian& ham() const { return ham_; }
    double f(int i, int j) const { return f_(i, j); }
    long n_update_points() const { return n_update_; }
    bool has_exact() const { return spec_.exact_phi.has_value(); }
    double exact(int i, int j) const { return exact_(i, j); }

    bool updatable(int i, int j) const { return is_update_point(categories_(i, j)); }
    bool pinned(int i, int j) const { return is_pinned(categories_(i, j)); }

    bool in_error_mask(int i, int j) const {
        if (pinned(i, j)) return false;
        if (!spec_.error_mask) return true;
        return spec_.error_mask(grid_.x(i), grid_.y(j));
    }

    /// f_ij - Hhat(one-sided derivatives); zero at the discrete solution.
    double residual(int i, int j, const Gradient4& g) const { return f_(i, j) - ham_(g); }

    /// Tightens the Lax-Friedrichs bounds to an observed derivative range,
    /// inflated by 20%. No-op for the Godunov form.
    void set_lf_range(double u_max, double v_max) {
        if (ham_.form != HamiltonianForm::LaxFriedrichs) return;
        auto [a, b] = estimate_lf_bounds(ham_.H, 1.2 * u_max, 1.2 * v_max);
        ham_.alpha = a;
        ham_.beta = b;
    }

  private:
    ProblemSpec spec_;
    Grid2D grid_;
    Field<PointCategory> categories_;
    GridFunction f_;
    GridFunction exact_;
    NumericalHamiltonian ham_;
    long n_update_ = 0;
};

struct MaskedError {
    double l1 = 0.0;
    double linf = 0.0;
    long count = 0;
};

/// Mean and max absolute error over unpinned masked nodes.
inline MaskedError masked_error(const GridFunction& phi, const DiscreteProblem& dp) {
    if (!dp.has_exact())
        throw std::invalid_argument("masked_error: problem has no exact solution");
    MaskedError e;
    for (int j = 0; j < dp.grid().ny(); ++j)
        for (int i = 0; i < dp.grid().nx(); ++i) {
            if (!dp.in_error_mask(i, j)) continue;
            const double d = std::fabs(phi(i, j) - dp.exact(i, j));
            e.l1 += d;
            e.linf = std::max(e.linf, d);
            ++e.count;
        }
    if (e.count > 0) e.l1 /= e.count;
    return e;
}

/// Spec-level classification entry point.
inline Field<PointCategory> classify_points(const Grid2D& g, const ProblemSpec& spec) {
    return classify_points(g, spec.gamma, spec.pinned_boxes);
}

} // namespace hjsweep

#endif // HJSWEEP_PROBLEMS_HPP
