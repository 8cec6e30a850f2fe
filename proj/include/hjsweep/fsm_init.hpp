#ifndef HJSWEEP_FSM_INIT_HPP
#define HJSWEEP_FSM_INIT_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include "hjsweep/problems.hpp"

namespace hjsweep {

/// Grid functions advanced by the iteration: the solution and its stored
/// first derivatives.
struct SolutionState {
    GridFunction phi, u, v;

    SolutionState() = default;
    explicit SolutionState(const Grid2D& g) : phi(g), u(g), v(g) {}
};

namespace detail {

constexpr double kUnsetValue = 1e10;

struct SweepRange {
    int i0, i1, istep, j0, j1, jstep;
};

inline SweepRange sweep_range(const Grid2D& g, int direction) {
    const int nx = g.nx(), ny = g.ny();
    switch (direction & 3) {
        case 0: return {0, nx, 1, 0, ny, 1};
        case 1: return {nx - 1, -1, -1, 0, ny, 1};
        case 2: return {nx - 1, -1, -1, ny - 1, -1, -1};
        default: return {0, nx, 1, ny - 1, -1, -1};
    }
}

} // namespace detail

/// First-order Godunov update for |grad phi| = f on a square-spacing mesh:
/// the causal local solve of Zhao's fast sweeping method, iterated over the
/// four sweep orderings until stationary.
inline GridFunction first_order_fsm_eikonal(const DiscreteProblem& dp, const GridFunction& pinned_phi) {
    const Grid2D& g = dp.grid();
    const int nx = g.nx(), ny = g.ny();
    const double h = g.h();   // local solve assumes square spacing

    GridFunction phi(g, detail::kUnsetValue);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (dp.pinned(i, j)) phi(i, j) = pinned_phi(i, j);

    auto neighbor = [&](int i, int j) {
        return g.interior(i, j) ? phi(i, j) : detail::kUnsetValue;
    };

    const int max_sweeps = 4000;
    double change = 0.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const auto r = detail::sweep_range(g, sweep);
        for (int i = r.i0; i != r.i1; i += r.istep)
            for (int j = r.j0; j != r.j1; j += r.jstep) {
                if (!dp.updatable(i, j)) continue;
                const double a = std::min(neighbor(i - 1, j), neighbor(i + 1, j));
                const double b = std::min(neighbor(i, j - 1), neighbor(i, j + 1));
                const double fh = dp.f(i, j) * h;
                double cand;
                if (std::fabs(a - b) >= fh)
                    cand = std::min(a, b) + fh;
                else
                    cand = 0.5 * (a + b + std::sqrt(2.0 * fh * fh - (a - b) * (a - b)));
                if (cand < phi(i, j)) {
                    change = std::max(change, phi(i, j) - cand);
                    phi(i, j) = cand;
                }
            }
        if ((sweep & 3) == 3) {
            if (change < 1e-12) break;
            change = 0.0;
        }
    }
    return phi;
}

/// First-order Lax-Friedrichs sweeping startup for general Hamiltonians,
/// with linear extrapolation past the mesh edge and monotone (non-increasing)
/// updates from a large initial value. Loose tolerance: this only seeds the
/// high order iteration.
inline GridFunction first_order_fsm_lf(const DiscreteProblem& dp, const GridFunction& pinned_phi) {
    const Grid2D& g = dp.grid();
    const int nx = g.nx(), ny = g.ny();
    const double dx = g.dx(), dy = g.dy();
    const auto& H = dp.ham().H;
    const double alpha = dp.ham().alpha, beta = dp.ham().beta;
    const double denom = alpha / dx + beta / dy;

    GridFunction phi(g, detail::kUnsetValue);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (dp.pinned(i, j)) phi(i, j) = pinned_phi(i, j);

    auto at = [&](int i, int j) {
        if (g.interior(i, j)) return phi(i, j);
        const int ci = std::clamp(i, 0, nx - 1), cj = std::clamp(j, 0, ny - 1);
        const int bi = std::clamp(2 * ci - i, 0, nx - 1), bj = std::clamp(2 * cj - j, 0, ny - 1);
        return 2.0 * phi(ci, cj) - phi(bi, bj);
    };

    const int max_sweeps = 4000;
    double change = 0.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const auto r = detail::sweep_range(g, sweep);
        for (int i = r.i0; i != r.i1; i += r.istep)
            for (int j = r.j0; j != r.j1; j += r.jstep) {
                if (!dp.updatable(i, j)) continue;
                const double pe = at(i + 1, j), pw = at(i - 1, j);
                const double pn = at(i, j + 1), ps = at(i, j - 1);
                const double ub = (pe - pw) / (2.0 * dx), vb = (pn - ps) / (2.0 * dy);
                const double cand =
                    (dp.f(i, j) - H(ub, vb) + alpha * (pe + pw) / (2.0 * dx) + beta * (pn + ps) / (2.0 * dy)) /
                    denom;
                if (cand < phi(i, j)) {
                    change = std::max(change, phi(i, j) - cand);
                    phi(i, j) = cand;
                }
            }
        if ((sweep & 3) == 3) {
            if (change < 1e-6) break;
            change = 0.0;
        }
    }
    return phi;
}

/// Forward differences of phi (backward on the last interior line).
inline std::pair<GridFunction, GridFunction> init_derivatives(const GridFunction& phi, const Grid2D& g) {
    const int nx = g.nx(), ny = g.ny();
    GridFunction u(g), v(g);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            u(i, j) = (i + 1 < nx) ? (phi(i + 1, j) - phi(i, j)) / g.dx()
                                   : (phi(i, j) - phi(i - 1, j)) / g.dx();
            v(i, j) = (j + 1 < ny) ? (phi(i, j + 1) - phi(i, j)) / g.dy()
                                   : (phi(i, j) - phi(i, j - 1)) / g.dy();
        }
    return {std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Classical fifth-order WENO point-value derivatives, used to manufacture
// pinned derivative data when a problem has no analytic gradient.
// ---------------------------------------------------------------------------

namespace detail {

inline double weno5_from_diffs(double v1, double v2, double v3, double v4, double v5) {
    const double p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    const double p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    const double p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
    const double b1 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3) * (v1 - 2.0 * v2 + v3) +
                      0.25 * (v1 - 4.0 * v2 + 3.0 * v3) * (v1 - 4.0 * v2 + 3.0 * v3);
    const double b2 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4) * (v2 - 2.0 * v3 + v4) +
                      0.25 * (v2 - v4) * (v2 - v4);
    const double b3 = 13.0 / 12.0 * (v3 - 2.0 * v4 + v5) * (v3 - 2.0 * v4 + v5) +
                      0.25 * (3.0 * v3 - 4.0 * v4 + v5) * (3.0 * v3 - 4.0 * v4 + v5);
    const double eps = 1e-6;
    const double w1 = 0.1 / ((eps + b1) * (eps + b1));
    const double w2 = 0.6 / ((eps + b2) * (eps + b2));
    const double w3 = 0.3 / ((eps + b3) * (eps + b3));
    return (w1 * p1 + w2 * p2 + w3 * p3) / (w1 + w2 + w3);
}

} // namespace detail

/// phi_x^- at the fourth node of seven samples phi(i-3..i+3) spaced h apart.
inline double weno5_derivative_minus(const std::array<double, 7>& p, double h) {
    return detail::weno5_from_diffs((p[1] - p[0]) / h, (p[2] - p[1]) / h, (p[3] - p[2]) / h,
                                    (p[4] - p[3]) / h, (p[5] - p[4]) / h);
}

/// phi_x^+ at the fourth node; mirror of the minus-side reconstruction.
inline double weno5_derivative_plus(const std::array<double, 7>& p, double h) {
    return -detail::weno5_from_diffs((p[5] - p[6]) / h, (p[4] - p[5]) / h, (p[3] - p[4]) / h,
                                     (p[2] - p[3]) / h, (p[1] - p[2]) / h);
}

namespace detail {

inline double upwind_pick(double dm, double dp, double fallback) {
    if (dm > 0.0 && dp > 0.0) return dm;
    if (dm < 0.0 && dp < 0.0) return dp;
    (void)fallback;
    return 0.5 * (dm + dp);
}

} // namespace detail

/// Full startup: pin prescribed values, run the first-order sweep, difference
/// it for the derivative fields, overwrite pinned derivatives with analytic
/// gradients (or one-sided WENO values of the pinned data when no gradient is
/// available), tighten the Lax-Friedrichs bounds to the observed derivative
/// range, and fill the ghost band.
inline SolutionState initialize(DiscreteProblem& dp) {
    const Grid2D& g = dp.grid();
    const int nx = g.nx(), ny = g.ny();
    const ProblemSpec& spec = dp.spec();

    GridFunction pinned_phi(g);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (dp.pinned(i, j)) pinned_phi(i, j) = spec.pin_phi(g.x(i), g.y(j));

    SolutionState s(g);
    s.phi = (dp.ham().form == HamiltonianForm::GodunovEikonal)
                ? first_order_fsm_eikonal(dp, pinned_phi)
                : first_order_fsm_lf(dp, pinned_phi);

    auto [u, v] = init_derivatives(s.phi, g);
    s.u = std::move(u);
    s.v = std::move(v);

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!dp.pinned(i, j)) continue;
            const double x = g.x(i), y = g.y(j);
            if (spec.pin_grad) {
                const auto grad = spec.pin_grad(x, y);
                s.u(i, j) = grad[0];
                s.v(i, j) = grad[1];
            } else {
                std::array<double, 7> px, py;
                for (int k = -3; k <= 3; ++k) {
                    px[k + 3] = spec.pin_phi(x + k * g.dx(), y);
                    py[k + 3] = spec.pin_phi(x, y + k * g.dy());
                }
                s.u(i, j) = detail::upwind_pick(weno5_derivative_minus(px, g.dx()),
                                                weno5_derivative_plus(px, g.dx()), 0.0);
                s.v(i, j) = detail::upwind_pick(weno5_derivative_minus(py, g.dy()),
                                                weno5_derivative_plus(py, g.dy()), 0.0);
            }
        }

    if (dp.ham().form == HamiltonianForm::LaxFriedrichs) {
        double u_max = 0.0, v_max = 0.0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                u_max = std::max(u_max, std::fabs(s.u(i, j)));
                v_max = std::max(v_max, std::fabs(s.v(i, j)));
            }
        dp.set_lf_range(u_max, v_max);
    }

    extrapolate_ghosts(s.phi, g);
    for (int j = 0; j < ny; ++j) derivative_ghosts_x(s.u, s.phi, g, j);
    for (int i = 0; i < nx; ++i) derivative_ghosts_y(s.v, s.phi, g, i);
    return s;
}

} // namespace hjsweep

#endif // HJSWEEP_FSM_INIT_HPP
