#ifndef HJSWEEP_SOLVER_HPP
#define HJSWEEP_SOLVER_HPP

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hjsweep/fsm_init.hpp"
#include "hjsweep/problems.hpp"
#include "hjsweep/reconstruct.hpp"

namespace hjsweep {

enum class SchemeKind : std::uint8_t { FEJacobi, FEFSM, RKJacobi, RKFSM, RKFSM_T };

inline const char* scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::FEJacobi: return "fe-jacobi";
        case SchemeKind::FEFSM: return "fe-fsm";
        case SchemeKind::RKJacobi: return "rk-jacobi";
        case SchemeKind::RKFSM: return "rk-fsm";
        default: return "rk-fsm-t";
    }
}

inline bool parse_scheme(const std::string& s, SchemeKind& out) {
    if (s == "fe-jacobi") out = SchemeKind::FEJacobi;
    else if (s == "fe-fsm") out = SchemeKind::FEFSM;
    else if (s == "rk-jacobi") out = SchemeKind::RKJacobi;
    else if (s == "rk-fsm") out = SchemeKind::RKFSM;
    else if (s == "rk-fsm-t") out = SchemeKind::RKFSM_T;
    else return false;
    return true;
}

inline double default_cfl(SchemeKind k) { return k == SchemeKind::FEJacobi ? 0.1 : 1.0; }

struct SchemeConfig {
    SchemeKind scheme = SchemeKind::FEFSM;
    double cfl = 1.0;
    WeightParams weights{};
    ReconMode reconstruction = ReconMode::Hweno;
    double tol = 1e-14;
    long max_iter = 100000;
    int checkpoint_stride = 4;
};

/// Pseudo-time step of the fixed-point iteration.
inline double time_step(double cfl, double alpha, double beta, double dx, double dy) {
    if (!(alpha > 0.0) && !(beta > 0.0))
        throw std::invalid_argument("time_step: alpha and beta both zero");
    return cfl / (alpha / dx + beta / dy);
}

/// Upwind refresh of the stored derivative: take a one-sided value only when
/// both sides agree on the sign, otherwise keep the previous value.
inline std::array<double, 2> update_derivatives(const Gradient4& g, double u_old, double v_old) {
    double u = u_old, v = v_old;
    if (g.xm > 0.0 && g.xp > 0.0) u = g.xm;
    else if (g.xm < 0.0 && g.xp < 0.0) u = g.xp;
    if (g.ym > 0.0 && g.yp > 0.0) v = g.ym;
    else if (g.ym < 0.0 && g.yp < 0.0) v = g.yp;
    return {u, v};
}

struct Checkpoint {
    long iter = 0;
    double delta = 0.0;
    double residual = 0.0;
    double l1_error = std::numeric_limits<double>::quiet_NaN();
};

struct IterationStats {
    long iterations = 0;
    bool converged = false;
    double final_delta = std::numeric_limits<double>::quiet_NaN();
    double alpha = 0.0, beta = 0.0;
    double seconds = 0.0;
    std::vector<Checkpoint> history;
    ReconCounters recon;
};

enum class SolveStatus : std::uint8_t { Converged, NotConverged, Diverged };

struct SolveResult {
    SolutionState state;
    IterationStats stats;
    SolveStatus status = SolveStatus::NotConverged;
    int bad_i = -1, bad_j = -1;   // first non-finite node when diverged
};

namespace detail {

inline void derivative_ghosts(GridFunction& u, GridFunction& v, const GridFunction& phi,
                              const Grid2D& g) {
    for (int j = 0; j < g.ny(); ++j) derivative_ghosts_x(u, phi, g, j);
    for (int i = 0; i < g.nx(); ++i) derivative_ghosts_y(v, phi, g, i);
}

inline void refresh_ghosts(SolutionState& s, const Grid2D& g) {
    extrapolate_ghosts(s.phi, g);
    derivative_ghosts(s.u, s.v, s.phi, g);
}

inline ReconConfig recon_config(const SchemeConfig& cfg) {
    return ReconConfig{cfg.reconstruction, cfg.weights};
}

inline double scheme_dt(const DiscreteProblem& dp, const SchemeConfig& cfg) {
    return time_step(cfg.cfl, dp.ham().alpha, dp.ham().beta, dp.grid().dx(), dp.grid().dy());
}

// Derivative refresh for Jacobi stages: reconstruct from phi_next and the
// previous stage derivatives, write the upwind-selected values into u_next.
inline void jacobi_derivative_pass(const GridFunction& phi_next, const GridFunction& u_prev,
                                   const GridFunction& v_prev, GridFunction& u_next,
                                   GridFunction& v_next, const DiscreteProblem& dp,
                                   const SchemeConfig& cfg, ReconCounters* counters) {
    const Grid2D& g = dp.grid();
    const ReconConfig rc = recon_config(cfg);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            if (!dp.updatable(i, j)) continue;
            const Gradient4 grad =
                reconstruct_point(phi_next, u_prev, v_prev, g, i, j, rc, dp.category(i, j), counters);
            const auto uv = update_derivatives(grad, u_prev(i, j), v_prev(i, j));
            u_next(i, j) = uv[0];
            v_next(i, j) = uv[1];
        }
}

} // namespace detail

/// One Jacobi step of the forward Euler iteration: a full pass advancing phi
/// from the previous state, then a derivative pass on the advanced solution.
/// Returns the mean |phi change| over updated nodes.
inline double fe_jacobi_step(SolutionState& s, const DiscreteProblem& dp, const SchemeConfig& cfg,
                             ReconCounters* counters = nullptr) {
    const Grid2D& g = dp.grid();
    const double dt = detail::scheme_dt(dp, cfg);
    const ReconConfig rc = detail::recon_config(cfg);

    detail::refresh_ghosts(s, g);
    const GridFunction phi_old = s.phi;
    const GridFunction u_old = s.u;
    const GridFunction v_old = s.v;

    double acc = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            if (!dp.updatable(i, j)) continue;
            const Gradient4 grad =
                reconstruct_point(phi_old, u_old, v_old, g, i, j, rc, dp.category(i, j), counters);
            const double next = phi_old(i, j) + dt * dp.residual(i, j, grad);
            acc += std::fabs(next - phi_old(i, j));
            s.phi(i, j) = next;
        }
    extrapolate_ghosts(s.phi, g);
    detail::jacobi_derivative_pass(s.phi, u_old, v_old, s.u, s.v, dp, cfg, counters);
    detail::derivative_ghosts(s.u, s.v, s.phi, g);
    return acc / dp.n_update_points();
}

/// One directional Gauss-Seidel sweep of the forward Euler iteration.
/// Each visited node advances phi in place from the newest neighbor values
/// and immediately refreshes its stored derivatives.
inline double fe_fsm_pass(SolutionState& s, const DiscreteProblem& dp, const SchemeConfig& cfg,
                          int direction, ReconCounters* counters = nullptr) {
    const Grid2D& g = dp.grid();
    const double dt = detail::scheme_dt(dp, cfg);
    const ReconConfig rc = detail::recon_config(cfg);

    detail::refresh_ghosts(s, g);
    double acc = 0.0;
    const auto r = detail::sweep_range(g, direction);
    for (int i = r.i0; i != r.i1; i += r.istep)
        for (int j = r.j0; j != r.j1; j += r.jstep) {
            if (!dp.updatable(i, j)) continue;
            const PointCategory cat = dp.category(i, j);
            const Gradient4 grad = reconstruct_point(s.phi, s.u, s.v, g, i, j, rc, cat, counters);
            const double next = s.phi(i, j) + dt * dp.residual(i, j, grad);
            acc += std::fabs(next - s.phi(i, j));
            s.phi(i, j) = next;
            refresh_point_ghosts(s.phi, s.u, s.v, g, i, j);
            const Gradient4 grad2 = reconstruct_point(s.phi, s.u, s.v, g, i, j, rc, cat, counters);
            const auto uv = update_derivatives(grad2, s.u(i, j), s.v(i, j));
            s.u(i, j) = uv[0];
            s.v(i, j) = uv[1];
        }
    return acc / dp.n_update_points();
}

/// One third-order Runge-Kutta Jacobi step (three stages, each a phi pass
/// from the previous stage followed by a derivative pass). Counts as three
/// iterations.
inline double rk_jacobi_step(SolutionState& s, const DiscreteProblem& dp, const SchemeConfig& cfg,
                             ReconCounters* counters = nullptr) {
    const Grid2D& g = dp.grid();
    const double dt = detail::scheme_dt(dp, cfg);
    const ReconConfig rc = detail::recon_config(cfg);

    detail::refresh_ghosts(s, g);
    const GridFunction phi_old = s.phi;
    const GridFunction u_old = s.u;
    const GridFunction v_old = s.v;

    auto stage = [&](const GridFunction& phi_in, const GridFunction& u_in, const GridFunction& v_in,
                     double c_old, double c_in, double c_dt, GridFunction& phi_out) {
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                if (!dp.updatable(i, j)) continue;
                const Gradient4 grad =
                    reconstruct_point(phi_in, u_in, v_in, g, i, j, rc, dp.category(i, j), counters);
                phi_out(i, j) = c_old * phi_old(i, j) + c_in * phi_in(i, j) +
                                c_dt * dt * dp.residual(i, j, grad);
            }
        extrapolate_ghosts(phi_out, g);
    };

    GridFunction phi1 = phi_old, u1 = u_old, v1 = v_old;
    stage(phi_old, u_old, v_old, 0.0, 1.0, 1.0, phi1);
    detail::jacobi_derivative_pass(phi1, u_old, v_old, u1, v1, dp, cfg, counters);
    detail::derivative_ghosts(u1, v1, phi1, g);

    GridFunction phi2 = phi_old, u2 = u_old, v2 = v_old;
    stage(phi1, u1, v1, 0.75, 0.25, 0.25, phi2);
    detail::jacobi_derivative_pass(phi2, u1, v1, u2, v2, dp, cfg, counters);
    detail::derivative_ghosts(u2, v2, phi2, g);

    stage(phi2, u2, v2, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, s.phi);
    detail::jacobi_derivative_pass(s.phi, u2, v2, s.u, s.v, dp, cfg, counters);
    detail::derivative_ghosts(s.u, s.v, s.phi, g);

    double acc = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (dp.updatable(i, j)) acc += std::fabs(s.phi(i, j) - phi_old(i, j));
    return acc / dp.n_update_points();
}

namespace detail {

// Shared body of the two Runge-Kutta sweeping variants: three Gauss-Seidel
// sub-passes over one direction, each combining the direction-start value,
// the in-place current value, and an increment. Counts as three iterations.
inline double rk_sweep_direction(SolutionState& s, const DiscreteProblem& dp,
                                 const SchemeConfig& cfg, int direction,
                                 const std::array<std::array<double, 3>, 3>& coeff,
                                 ReconCounters* counters) {
    const Grid2D& g = dp.grid();
    const double dt = scheme_dt(dp, cfg);
    const ReconConfig rc = recon_config(cfg);
    const GridFunction phi_start = s.phi;

    for (const auto& [c_start, c_cur, c_dt] : coeff) {
        refresh_ghosts(s, g);
        const auto r = sweep_range(g, direction);
        for (int i = r.i0; i != r.i1; i += r.istep)
            for (int j = r.j0; j != r.j1; j += r.jstep) {
                if (!dp.updatable(i, j)) continue;
                const PointCategory cat = dp.category(i, j);
                const Gradient4 grad = reconstruct_point(s.phi, s.u, s.v, g, i, j, rc, cat, counters);
                s.phi(i, j) = c_start * phi_start(i, j) + c_cur * s.phi(i, j) +
                              c_dt * dt * dp.residual(i, j, grad);
                refresh_point_ghosts(s.phi, s.u, s.v, g, i, j);
                const Gradient4 grad2 = reconstruct_point(s.phi, s.u, s.v, g, i, j, rc, cat, counters);
                const auto uv = update_derivatives(grad2, s.u(i, j), s.v(i, j));
                s.u(i, j) = uv[0];
                s.v(i, j) = uv[1];
            }
    }

    double acc = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (dp.updatable(i, j)) acc += std::fabs(s.phi(i, j) - phi_start(i, j));
    return acc / dp.n_update_points();
}

} // namespace detail

/// Runge-Kutta sweeping with successive increments dt, dt/4, 2dt/3.
inline double rk_fsm_pass(SolutionState& s, const DiscreteProblem& dp, const SchemeConfig& cfg,
                          int direction, ReconCounters* counters = nullptr) {
    static constexpr std::array<std::array<double, 3>, 3> coeff = {{
        {0.0, 1.0, 1.0},
        {0.0, 1.0, 0.25},
        {0.0, 1.0, 2.0 / 3.0},
    }};
    return detail::rk_sweep_direction(s, dp, cfg, direction, coeff, counters);
}

/// Runge-Kutta sweeping with the convex-combination stages.
inline double rk_fsm_t_pass(SolutionState& s, const DiscreteProblem& dp, const SchemeConfig& cfg,
                            int direction, ReconCounters* counters = nullptr) {
    static constexpr std::array<std::array<double, 3>, 3> coeff = {{
        {0.0, 1.0, 1.0},
        {0.75, 0.25, 0.25},
        {1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0},
    }};
    return detail::rk_sweep_direction(s, dp, cfg, direction, coeff, counters);
}

namespace detail {

inline bool find_nonfinite(const SolutionState& s, const Grid2D& g, int& bi, int& bj) {
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (!std::isfinite(s.phi(i, j)) || !std::isfinite(s.u(i, j)) || !std::isfinite(s.v(i, j))) {
                bi = i;
                bj = j;
                return true;
            }
    return false;
}

inline double mean_residual(SolutionState& s, const DiscreteProblem& dp, const SchemeConfig& cfg) {
    const Grid2D& g = dp.grid();
    refresh_ghosts(s, g);
    const ReconConfig rc = recon_config(cfg);
    double acc = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            if (!dp.updatable(i, j)) continue;
            const Gradient4 grad =
                reconstruct_point(s.phi, s.u, s.v, g, i, j, rc, dp.category(i, j), nullptr);
            acc += std::fabs(dp.residual(i, j, grad));
        }
    return acc / dp.n_update_points();
}

} // namespace detail

/// Runs the configured scheme on an instantiated problem until the mean
/// |phi change| over updated nodes drops below cfg.tol. Iteration counting:
/// every full pass over the updated nodes is one iteration, so a four
/// direction sweep cycle counts 4 (12 for the Runge-Kutta sweeps) and one
/// Runge-Kutta Jacobi step counts 3. Convergence is tested per step for the
/// Jacobi schemes and per sweep cycle for the sweeping schemes.
inline SolveResult solve_on_grid(DiscreteProblem& dp, const SchemeConfig& cfg) {
    if (!(cfg.cfl > 0.0)) throw std::invalid_argument("solve: cfl must be positive");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");

    SolveResult res{SolutionState(dp.grid()), {}, SolveStatus::NotConverged, -1, -1};
    res.state = initialize(dp);
    res.stats.alpha = dp.ham().alpha;
    res.stats.beta = dp.ham().beta;

    if (dp.n_update_points() == 0) {
        res.status = SolveStatus::Converged;
        res.stats.converged = true;
        res.stats.final_delta = 0.0;
        return res;
    }

    const bool is_sweeping = cfg.scheme == SchemeKind::FEFSM || cfg.scheme == SchemeKind::RKFSM ||
                             cfg.scheme == SchemeKind::RKFSM_T;
    int direction = 0;
    long last_checkpoint = 0;
    double window_acc = 0.0;
    long window_n = 0;

    auto flush_checkpoint = [&]() {
        if (window_n == 0) return;
        Checkpoint cp;
        cp.iter = res.stats.iterations;
        cp.delta = window_acc / window_n;
        cp.residual = detail::mean_residual(res.state, dp, cfg);
        if (dp.has_exact()) cp.l1_error = masked_error(res.state.phi, dp).l1;
        res.stats.history.push_back(cp);
        last_checkpoint = res.stats.iterations;
        window_acc = 0.0;
        window_n = 0;
    };
    auto record = [&](double delta) {
        window_acc += delta;
        ++window_n;
        if (res.stats.iterations - last_checkpoint >= cfg.checkpoint_stride) flush_checkpoint();
    };

    while (res.stats.iterations < cfg.max_iter) {
        double unit_delta = 0.0;
        switch (cfg.scheme) {
            case SchemeKind::FEJacobi:
                unit_delta = fe_jacobi_step(res.state, dp, cfg, &res.stats.recon);
                res.stats.iterations += 1;
                record(unit_delta);
                break;
            case SchemeKind::RKJacobi:
                unit_delta = rk_jacobi_step(res.state, dp, cfg, &res.stats.recon);
                res.stats.iterations += 3;
                record(unit_delta);
                break;
            default: {
                for (int d = 0; d < 4; ++d) {
                    double pass_delta = 0.0;
                    if (cfg.scheme == SchemeKind::FEFSM) {
                        pass_delta = fe_fsm_pass(res.state, dp, cfg, direction, &res.stats.recon);
                        res.stats.iterations += 1;
                    } else if (cfg.scheme == SchemeKind::RKFSM) {
                        pass_delta = rk_fsm_pass(res.state, dp, cfg, direction, &res.stats.recon);
                        res.stats.iterations += 3;
                    } else {
                        pass_delta = rk_fsm_t_pass(res.state, dp, cfg, direction, &res.stats.recon);
                        res.stats.iterations += 3;
                    }
                    direction = (direction + 1) & 3;
                    unit_delta = std::max(unit_delta, pass_delta);
                    record(pass_delta);
                }
                break;
            }
        }
        res.stats.final_delta = unit_delta;
        if (!std::isfinite(unit_delta) || detail::find_nonfinite(res.state, dp.grid(), res.bad_i, res.bad_j)) {
            res.status = SolveStatus::Diverged;
            return res;
        }
        if (unit_delta < cfg.tol) {
            flush_checkpoint();
            res.status = SolveStatus::Converged;
            res.stats.converged = true;
            return res;
        }
    }
    flush_checkpoint();
    res.status = SolveStatus::NotConverged;
    return res;
}

/// Convenience entry point: instantiate the problem on an n x n mesh and run.
inline SolveResult solve(const ProblemSpec& spec, int n, const SchemeConfig& cfg) {
    DiscreteProblem dp(spec, n);
    return solve_on_grid(dp, cfg);
}

} // namespace hjsweep

#endif // HJSWEEP_SOLVER_HPP
