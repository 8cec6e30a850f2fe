#ifndef HJSWEEP_HAMILTONIAN_HPP
#define HJSWEEP_HAMILTONIAN_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hjsweep/reconstruct.hpp"

namespace hjsweep {

/// Godunov flux specialized to |grad phi| = f.
inline double godunov_eikonal(double xm, double xp, double ym, double yp) {
    const double ax = std::max(std::max(xm, 0.0), std::max(-xp, 0.0));
    const double ay = std::max(std::max(ym, 0.0), std::max(-yp, 0.0));
    return std::sqrt(ax * ax + ay * ay);
}

/// Lax-Friedrichs flux with dissipation bounds alpha, beta.
template <typename H>
inline double lax_friedrichs(H&& ham, double xm, double xp, double ym, double yp,
                             double alpha, double beta) {
    return ham(0.5 * (xm + xp), 0.5 * (ym + yp)) - 0.5 * alpha * (xp - xm) - 0.5 * beta * (yp - ym);
}

enum class HamiltonianForm : std::uint8_t { GodunovEikonal, LaxFriedrichs };

/// Monotone numerical Hamiltonian used by the residual operator. For the
/// Lax-Friedrichs form, alpha/beta must dominate |dH/du|, |dH/dv| over the
/// derivative range visited by the iteration.
struct NumericalHamiltonian {
    HamiltonianForm form = HamiltonianForm::GodunovEikonal;
    std::function<double(double, double)> H;   // Lax-Friedrichs only
    double alpha = 1.0;
    double beta = 1.0;

    double operator()(const Gradient4& g) const {
        if (form == HamiltonianForm::GodunovEikonal)
            return godunov_eikonal(g.xm, g.xp, g.ym, g.yp);
        return lax_friedrichs(H, g.xm, g.xp, g.ym, g.yp, alpha, beta);
    }
};

/// Largest |dH/du|, |dH/dv| over [-u_max,u_max] x [-v_max,v_max], estimated
/// by central differences on a sampling lattice.
inline std::pair<double, double> estimate_lf_bounds(const std::function<double(double, double)>& H,
                                                    double u_max, double v_max, int samples = 129) {
    if (!(u_max > 0.0) || !(v_max > 0.0))
        throw std::invalid_argument("estimate_lf_bounds: empty derivative range");
    const double du = 1e-5 * u_max, dv = 1e-5 * v_max;
    double a = 0.0, b = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double v = -v_max + 2.0 * v_max * j / (samples - 1);
        for (int i = 0; i < samples; ++i) {
            const double u = -u_max + 2.0 * u_max * i / (samples - 1);
            a = std::max(a, std::fabs(H(u + du, v) - H(u - du, v)) / (2.0 * du));
            b = std::max(b, std::fabs(H(u, v + dv) - H(u, v - dv)) / (2.0 * dv));
        }
    }
    return {a, b};
}

} // namespace hjsweep

#endif // HJSWEEP_HAMILTONIAN_HPP
