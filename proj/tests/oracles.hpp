#ifndef HJSWEEP_TESTS_ORACLES_HPP
#define HJSWEEP_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

// Independent reference computations for the reconstruction tests. These
// deliberately avoid the closed forms used by the library: interpolants are
// obtained by solving the defining linear systems and the indicator
// integrals by Gauss quadrature.
namespace oracle {

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        if (std::fabs(A[col][col]) < 1e-300) throw std::runtime_error("singular system");
        for (int r = col + 1; r < n; ++r) {
            const double m = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

// Coefficients (in the local coordinate xi = (x - x_i)/h) of the quintic
// matching 4 values and 2 first derivatives. Nodes and derivative nodes are
// given in xi units; derivative data g = h * u.
inline std::vector<double> hermite_coeffs(const std::array<double, 4>& nodes,
                                          const std::array<double, 4>& values,
                                          const std::array<double, 2>& dnodes,
                                          const std::array<double, 2>& dvalues) {
    std::vector<std::vector<double>> A(6, std::vector<double>(6));
    std::vector<double> b(6);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 6; ++c) A[r][c] = std::pow(nodes[r], c);
        b[r] = values[r];
    }
    for (int r = 0; r < 2; ++r) {
        A[4 + r][0] = 0.0;
        for (int c = 1; c < 6; ++c) A[4 + r][c] = c * std::pow(dnodes[r], c - 1);
        b[4 + r] = dvalues[r];
    }
    return solve_dense(A, b);
}

// Value of the k-th derivative (w.r.t. xi) of a polynomial given by
// coefficients at point xi.
inline double poly_derivative(const std::vector<double>& coeff, int k, double xi) {
    double s = 0.0;
    for (int c = k; c < static_cast<int>(coeff.size()); ++c) {
        double f = 1.0;
        for (int m = 0; m < k; ++m) f *= (c - m);
        s += coeff[c] * f * std::pow(xi, c - k);
    }
    return s;
}

// Smoothness indicator by 6-point Gauss-Legendre quadrature over
// xi in [-1/2, 1/2]: sum over derivative orders 2..r of the integral of the
// squared xi-derivative, with the scaling worked out so that the result is
// in the same units as the library's (divide by h^2).
inline double indicator_by_quadrature(const std::vector<double>& coeff, int r_degree, double h) {
    static const double xs[6] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                 0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
    static const double ws[6] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                 0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
    double total = 0.0;
    for (int alpha = 2; alpha <= r_degree; ++alpha) {
        double integral = 0.0;
        for (int q = 0; q < 6; ++q) {
            const double xi = 0.5 * xs[q]; // map [-1,1] -> [-1/2,1/2]
            const double d = poly_derivative(coeff, alpha, xi);
            integral += 0.5 * ws[q] * d * d;
        }
        total += integral; // h powers cancel except a global 1/h^2
    }
    return total / (h * h);
}

// Degree-4 Lagrange extrapolation from samples at xi = 0..4 to arbitrary xi.
inline double lagrange4(const std::array<double, 5>& f, double xi) {
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
        double basis = 1.0;
        for (int m = 0; m < 5; ++m)
            if (m != k) basis *= (xi - m) / (k - m);
        s += f[k] * basis;
    }
    return s;
}

} // namespace oracle

#endif
