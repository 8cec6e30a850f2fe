#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hjsweep/reconstruct.hpp"
#include "oracles.hpp"

using namespace hjsweep;

namespace {

StencilSlice slice_from(const std::array<double, 4>& phi, double u_lo, double u_hi, double h) {
    StencilSlice s;
    s.phi = phi;
    s.u_lo = u_lo;
    s.u_hi = u_hi;
    s.h = h;
    return s;
}

// Sample phi(x) on the minus-side stencil around x0.
template <typename F, typename G>
StencilSlice sample_minus(F&& phi, G&& dphi, double x0, double h) {
    return slice_from({phi(x0 - 2 * h), phi(x0 - h), phi(x0), phi(x0 + h)}, dphi(x0 - h),
                      dphi(x0 + h), h);
}

template <typename F, typename G>
StencilSlice sample_plus(F&& phi, G&& dphi, double x0, double h) {
    return slice_from({phi(x0 - h), phi(x0), phi(x0 + h), phi(x0 + 2 * h)}, dphi(x0 - h),
                      dphi(x0 + h), h);
}

} // namespace

TEST_CASE("candidates reproduce linear and even data") {
    const double h = 0.1;
    auto lin = sample_minus([](double x) { return x; }, [](double) { return 1.0; }, 0.0, h);
    auto cm = candidates_minus(lin);
    CHECK(cm.d1 == Catch::Approx(1.0).margin(1e-14));
    CHECK(cm.d2 == Catch::Approx(1.0).margin(1e-14));
    CHECK(cm.d3 == Catch::Approx(1.0).margin(1e-14));

    auto quad = sample_minus([](double x) { return x * x; }, [](double x) { return 2.0 * x; }, 0.0, h);
    auto cq = candidates_minus(quad);
    CHECK(cq.d1 == Catch::Approx(0.0).margin(1e-14));
    CHECK(cq.d2 == Catch::Approx(0.0).margin(1e-14));
    CHECK(cq.d3 == Catch::Approx(0.0).margin(1e-14));

    auto lp = candidates_plus(sample_plus([](double x) { return x; }, [](double) { return 1.0; }, 0.0, h));
    CHECK(lp.d1 == Catch::Approx(1.0).margin(1e-14));
    CHECK(lp.d2 == Catch::Approx(1.0).margin(1e-14));
    CHECK(lp.d3 == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("quintic candidate values on x^5 match the Hermite interpolation oracle") {
    const double h = 0.1;
    auto phi = [](double x) { return std::pow(x, 5); };
    auto dphi = [](double x) { return 5.0 * std::pow(x, 4); };

    auto sm = sample_minus(phi, dphi, 0.0, h);
    auto cm = candidates_minus(sm);
    // Hermite interpolation is exact on quintics, so d1 equals phi'(0) = 0.
    CHECK(cm.d1 == Catch::Approx(0.0).margin(1e-12));
    CHECK(cm.d2 == Catch::Approx(-14.0 * std::pow(h, 4)).epsilon(1e-12));
    CHECK(cm.d3 == Catch::Approx(std::pow(h, 4)).epsilon(1e-12));

    auto sp = sample_plus(phi, dphi, 0.0, h);
    auto cp = candidates_plus(sp);
    CHECK(cp.d1 == Catch::Approx(0.0).margin(1e-12));
    CHECK(cp.d2 == Catch::Approx(std::pow(h, 4)).epsilon(1e-12));
    CHECK(cp.d3 == Catch::Approx(-14.0 * std::pow(h, 4)).epsilon(1e-12));
}

TEST_CASE("quintic candidate matches the 6x6 oracle on random data") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const double h = 0.07;
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 4> phi = {dist(rng), dist(rng), dist(rng), dist(rng)};
        const double u_lo = dist(rng), u_hi = dist(rng);

        auto cm = candidates_minus(slice_from(phi, u_lo, u_hi, h));
        auto coeff = oracle::hermite_coeffs({-2.0, -1.0, 0.0, 1.0}, phi, {-1.0, 1.0},
                                            {h * u_lo, h * u_hi});
        CHECK(cm.d1 == Catch::Approx(coeff[1] / h).margin(1e-10));

        auto cp = candidates_plus(slice_from(phi, u_lo, u_hi, h));
        auto coeffp = oracle::hermite_coeffs({-1.0, 0.0, 1.0, 2.0}, phi, {-1.0, 1.0},
                                             {h * u_lo, h * u_hi});
        CHECK(cp.d1 == Catch::Approx(coeffp[1] / h).margin(1e-10));
    }
}

TEST_CASE("smoothness indicators vanish on affine data") {
    // degenerate data (flat phi, zero derivative) gives exact zeros
    auto flat = slice_from({0.0, 0.0, 0.0, 0.0}, 0.0, 0.0, 0.25);
    for (double b : smoothness_indicators(flat, Side::Minus)) CHECK(b == 0.0);
    for (double b : smoothness_indicators(flat, Side::Plus)) CHECK(b == 0.0);

    // general affine data: zero up to rounding of the stencil differences
    const double h = 0.05;
    auto s = sample_minus([](double x) { return 3.0 - 2.0 * x; }, [](double) { return -2.0; }, 0.4, h);
    for (double b : smoothness_indicators(s, Side::Minus)) {
        CHECK(b >= 0.0);
        CHECK(b < 1e-24);
    }
    auto sp = sample_plus([](double x) { return 3.0 - 2.0 * x; }, [](double) { return -2.0; }, 0.4, h);
    for (double b : smoothness_indicators(sp, Side::Plus)) {
        CHECK(b >= 0.0);
        CHECK(b < 1e-24);
    }
}

TEST_CASE("quadratic indicator equals 4 c2^2 h^2 for a pure parabola") {
    const double h = 0.13;
    const double c2 = 0.77;
    // p(x) = c2 (x - x_i)^2 sampled on the small stencils
    auto s = sample_minus([&](double x) { return c2 * x * x; }, [&](double x) { return 2.0 * c2 * x; },
                          0.0, h);
    auto beta = smoothness_indicators(s, Side::Minus);
    CHECK(beta[1] == Catch::Approx(4.0 * c2 * c2 * h * h).epsilon(1e-12));
    CHECK(beta[2] == Catch::Approx(4.0 * c2 * c2 * h * h).epsilon(1e-12));
}

TEST_CASE("indicators match the Gauss quadrature oracle on random stencils") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    const double h = 0.11;
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 4> phi = {dist(rng), dist(rng), dist(rng), dist(rng)};
        const double u_lo = dist(rng), u_hi = dist(rng);

        {
            auto beta = smoothness_indicators(slice_from(phi, u_lo, u_hi, h), Side::Minus);
            auto c1 = oracle::hermite_coeffs({-2.0, -1.0, 0.0, 1.0}, phi, {-1.0, 1.0},
                                             {h * u_lo, h * u_hi});
            const double ref1 = oracle::indicator_by_quadrature(c1, 5, h);
            CHECK(beta[0] == Catch::Approx(ref1).epsilon(1e-12).margin(1e-12));

            // quadratic through the first / last three nodes
            auto q2 = oracle::solve_dense({{1.0, -2.0, 4.0}, {1.0, -1.0, 1.0}, {1.0, 0.0, 0.0}},
                                          {phi[0], phi[1], phi[2]});
            const double ref2 =
                oracle::indicator_by_quadrature({q2[0], q2[1], q2[2]}, 2, h);
            CHECK(beta[1] == Catch::Approx(ref2).epsilon(1e-12).margin(1e-12));

            auto q3 = oracle::solve_dense({{1.0, -1.0, 1.0}, {1.0, 0.0, 0.0}, {1.0, 1.0, 1.0}},
                                          {phi[1], phi[2], phi[3]});
            const double ref3 =
                oracle::indicator_by_quadrature({q3[0], q3[1], q3[2]}, 2, h);
            CHECK(beta[2] == Catch::Approx(ref3).epsilon(1e-12).margin(1e-12));
        }

        auto betap = smoothness_indicators(slice_from(phi, u_lo, u_hi, h), Side::Plus);
        auto cp = oracle::hermite_coeffs({-1.0, 0.0, 1.0, 2.0}, phi, {-1.0, 1.0},
                                         {h * u_lo, h * u_hi});
        CHECK(betap[0] == Catch::Approx(oracle::indicator_by_quadrature(cp, 5, h))
                              .epsilon(1e-12)
                              .margin(1e-12));
    }
}

TEST_CASE("nonlinear weights: equal indicators give the linear weights") {
    WeightParams wp;
    for (double c : {0.0, 1.0, 42.0}) {
        auto w = nonlinear_weights({c, c, c}, wp);
        CHECK(w[0] == Catch::Approx(0.98).margin(1e-14));
        CHECK(w[1] == Catch::Approx(0.01).margin(1e-14));
        CHECK(w[2] == Catch::Approx(0.01).margin(1e-14));
    }
}

TEST_CASE("nonlinear weights: direct formula check and normalization") {
    WeightParams wp;
    const std::array<double, 3> beta = {1.0, 0.0, 0.0};
    const double tau = 1.0; // ((|1-0|+|1-0|)/2)^2
    const double w1 = 0.98 * (1.0 + tau / (wp.epsilon + 1.0));
    const double w2 = 0.01 * (1.0 + tau / wp.epsilon);
    const double w3 = w2;
    auto w = nonlinear_weights(beta, wp);
    const double sum = w1 + w2 + w3;
    CHECK(w[0] == Catch::Approx(w1 / sum).epsilon(1e-13));
    CHECK(w[1] == Catch::Approx(w2 / sum).epsilon(1e-13));
    CHECK(w[0] + w[1] + w[2] == Catch::Approx(1.0).margin(1e-14));

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (int t = 0; t < 500; ++t) {
        auto ww = nonlinear_weights({dist(rng), dist(rng), dist(rng)}, wp);
        CHECK(ww[0] + ww[1] + ww[2] == Catch::Approx(1.0).margin(1e-12));
        CHECK(ww[0] >= 0.0);
        CHECK(ww[1] >= 0.0);
        CHECK(ww[2] >= 0.0);
    }
}

TEST_CASE("weighted value reduces to the candidates at corner weights") {
    WeightParams wp;
    CandidateTriple c{1.3, -0.4, 2.2};
    CHECK(hweno_value(c, {wp.gamma1, wp.gamma2, wp.gamma3}, wp) == Catch::Approx(c.d1).epsilon(1e-14));
    CHECK(hweno_value(c, {0.0, 1.0, 0.0}, wp) == Catch::Approx(c.d2).epsilon(1e-14));
    CHECK(hweno_value(c, {0.0, 0.0, 1.0}, wp) == Catch::Approx(c.d3).epsilon(1e-14));
    CHECK(linear_value(c) == c.d1);
}

TEST_CASE("fifth order accuracy on smooth data") {
    WeightParams wp;
    auto phi = [](double x) { return std::sin(x); };
    auto dphi = [](double x) { return std::cos(x); };
    const double x0 = 0.3;

    const double h = 0.02;
    auto sm = sample_minus(phi, dphi, x0, h);
    auto val = hweno_value(candidates_minus(sm), nonlinear_weights(smoothness_indicators(sm, Side::Minus), wp), wp);
    CHECK(std::fabs(val - dphi(x0)) < 1e-8);

    // measured order on a mesh ladder
    double prev = 0.0;
    std::array<double, 3> errs{};
    int k = 0;
    for (double hh : {0.04, 0.02, 0.01}) {
        auto s = sample_minus(phi, dphi, x0, hh);
        auto v = hweno_value(candidates_minus(s), nonlinear_weights(smoothness_indicators(s, Side::Minus), wp), wp);
        errs[k++] = std::fabs(v - dphi(x0));
        (void)prev;
    }
    const double slope1 = std::log2(errs[0] / errs[1]);
    const double slope2 = std::log2(errs[1] / errs[2]);
    CHECK(slope1 >= 4.5);
    CHECK(slope2 >= 4.5);
}

TEST_CASE("mirror symmetry between the two sides") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double h = 0.09;
    WeightParams wp;
    for (int t = 0; t < 100; ++t) {
        std::array<double, 4> phi = {dist(rng), dist(rng), dist(rng), dist(rng)};
        const double u_lo = dist(rng), u_hi = dist(rng);
        // reflect x -> -x: phi reversed, derivative samples swap and negate
        std::array<double, 4> phir = {phi[3], phi[2], phi[1], phi[0]};
        auto cm = candidates_minus(slice_from(phi, u_lo, u_hi, h));
        auto cp = candidates_plus(slice_from(phir, -u_hi, -u_lo, h));
        CHECK(cp.d1 == Catch::Approx(-cm.d1).margin(1e-12));
        CHECK(cp.d2 == Catch::Approx(-cm.d3).margin(1e-12));
        CHECK(cp.d3 == Catch::Approx(-cm.d2).margin(1e-12));

        auto bm = smoothness_indicators(slice_from(phi, u_lo, u_hi, h), Side::Minus);
        auto bp = smoothness_indicators(slice_from(phir, -u_hi, -u_lo, h), Side::Plus);
        CHECK(bp[0] == Catch::Approx(bm[0]).epsilon(1e-12).margin(1e-13));
        CHECK(bp[1] == Catch::Approx(bm[2]).epsilon(1e-12).margin(1e-13));
        CHECK(bp[2] == Catch::Approx(bm[1]).epsilon(1e-12).margin(1e-13));
    }
}

TEST_CASE("hybrid switch wants one strict sign on far-field nodes only") {
    CHECK(hybrid_select({0.2, 0.5, 0.1, 0.9}, PointCategory::InteriorFar) == ReconChoice::Linear);
    CHECK(hybrid_select({-0.2, -0.5, -0.1, -0.9}, PointCategory::InteriorFar) == ReconChoice::Linear);
    CHECK(hybrid_select({0.2, -0.5, 0.1, 0.9}, PointCategory::InteriorFar) == ReconChoice::Hweno);
    CHECK(hybrid_select({0.2, 0.0, 0.1, 0.9}, PointCategory::InteriorFar) == ReconChoice::Hweno);
    CHECK(hybrid_select({0.2, 0.5, 0.1, 0.9}, PointCategory::InteriorNearBand) == ReconChoice::Hweno);
}

TEST_CASE("reconstruct_point: plane and transposition symmetry") {
    Grid2D g(12, 12, {0.0, 1.1, 0.0, 1.1});
    GridFunction phi(g), u(g), v(g);
    for (int j = -2; j < 14; ++j)
        for (int i = -2; i < 14; ++i) {
            phi(i, j) = g.x(i) + 2.0 * g.y(j);
            u(i, j) = 1.0;
            v(i, j) = 2.0;
        }
    ReconConfig rc;
    auto grad = reconstruct_point(phi, u, v, g, 6, 6, rc, PointCategory::InteriorFar);
    CHECK(grad.xm == Catch::Approx(1.0).margin(1e-13));
    CHECK(grad.xp == Catch::Approx(1.0).margin(1e-13));
    CHECK(grad.ym == Catch::Approx(2.0).margin(1e-13));
    CHECK(grad.yp == Catch::Approx(2.0).margin(1e-13));

    // transposed data swaps the roles of x and y
    GridFunction phit(g), ut(g), vt(g);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int j = -2; j < 14; ++j)
        for (int i = -2; i < 14; ++i) {
            phi(i, j) = std::sin(1.7 * g.x(i)) * std::cos(0.9 * g.y(j)) + 0.01 * dist(rng);
            u(i, j) = dist(rng);
            v(i, j) = dist(rng);
        }
    for (int j = -2; j < 14; ++j)
        for (int i = -2; i < 14; ++i) {
            phit(i, j) = phi(j, i);
            ut(i, j) = v(j, i);
            vt(i, j) = u(j, i);
        }
    auto a = reconstruct_point(phi, u, v, g, 5, 7, rc, PointCategory::InteriorFar);
    auto b = reconstruct_point(phit, ut, vt, g, 7, 5, rc, PointCategory::InteriorFar);
    CHECK(a.xm == Catch::Approx(b.ym).margin(1e-13));
    CHECK(a.xp == Catch::Approx(b.yp).margin(1e-13));
    CHECK(a.ym == Catch::Approx(b.xm).margin(1e-13));
    CHECK(a.yp == Catch::Approx(b.xp).margin(1e-13));
}

TEST_CASE("exactness through degree five with exact derivative samples") {
    WeightParams wp;
    auto poly = [](double x) {
        return 0.3 - 1.2 * x + 0.7 * x * x - 0.25 * x * x * x + 0.11 * std::pow(x, 4) -
               0.043 * std::pow(x, 5);
    };
    auto dpoly = [](double x) {
        return -1.2 + 1.4 * x - 0.75 * x * x + 0.44 * x * x * x - 0.215 * std::pow(x, 4);
    };
    for (double h : {0.1, 0.05}) {
        for (double x0 : {-0.4, 0.0, 0.8}) {
            auto sm = sample_minus(poly, dpoly, x0, h);
            auto cm = candidates_minus(sm);
            CHECK(linear_value(cm) == Catch::Approx(dpoly(x0)).margin(2e-12));
            auto sp = sample_plus(poly, dpoly, x0, h);
            auto cp = candidates_plus(sp);
            CHECK(linear_value(cp) == Catch::Approx(dpoly(x0)).margin(2e-12));
        }
    }
}
