#include "dqd/quadrature.hpp"

#include <gsl/gsl_sf_expint.h>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace dqd;

TEST(GaussLegendre, WeightsSumToTwoAndNodesSymmetric) {
    for (int order : {1, 2, 5, 16, 64}) {
        const auto& r = gauss_legendre(order);
        ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(order));
        double s = 0.0;
        for (double w : r.weights) s += w;
        EXPECT_NEAR(s, 2.0, 1e-14);
        for (int i = 0; i < order; ++i) EXPECT_NEAR(r.nodes[i], -r.nodes[order - 1 - i], 1e-15);
    }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    const auto& r = gauss_legendre(kNodesPerPanel);
    for (int deg = 0; deg < 2 * kNodesPerPanel; ++deg) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
        const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
        EXPECT_NEAR(s, exact, 1e-14) << "degree " << deg;
    }
}

TEST(Integrate, SineIntegralAgainstGsl) {
    QuadratureConfig cfg;
    for (double t : {0.5, 3.0, 40.0}) {
        // int_0^{x} sin(t e)/e de = Si(t x)
        const double x = 7.0;
        const std::array<Interval, 1> piece{Interval{0.0, x}};
        auto f = [t](double e) -> std::array<double, 1> { return {e == 0.0 ? t : std::sin(t * e) / e}; };
        const auto r = integrate<1>(f, piece, t, cfg);
        EXPECT_NEAR(r.value[0], gsl_sf_Si(t * x), 1e-12);
        EXPECT_TRUE(r.within(1e-9));
    }
}

TEST(Integrate, TrapezoidConvergesToSameValue) {
    QuadratureConfig cfg;
    cfg.scheme = QuadScheme::Trapezoid;
    cfg.n_nodes = 4096;
    const std::array<Interval, 1> piece{Interval{0.0, 1.0}};
    auto f = [](double e) -> std::array<double, 1> { return {std::exp(e)}; };
    const auto r = integrate<1>(f, piece, 1.0, cfg);
    EXPECT_NEAR(r.value[0], std::exp(1.0) - 1.0, 1e-7);
}

TEST(Integrate2d, SeparableProduct) {
    QuadratureConfig cfg;
    cfg.n_nodes = 32;
    const std::array<Interval, 1> px{Interval{0.0, 1.0}};
    const std::array<Interval, 1> py{Interval{-1.0, 2.0}};
    auto f = [](double x, double y) -> std::array<double, 1> { return {std::cos(x) * y * y}; };
    const auto r = integrate_2d<1>(f, px, py, 1.0, cfg);
    EXPECT_NEAR(r.value[0], std::sin(1.0) * 3.0, 1e-13);
}

TEST(Integrate, PanelsResolveOscillation) {
    QuadratureConfig cfg;
    cfg.n_nodes = 16;
    // half an oscillation per panel at most
    EXPECT_GE(panel_count(100.0, 10.0, cfg, 100.0), static_cast<int>(std::ceil(100.0 * 10.0 / std::numbers::pi)));
}

TEST(QuadratureConfig, Check) {
    EXPECT_TRUE(check(QuadratureConfig{}).empty());
    QuadratureConfig bad;
    bad.n_nodes = 8;
    bad.band_cutoff = -1.0;
    EXPECT_EQ(check(bad).size(), 2u);
}
