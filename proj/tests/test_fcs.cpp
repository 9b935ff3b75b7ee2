#include "dqd/fcs.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace dqd;

namespace {

CountingDistribution poisson(double lambda, int n_max) {
    CountingDistribution d;
    double p = std::exp(-lambda);
    for (int n = 0; n <= n_max; ++n) {
        d.probs.push_back(p);
        p *= lambda / (n + 1);
    }
    return d;
}

CountingDistribution point(int k, int n_max) {
    CountingDistribution d;
    d.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    d.probs[static_cast<std::size_t>(k)] = 1.0;
    return d;
}

} // namespace

TEST(Distribution, InitialStateIsPointMass) {
    const CountingDistribution d = distribution(NResolvedState::ground(5), 0.0);
    ASSERT_EQ(d.probs.size(), 6u);
    EXPECT_EQ(d.probs[0], 1.0);
    for (std::size_t n = 1; n < d.probs.size(); ++n) EXPECT_EQ(d.probs[n], 0.0);
}

TEST(Cumulants, PointMass) {
    const CumulantSet c = cumulants(point(5, 10));
    EXPECT_EQ(c.c1, 5.0);
    EXPECT_EQ(c.c2, 0.0);
    EXPECT_EQ(c.c3, 0.0);
    EXPECT_EQ(c.c4, 0.0);
    EXPECT_EQ(*c.fano, 0.0);
}

TEST(Cumulants, Poisson) {
    const CumulantSet c = cumulants(poisson(3.0, 60));
    for (double v : {c.c1, c.c2, c.c3, c.c4}) EXPECT_NEAR(v, 3.0, 1e-6);
    EXPECT_NEAR(*c.fano, 1.0, 1e-6);
}

TEST(Cumulants, Bernoulli) {
    CountingDistribution d;
    d.probs = {0.5, 0.5};
    const CumulantSet c = cumulants(d);
    EXPECT_DOUBLE_EQ(c.c1, 0.5);
    EXPECT_DOUBLE_EQ(c.c2, 0.25);
    EXPECT_DOUBLE_EQ(c.c3, 0.0);
    EXPECT_DOUBLE_EQ(c.c4, -0.125);
}

TEST(Cumulants, RatiosUndefinedAtZeroMean) {
    const CumulantSet c = cumulants(point(0, 4));
    EXPECT_EQ(c.c1, 0.0);
    EXPECT_FALSE(c.fano.has_value());
    EXPECT_FALSE(c.skewness.has_value());
    EXPECT_FALSE(c.sharpness.has_value());
    CountingDistribution empty;
    empty.probs = {0.0, 0.0};
    EXPECT_THROW(cumulants(empty), std::invalid_argument);
}

TEST(Cumulants, ShiftAddsOneToMeanOnly) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        CountingDistribution d;
        double s = 0.0;
        for (int n = 0; n < 30; ++n) {
            d.probs.push_back(u(rng));
            s += d.probs.back();
        }
        for (double& p : d.probs) p /= s;
        CountingDistribution shifted = d;
        shifted.probs.insert(shifted.probs.begin(), 0.0);
        const CumulantSet a = cumulants(d), b = cumulants(shifted);
        EXPECT_NEAR(b.c1, a.c1 + 1.0, 1e-13);
        EXPECT_NEAR(b.c2, a.c2, 1e-12);
        EXPECT_NEAR(b.c3, a.c3, 1e-11);
        EXPECT_NEAR(b.c4, a.c4, 1e-10);
        EXPECT_GE(a.c2, 0.0);
    }
}

TEST(Cumulants, TwoPointVarianceBound) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int i = static_cast<int>(u(rng) * 10), j = i + 1 + static_cast<int>(u(rng) * 10);
        CountingDistribution d;
        d.probs.assign(static_cast<std::size_t>(j) + 1, 0.0);
        const double p = u(rng);
        d.probs[static_cast<std::size_t>(i)] = p;
        d.probs[static_cast<std::size_t>(j)] = 1.0 - p;
        const CumulantSet c = cumulants(d);
        EXPECT_GE(c.c2, 0.0);
        EXPECT_LE(c.c2, 0.25 * (j - i) * (j - i) * (1.0 + 1e-15));
    }
}

TEST(Cgf, Examples) {
    const CountingDistribution pois = poisson(3.0, 60);
    EXPECT_NEAR(std::abs(cgf(pois, 0.0)), 0.0, 1e-15);
    const std::complex<double> z = cgf(point(4, 10), 0.3);
    EXPECT_NEAR(z.real(), 0.0, 1e-15);
    EXPECT_NEAR(z.imag(), 1.2, 1e-15);
    // Poisson: lambda (e^{i zeta} - 1)
    const std::complex<double> p = cgf(pois, 0.2);
    const std::complex<double> exact = 3.0 * (std::exp(std::complex<double>{0.0, 0.2}) - 1.0);
    EXPECT_NEAR(p.real(), exact.real(), 1e-12);
    EXPECT_NEAR(p.imag(), exact.imag(), 1e-12);
    EXPECT_NEAR(static_cast<double>(cgf_real(pois, 0.1L)), 3.0 * std::expm1(0.1), 1e-12);
}

TEST(Cgf, FiniteDifferencesReproduceCumulants) {
    const CountingDistribution d = poisson(3.0, 60);
    const CumulantSet direct = cumulants(d);
    const CumulantSet fd = cumulants_by_differences(d, 1e-3);
    EXPECT_NEAR(fd.c1, direct.c1, 1e-5);
    EXPECT_NEAR(fd.c2, direct.c2, 1e-5);
    EXPECT_NEAR(fd.c3, direct.c3, 1e-5);
    EXPECT_NEAR(fd.c4, direct.c4, 1e-5);
}
