#include "dqd/dynamics.hpp"
#include "dqd/errors.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace dqd;

namespace {

using C = std::complex<double>;

RateSet fig2_rates(const EigenBasis& b, const EnvParams& env, double g1, double g4) {
    RateSet r = markovian_rates(b, env);
    r.gamma1 = g1;
    r.gamma2 = 0.0;
    r.gamma3 = 0.0;
    r.gamma4 = g4;
    return r;
}

DensityMatrix3 random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Eigen::Matrix3cd a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = C{n(rng), n(rng)};
    DensityMatrix3 rho = a * a.adjoint();
    return rho / rho.trace();
}

RateSet random_rates(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    RateSet r;
    r.gamma1 = u(rng);
    r.gamma2 = u(rng);
    r.gamma3 = u(rng);
    r.gamma4 = u(rng);
    r.delta1 = u(rng) + 1.0;
    r.delta2 = u(rng) - 1.0;
    r.delta3 = u(rng) - 1.0;
    r.delta4 = u(rng);
    r.delta5 = u(rng) - 1.0;
    return r;
}

} // namespace

TEST(LindbladRhs, FreeEvolutionOfEigenstatesIsStationary) {
    const EigenBasis b = diagonalize({108.0, 32.0});
    DensityMatrix3 rho = DensityMatrix3::Zero();
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.7;
    const DensityMatrix3 d = lindblad_rhs(rho, RateSet{}, b, EnvParams{});
    EXPECT_EQ(d.cwiseAbs().maxCoeff(), 0.0);
}

TEST(LindbladRhs, InjectionFromEmptyDot) {
    const EigenBasis b = diagonalize({108.0, 32.0});
    RateSet r;
    r.gamma1 = 0.8;
    const DensityMatrix3 d = lindblad_rhs(pure_state(0), r, b, EnvParams{});
    EXPECT_NEAR(d(0, 0).real(), -0.8, 1e-15);
    EXPECT_NEAR(d(1, 1).real(), 0.8 * b.alpha * b.alpha, 1e-15);
    EXPECT_NEAR(d(2, 2).real(), 0.8 * b.beta * b.beta, 1e-15);
    // the jump lands in the superposition alpha|g> + beta|e>
    EXPECT_NEAR(d(1, 2).real(), 0.8 * b.alpha * b.beta, 1e-15);
}

TEST(LindbladRhs, TracelessAndHermitianOnRandomStates) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-200.0, 200.0);
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix3 rho = random_density(rng);
        const RateSet r = random_rates(rng);
        const EigenBasis b = diagonalize({u(rng), u(rng)});
        const DensityMatrix3 d = lindblad_rhs(rho, r, b, EnvParams{}, {u(rng) / 100, u(rng) / 100});
        EXPECT_LT(std::abs(d.trace()), 1e-12);
        EXPECT_EQ((d - d.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(LindbladRhs, DiagonalMatchesPopulationEquations) {
    std::mt19937_64 rng(5);
    const EigenBasis b = diagonalize({108.0, 32.0});
    const EnvParams env;
    for (int i = 0; i < 20; ++i) {
        DensityMatrix3 rho = random_density(rng);
        RateSet r = random_rates(rng);
        r.gamma2 = r.gamma3 = 0.0;
        // coherences feed populations through the jump superpositions; remove them
        rho(1, 2) = rho(2, 1) = 0.0;
        rho(0, 1) = rho(1, 0) = rho(0, 2) = rho(2, 0) = 0.0;
        const DensityMatrix3 d = lindblad_rhs(rho, r, b, env);
        const Populations p{rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real()};
        const auto dp = population_rhs(p, r, b, env, Variant::LindbladConsistent);
        EXPECT_NEAR(d(0, 0).real(), dp[0], 1e-13);
        EXPECT_NEAR(d(1, 1).real(), dp[1], 1e-13);
        EXPECT_NEAR(d(2, 2).real(), dp[2], 1e-13);
    }
}

TEST(LindbladRhs, PackRoundTrip) {
    std::mt19937_64 rng(3);
    const DensityMatrix3 rho = random_density(rng);
    EXPECT_EQ((unpack(pack(rho)) - rho).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_THROW(pure_state(3), std::out_of_range);
}

TEST(Propagate, ExcitedStateFrozenWithoutRates) {
    const EigenBasis b = diagonalize({108.0, 32.0});
    const auto traj = propagate(pure_state(2), {0.5, 1.0, 5.0}, IntegratorConfig{},
                                RateSource::constant(RateSet{}), b, EnvParams{});
    for (const auto& s : traj.samples) EXPECT_NEAR((s.rho - pure_state(2)).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(Propagate, PureDephasingDecaysCoherenceExponentially) {
    const EigenBasis b = diagonalize({108.0, 32.0});
    EnvParams env;
    RateSet r;
    r.delta4 = 1.0;
    DensityMatrix3 rho = DensityMatrix3::Zero();
    rho(1, 1) = rho(2, 2) = 0.5;
    rho(1, 2) = rho(2, 1) = 0.5;
    // D[P3] damps rho_ge at (P3_gg - P3_ee)^2 / 2
    const double pg = env.d_amp - env.chi2 - b.alpha * b.alpha * env.chi_d();
    const double pe = env.d_amp - env.chi1 + b.alpha * b.alpha * env.chi_d();
    const double rate = 0.5 * (pg - pe) * (pg - pe);
    std::vector<double> times;
    for (int i = 1; i <= 40; ++i) times.push_back(0.25 * i);
    IntegratorConfig ic;
    ic.rel_tol = ic.abs_tol = 1e-12;
    const auto traj = propagate(rho, times, ic, RateSource::constant(r), b, env);
    double prev = 0.5;
    for (const auto& s : traj.samples) {
        const double mag = std::abs(s.rho(1, 2));
        EXPECT_NEAR(mag, 0.5 * std::exp(-rate * s.t), 1e-8);
        EXPECT_LT(mag, prev);
        prev = mag;
    }
}

TEST(Propagate, ConservesTraceAndHermiticity) {
    const EnvParams env;
    const EigenBasis b = diagonalize({108.0, 32.0});
    std::vector<double> times;
    for (int i = 1; i <= 100; ++i) times.push_back(0.5 * i);
    const auto traj = propagate(pure_state(1), times, IntegratorConfig{},
                                RateSource::constant(fig2_rates(b, env, 0.5, 0.1)), b, env, {0.3, -0.2});
    EXPECT_LT(traj.max_trace_error, 1e-8);
    EXPECT_LT(traj.max_hermiticity_error, 1e-12);
    EXPECT_EQ(traj.positivity_warnings, 0);
}

TEST(Propagate, RejectsDescendingTimes) {
    const EigenBasis b = diagonalize({1.0, 1.0});
    EXPECT_THROW(propagate(pure_state(1), {1.0, 0.5}, IntegratorConfig{}, RateSource::constant(RateSet{}), b,
                           EnvParams{}),
                 std::invalid_argument);
}

TEST(Current, Examples) {
    const EigenBasis b = diagonalize({1.0, 0.0});
    RateSet r;
    r.gamma4 = 0.7;
    EXPECT_EQ(current(Populations{0.0, 1.0, 0.0}, b, r), 0.0);
    EXPECT_DOUBLE_EQ(current(Populations{0.0, 0.0, 1.0}, b, r), 0.7);
    r.gamma4 = 0.0;
    EXPECT_EQ(current(Populations{0.0, 0.5, 0.5}, diagonalize({108.0, 32.0}), r), 0.0);
}

TEST(StationaryCurrent, ZeroRatesGiveZero) {
    const EnvParams env;
    const EigenBasis b = diagonalize({108.0, 32.0});
    EXPECT_EQ(stationary_current(b, env, fig2_rates(b, env, 0.1, 0.0)), 0.0);
    EXPECT_EQ(stationary_current(b, env, fig2_rates(b, env, 0.0, 0.1)), 0.0);
}

TEST(StationaryCurrent, VanishingDenominatorIsFlagged) {
    // alpha = beta: I1 = 2 + 1 + 0, I2 = chi^2 (-4 + 2 * -4) = -3 at chi^2 = 1/4
    const EnvParams env; // chi_d^2 = 1/4
    const EigenBasis b = diagonalize({0.0, 1.0});
    RateSet r;
    r.gamma1 = r.gamma4 = 1.0;
    r.delta1 = -4.0;
    r.delta2 = 0.0;
    EXPECT_THROW(stationary_current(b, env, r), DivisionByZeroError);
}

TEST(StationaryCurrent, ClosedFormByHand) {
    EnvParams env; // chi_d^2 = 1/4
    const EigenBasis b = diagonalize({0.0, 1.0});
    RateSet r;
    r.gamma1 = 0.2;
    r.gamma4 = 0.4;
    r.delta1 = 1.0;
    r.delta2 = 0.5;
    // alpha^2 = beta^2 = 1/2
    const double i1 = 0.2 * 0.4 * 2.0 + 0.16;
    const double i2 = 0.25 * (0.4 * 2.0 + 0.8);
    EXPECT_NEAR(stationary_current(b, env, r), 0.2 * 0.4 * (0.25 * 0.5 + 0.4) / (i1 + i2), 1e-15);
}

TEST(StationaryPopulations, MatchLongPropagation) {
    const EnvParams env;
    const EigenBasis b = diagonalize({108.0, 32.0});
    const RateSet r = fig2_rates(b, env, 0.3, 0.2);
    for (Variant v : {Variant::LindbladConsistent, Variant::AsWritten}) {
        const Populations ps = stationary_populations(b, env, r, v);
        EXPECT_NEAR(ps.total(), 1.0, 1e-14);
        const auto traj = propagate_populations({0.0, 1.0, 0.0}, {400.0}, IntegratorConfig{},
                                                RateSource::constant(r), b, env, v);
        const Populations pt = traj.back().pops;
        EXPECT_NEAR(pt.p00, ps.p00, 1e-7);
        EXPECT_NEAR(pt.pgg, ps.pgg, 1e-7);
        EXPECT_NEAR(pt.pee, ps.pee, 1e-7);
        EXPECT_NEAR(stationary_current_exact(b, env, r, v), current(pt, b, r), 1e-8);
    }
}

TEST(StationaryPopulations, DegenerateGeneratorIsFlagged) {
    const EigenBasis b = diagonalize({1.0, 0.0});
    EXPECT_THROW(stationary_populations(b, EnvParams{}, RateSet{}, Variant::LindbladConsistent),
                 DivisionByZeroError);
}

TEST(Populations, LindbladConsistentStayInUnitInterval) {
    const EnvParams env;
    const EigenBasis b = diagonalize({108.0, 32.0});
    std::vector<double> times;
    for (int i = 1; i <= 200; ++i) times.push_back(0.5 * i);
    const auto traj = propagate_populations({0.0, 1.0, 0.0}, times, IntegratorConfig{},
                                            RateSource::constant(fig2_rates(b, env, 0.5, 0.5)), b, env,
                                            Variant::LindbladConsistent);
    for (const auto& s : traj) {
        for (double p : {s.pops.p00, s.pops.pgg, s.pops.pee}) {
            EXPECT_GE(p, -1e-10);
            EXPECT_LE(p, 1.0 + 1e-10);
        }
        EXPECT_NEAR(s.pops.total(), 1.0, 1e-8);
        EXPECT_GE(current(s.pops, b, fig2_rates(b, env, 0.5, 0.5)), 0.0);
    }
}

TEST(Variant, ParseRoundTrip) {
    for (Variant v : {Variant::AsWritten, Variant::LindbladConsistent}) EXPECT_EQ(parse_variant(to_string(v)), v);
    EXPECT_THROW(parse_variant("paper"), ConfigError);
}
