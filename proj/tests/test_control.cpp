#include "dqd/config.hpp"
#include "dqd/control.hpp"
#include "dqd/runner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace dqd;

TEST(Sgn, ThreeValuedTable) {
    EXPECT_EQ(sgn(0.0), 0);
    EXPECT_EQ(sgn(-0.0), 0);
    EXPECT_EQ(sgn(3.2), 1);
    EXPECT_EQ(sgn(-1e-300), -1);
    EXPECT_EQ(sgn(std::numeric_limits<double>::denorm_min()), 1);
    EXPECT_EQ(sgn(-std::numeric_limits<double>::infinity()), -1);
}

TEST(ControlSignal, ZeroAtTarget) {
    const ControlLaw law;
    const ControlSignal u = control_signal(law, law.i_target);
    EXPECT_EQ(u.u1, 0.0);
    EXPECT_EQ(u.u2, 0.0);
}

TEST(ControlSignal, Fig4Example) {
    ControlLaw law; // I0 = 0.1, k = 5e4, eta = 1
    const ControlSignal u = control_signal(law, 0.09);
    EXPECT_NEAR(u.u1, std::exp(-1.0 / (5e4 * 0.01)), 1e-15);
    EXPECT_NEAR(u.u1, 0.998, 1e-3);
    EXPECT_EQ(u.u1, u.u2);
    EXPECT_NEAR(control_signal(law, 0.11).u1, -u.u1, 1e-15);
}

TEST(ControlSignal, SaturatesForLargeError) {
    ControlLaw law;
    law.eta1 = 2.0;
    law.eta2 = 0.5;
    law.i_target = 1e6;
    const ControlSignal u = control_signal(law, 0.0);
    EXPECT_NEAR(u.u1, 2.0, 1e-9);
    EXPECT_NEAR(u.u2, 0.5, 1e-9);
}

TEST(ControlSignal, BoundedAndSignCorrectOnRandomErrors) {
    ControlLaw law;
    law.eta1 = 1.5;
    law.eta2 = 0.25;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mag(-12.0, 3.0);
    std::bernoulli_distribution neg(0.5);
    for (int i = 0; i < 1000000; ++i) {
        const double e = (neg(rng) ? -1.0 : 1.0) * std::pow(10.0, mag(rng));
        const ControlSignal u = control_signal(law, law.i_target - e);
        ASSERT_LT(std::abs(u.u1), law.eta1);
        ASSERT_LT(std::abs(u.u2), law.eta2);
        ASSERT_GE(u.u1 * sgn(e), 0.0);
        ASSERT_GE(u.u2 * sgn(e), 0.0);
    }
}

TEST(ControlSignal, MonotoneInErrorMagnitude) {
    const ControlLaw law;
    for (double sign : {1.0, -1.0}) {
        double prev = 0.0;
        for (int i = 0; i <= 100000; ++i) {
            const double e = sign * 1e-7 * std::pow(1.0002, i);
            const double u = std::abs(control_signal(law, law.i_target - e).u1);
            ASSERT_GE(u, prev) << e;
            prev = u;
        }
    }
}

TEST(ControlSignal, NoOvershootOnLinearizedPlant) {
    // I_{k+1} = I_k + dt * s * u_k: the error keeps its sign whenever dt s eta < |e|
    ControlLaw law;
    const double dt = 0.1, s = 0.02;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u0(0.0, 0.2);
    for (int trial = 0; trial < 1000; ++trial) {
        double i = u0(rng);
        for (int k = 0; k < 200; ++k) {
            const double e = law.i_target - i;
            const double next = i + dt * s * control_signal(law, i).u1;
            if (dt * s * law.eta1 < std::abs(e)) {
                ASSERT_GE(sgn(e) * sgn(law.i_target - next), 0);
            }
            i = next;
        }
    }
}

TEST(ControlLaw, Check) {
    EXPECT_TRUE(check(ControlLaw{}).empty());
    ControlLaw bad;
    bad.k = 0.0;
    bad.eta1 = -1.0;
    const auto d = check(bad);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NE(d[1].find("k must be > 0"), std::string::npos);
}

TEST(ClosedLoop, ZeroAmplitudeIsOpenLoop) {
    const ExperimentConfig cfg = preset_config(Preset::Fig4Feedback);
    ControlLaw law = cfg.control;
    law.eta1 = law.eta2 = 0.0;
    ClosedLoopConfig cl = closed_loop_config(cfg);
    cl.horizon = 5.0;
    cl.record_every = 1;
    const auto loop = closed_loop(cfg.model, cfg.env, law, cl);

    const EigenBasis b = diagonalize(cfg.model);
    RateSet r = markovian_rates(b, cfg.env);
    cl.gammas.apply(r);
    std::vector<double> times;
    for (const auto& s : loop) times.push_back(s.t);
    const auto open = propagate_populations(cl.initial, times, cl.integrator, RateSource::constant(r), b, cfg.env,
                                            cl.variant);
    ASSERT_EQ(open.size(), loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
        EXPECT_NEAR(loop[i].current, current(open[i].pops, b, r), 1e-10);
        EXPECT_EQ(loop[i].u1, 0.0);
        EXPECT_EQ(loop[i].eps_eff, cfg.model.epsilon);
    }
}

TEST(ClosedLoop, ConvergesAndSettingsDiffer) {
    const ExperimentConfig cfg = preset_config(Preset::Fig4Feedback);
    std::vector<std::vector<ClosedLoopSample>> runs;
    for (const auto& c : fig4_cases()) {
        ControlLaw law = cfg.control;
        law.eta1 = c.eta1;
        law.eta2 = c.eta2;
        runs.push_back(closed_loop(cfg.model, cfg.env, law, closed_loop_config(cfg)));
        const auto& run = runs.back();
        EXPECT_LT(std::abs(run.back().error), 1e-3) << c.label;
        for (const auto& s : run) {
            EXPECT_LE(std::abs(s.u1), c.eta1);
            EXPECT_LE(std::abs(s.u2), c.eta2);
        }
    }
    for (std::size_t a = 0; a < runs.size(); ++a) {
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
            double linf = 0.0;
            for (std::size_t i = 0; i < runs[a].size(); ++i) {
                linf = std::max(linf, std::abs(runs[a][i].error - runs[b][i].error));
            }
            EXPECT_GT(linf, 0.0);
        }
    }
}

TEST(ClosedLoop, ShortHorizonRejected) {
    const ExperimentConfig cfg = preset_config(Preset::Fig4Feedback);
    ClosedLoopConfig cl = closed_loop_config(cfg);
    cl.horizon = 1e-4;
    EXPECT_THROW(closed_loop(cfg.model, cfg.env, cfg.control, cl), std::invalid_argument);
}
