// control.hpp — Sign-exponential current feedback and the sampled-data closed loop.

#pragma once

#include "dqd/dynamics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dqd {

struct ControlLaw {
    double i_target{0.1};
    double eta1{1.0}; // amplitude on epsilon
    double eta2{1.0}; // amplitude on omega
    double k{5e4};
    double sample_dt{0.0}; // 0 selects 0.1 / omega0 of the nominal point
    bool freeze_rates{false};
    // Solve measurement and actuation simultaneously at each sample instead of
    // acting on the current read before the gate change (one-sample delay).
    bool zero_delay{true};
    double noise_sigma{0.0}; // additive Gaussian noise on the measured current
    std::uint64_t noise_seed{1};
};

std::vector<std::string> check(const ControlLaw& law);

struct ControlSignal {
    double u1{0.0};
    double u2{0.0};
};

// -1, 0 or +1.
int sgn(double x) noexcept;

// u_i = sgn(I0 - I) eta_i exp(-1 / (k |I0 - I|)), and exactly 0 at I = I0.
ControlSignal control_signal(const ControlLaw& law, double i_measured) noexcept;

struct ClosedLoopSample {
    double t;
    double current;
    double error; // I0 - I
    double u1;
    double u2;
    double eps_eff;
    double omega_eff;
};

struct ClosedLoopConfig {
    double horizon{20.0};
    IntegratorConfig integrator{};
    Variant variant{Variant::LindbladConsistent};
    GammaOverrides gammas{};
    Populations initial{0.0, 1.0, 0.0};
    int record_every{1}; // keep every n-th controller sample
};

// Every sample_dt: measure I from the populations, apply (u1, u2), re-diagonalize
// at (eps + u1, omega + u2), refresh the long-time rates (unless frozen) and
// continue the population equations. Populations are carried over unchanged
// when the eigenbasis moves.
//
// The current reads alpha and beta of the actuated point, so it responds to a
// gate change at once. With zero_delay the recorded error e is the root of
// e = I0 - I(u(e)) for the populations at hand; otherwise u is computed from
// the current before the change.
std::vector<ClosedLoopSample> closed_loop(const DqdParams& params, const EnvParams& env, const ControlLaw& law,
                                          const ClosedLoopConfig& cfg);

} // namespace dqd
