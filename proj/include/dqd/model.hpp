// model.hpp — DQD Hamiltonian parameters, reservoir parameters and the eigenbasis transform.
//
// Units: energies in micro-eV, hbar = e = 1, time in hbar/micro-eV.
// Basis ordering used throughout the library: {|0>, |g>, |e>}.

#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace dqd {

struct DqdParams {
    double epsilon{0.0}; // detuning eps_2 - eps_1
    double omega{0.0};   // interdot tunnel coupling
};

struct EigenBasis {
    double theta{0.0};  // atan2(2*omega, epsilon)
    double alpha{1.0};  // cos(theta/2)
    double beta{0.0};   // sin(theta/2)
    double omega0{0.0}; // level splitting sqrt(eps^2 + 4 omega^2)
};

// Flat-band DOS product giving a long-time Delta_4 of exactly 1 at eV_QPC = 400.
inline constexpr double kDefaultDosProduct = 1.0 / (8.0 * std::numbers::pi * 400.0);

struct EnvParams {
    double chi1{0.5};  // QPC amplitude change with the electron on dot 1
    double chi2{1.0};  // ... on dot 2; chi1 < chi2 (detector sits closer to dot 2)
    double d_amp{1.0}; // bare QPC tunnelling amplitude D
    double ev_qpc{400.0};
    double mu_l{0.0};
    double mu_r{0.0};
    double kbt{0.0};
    double band_cutoff{2000.0};
    double dos_product{kDefaultDosProduct};
    double lead_coupling_l{0.1 / (2.0 * std::numbers::pi)};
    double lead_coupling_r{0.1 / (2.0 * std::numbers::pi)};

    // Signed chi1 - chi2. Only its square enters the rates; the dephasing
    // operator P3 uses the signed value.
    double chi_d() const noexcept { return chi1 - chi2; }
};

// Throws DegenerateInputError when epsilon = omega = 0, std::invalid_argument
// on non-finite input.
EigenBasis diagonalize(const DqdParams& p);

// eta = alpha^2 beta^2 chi_d^2, the prefactor of the QPC-induced transitions.
double eta(const EigenBasis& basis, const EnvParams& env) noexcept;

// Human-readable invariant violations; empty when the parameters are usable.
std::vector<std::string> check(const DqdParams& p);
std::vector<std::string> check(const EnvParams& env);

} // namespace dqd
