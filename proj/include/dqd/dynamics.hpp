// dynamics.hpp — Lindblad master equation for the 3-state DQD density matrix,
// unresolved population rate equations, the tunnelling current and its
// stationary value.

#pragma once

#include "dqd/coefficients.hpp"
#include "dqd/integrator.hpp"
#include "dqd/model.hpp"
#include "dqd/rate_source.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace dqd {

// Basis {|0>, |g>, |e>}.
using DensityMatrix3 = Eigen::Matrix3cd;

// Population equations: AsWritten lets each of gg and ee gain in proportion to
// its own population and lose in proportion to the other's (probability is
// conserved, but this is not the diagonal of a Lindblad generator);
// LindbladConsistent is the diagonal of the generator (default).
enum class Variant { AsWritten, LindbladConsistent };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s); // throws ConfigError

// Gate offsets added to epsilon and omega.
struct ControlInput {
    double u1{0.0};
    double u2{0.0};
};

struct Populations {
    double p00{0.0};
    double pgg{0.0};
    double pee{0.0};

    double total() const noexcept { return p00 + pgg + pee; }
};

// d rho / dt. The Hamiltonian is written in the eigenbasis of the nominal
// (epsilon, omega); the control offsets enter through their projections on
// that basis. The result is Hermitian to the last bit when rho is.
DensityMatrix3 lindblad_rhs(const DensityMatrix3& rho, const RateSet& rates, const EigenBasis& basis,
                            const EnvParams& env, ControlInput u = {});

// 18 reals, row-major (re, im) pairs.
State pack(const DensityMatrix3& rho);
DensityMatrix3 unpack(const State& y);

DensityMatrix3 pure_state(int index); // |index><index|

struct DmSample {
    double t;
    DensityMatrix3 rho;
};

struct DmTrajectory {
    std::vector<DmSample> samples;
    int positivity_warnings{0}; // samples with min eigenvalue < -1e-6
    double max_trace_error{0.0};
    double max_hermiticity_error{0.0};
    double min_eigenvalue{0.0};
};

// Samples at each of `times` (ascending, first >= 0; the state rho0 is taken to
// be at t = 0).
DmTrajectory propagate(const DensityMatrix3& rho0, const std::vector<double>& times, const IntegratorConfig& cfg,
                       const RateSource& source, const EigenBasis& basis, const EnvParams& env,
                       ControlInput u = {});

// Rate equations for (p00, pgg, pee) without counting. Only the Gamma_1
// injection and Gamma_4 drain channels enter, as in the resolved chain.
std::array<double, 3> population_rhs(const Populations& p, const RateSet& rates, const EigenBasis& basis,
                                     const EnvParams& env, Variant variant);

struct PopSample {
    double t;
    Populations pops;
};

std::vector<PopSample> propagate_populations(const Populations& p0, const std::vector<double>& times,
                                             const IntegratorConfig& cfg, const RateSource& source,
                                             const EigenBasis& basis, const EnvParams& env, Variant variant);

// e * Gamma_4 * (beta^2 rho_gg + alpha^2 rho_ee), e = 1.
double current(const Populations& p, const EigenBasis& basis, const RateSet& rates) noexcept;
double current(const DensityMatrix3& rho, const EigenBasis& basis, const RateSet& rates) noexcept;

// The closed form I_s = Gamma1 Gamma4 (2 beta^2 chi_d^2 Delta2 + Gamma4) / (I1 + I2).
// Gamma4 = 0 or Gamma1 = 0 return 0; a vanishing denominator otherwise throws
// DivisionByZeroError.
double stationary_current(const EigenBasis& basis, const EnvParams& env, const RateSet& rates);

// Null vector of the population generator, normalized. Throws
// DivisionByZeroError when the stationary state is not unique.
Populations stationary_populations(const EigenBasis& basis, const EnvParams& env, const RateSet& rates,
                                   Variant variant);

double stationary_current_exact(const EigenBasis& basis, const EnvParams& env, const RateSet& rates,
                                Variant variant);

} // namespace dqd
