// kernels.hpp — Parallel batch kernels: coefficient tables and stationary-current sweeps.
//
// Every point is computed independently with no shared mutable state, so the
// OpenMP versions return bit-identical results to the serial ones in
// dqd::reference.

#pragma once

#include "dqd/coefficients.hpp"
#include "dqd/rate_source.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace dqd {

// One RateSet per time; throws the first QuadratureError encountered (by index).
std::vector<RateSet> tabulate_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                                    const std::vector<double>& times);

// Closed-form stationary current at each detuning, using the long-time Delta
// values of the re-diagonalized point and the given Gamma overrides.
std::vector<double> stationary_sweep(const std::vector<double>& epsilons, double omega, const EnvParams& env,
                                     const GammaOverrides& gammas);

int kernel_threads();

// Runs job(i), i in [0, n), across OpenMP threads; the exception of the lowest
// failing index is rethrown after all jobs finish.
void run_parallel(std::size_t n, const std::function<void(std::size_t)>& job);

namespace reference {

std::vector<RateSet> tabulate_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                                    const std::vector<double>& times);

std::vector<double> stationary_sweep(const std::vector<double>& epsilons, double omega, const EnvParams& env,
                                     const GammaOverrides& gammas);

} // namespace reference

namespace detail {

double sweep_point(double epsilon, double omega, const EnvParams& env, const GammaOverrides& gammas);

} // namespace detail

} // namespace dqd
