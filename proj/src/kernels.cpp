#include "dqd/kernels.hpp"

#include "dqd/dynamics.hpp"

#include <omp.h>

#include <exception>

namespace dqd {

namespace detail {

double sweep_point(double epsilon, double omega, const EnvParams& env, const GammaOverrides& gammas) {
    const EigenBasis b = diagonalize({epsilon, omega});
    RateSet r = markovian_rates(b, env);
    gammas.apply(r);
    return stationary_current(b, env, r);
}

} // namespace detail

int kernel_threads() { return omp_get_max_threads(); }

namespace {

// Runs body(i) for i in [0, n) in parallel and rethrows the lowest-index
// exception, so failures match the serial loop. `reverse` only changes the
// order in which indices are handed out.
template <class Body>
void parallel_for(std::size_t n, Body&& body, bool reverse = false) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(reverse ? count - 1 - k : k);
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

void run_parallel(std::size_t n, const std::function<void(std::size_t)>& job) { parallel_for(n, job); }

std::vector<RateSet> tabulate_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                                    const std::vector<double>& times) {
    std::vector<RateSet> out(times.size());
    // cost grows with t; hand out the expensive tail first
    parallel_for(
        times.size(), [&](std::size_t i) { out[i] = evaluate_rates(basis, env, quad, times[i]); }, true);
    return out;
}

std::vector<double> stationary_sweep(const std::vector<double>& epsilons, double omega, const EnvParams& env,
                                     const GammaOverrides& gammas) {
    std::vector<double> out(epsilons.size());
    parallel_for(epsilons.size(),
                 [&](std::size_t i) { out[i] = detail::sweep_point(epsilons[i], omega, env, gammas); });
    return out;
}

} // namespace dqd
