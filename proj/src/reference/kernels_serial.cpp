// Serial versions of the batch kernels, kept as the reference the OpenMP
// paths are tested and benchmarked against.

#include "dqd/kernels.hpp"

namespace dqd::reference {

std::vector<RateSet> tabulate_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                                    const std::vector<double>& times) {
    std::vector<RateSet> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(evaluate_rates(basis, env, quad, t));
    return out;
}

std::vector<double> stationary_sweep(const std::vector<double>& epsilons, double omega, const EnvParams& env,
                                     const GammaOverrides& gammas) {
    std::vector<double> out;
    out.reserve(epsilons.size());
    for (double e : epsilons) out.push_back(detail::sweep_point(e, omega, env, gammas));
    return out;
}

} // namespace dqd::reference
