#include "dqd/model.hpp"

#include "dqd/errors.hpp"

#include <cmath>

namespace dqd {

EigenBasis diagonalize(const DqdParams& p) {
    if (!std::isfinite(p.epsilon) || !std::isfinite(p.omega)) {
        throw std::invalid_argument("diagonalize: epsilon and omega must be finite");
    }
    if (p.epsilon == 0.0 && p.omega == 0.0) {
        throw DegenerateInputError("diagonalize: epsilon = omega = 0 has no unique eigenbasis");
    }
    EigenBasis b;
    b.theta = std::atan2(2.0 * p.omega, p.epsilon);
    b.alpha = std::cos(0.5 * b.theta);
    b.beta = std::sin(0.5 * b.theta);
    b.omega0 = std::hypot(p.epsilon, 2.0 * p.omega);
    return b;
}

double eta(const EigenBasis& basis, const EnvParams& env) noexcept {
    const double ab = basis.alpha * basis.beta;
    const double chi = env.chi_d();
    return ab * ab * chi * chi;
}

std::vector<std::string> check(const DqdParams& p) {
    std::vector<std::string> out;
    if (!std::isfinite(p.epsilon)) out.emplace_back("model.epsilon must be finite");
    if (!std::isfinite(p.omega)) out.emplace_back("model.omega must be finite");
    if (p.epsilon == 0.0 && p.omega == 0.0) {
        out.emplace_back("model.epsilon and model.omega are both zero (degenerate diagonalization)");
    }
    return out;
}

std::vector<std::string> check(const EnvParams& env) {
    std::vector<std::string> out;
    if (!(env.chi1 < env.chi2)) {
        out.emplace_back("environment.chi1 must be < environment.chi2 (QPC is closer to the second dot)");
    }
    if (!(env.band_cutoff > 0.0)) out.emplace_back("environment.band_cutoff must be > 0");
    if (!(env.kbt >= 0.0)) out.emplace_back("environment.kbt must be >= 0");
    if (!(env.ev_qpc >= 0.0)) out.emplace_back("environment.ev_qpc must be >= 0");
    if (!(env.dos_product >= 0.0)) out.emplace_back("environment.dos_product must be >= 0");
    if (!(env.lead_coupling_l >= 0.0)) out.emplace_back("environment.lead_coupling_l must be >= 0");
    if (!(env.lead_coupling_r >= 0.0)) out.emplace_back("environment.lead_coupling_r must be >= 0");
    return out;
}

} // namespace dqd
