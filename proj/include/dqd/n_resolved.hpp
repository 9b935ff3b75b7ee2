// n_resolved.hpp — Population chains conditioned on the number n of electrons
// that have entered the drain.

#pragma once

#include "dqd/dynamics.hpp"

#include <Eigen/Core>

#include <vector>

namespace dqd {

class NResolvedState {
public:
    explicit NResolvedState(int n_max = 200);

    // rho_gg^(0) = 1.
    static NResolvedState ground(int n_max);
    static NResolvedState empty_dot(int n_max); // rho_00^(0) = 1

    int n_max() const noexcept { return n_max_; }

    double& p00(int n) { return data_[3 * n]; }
    double& pgg(int n) { return data_[3 * n + 1]; }
    double& pee(int n) { return data_[3 * n + 2]; }
    double p00(int n) const { return data_[3 * n]; }
    double pgg(int n) const { return data_[3 * n + 1]; }
    double pee(int n) const { return data_[3 * n + 2]; }

    double bin(int n) const { return p00(n) + pgg(n) + pee(n); }
    double total() const;
    double top_bin() const { return bin(n_max_); }
    Populations marginal() const;

    // Zero-padded copy with a larger cutoff.
    NResolvedState grown(int new_n_max) const;

    const Eigen::VectorXd& data() const noexcept { return data_; }
    Eigen::VectorXd& data() noexcept { return data_; }

private:
    int n_max_;
    Eigen::VectorXd data_; // [3n + {0: 00, 1: gg, 2: ee}]
};

struct TruncationConfig {
    double regrow_threshold{1e-12}; // top-bin mass that triggers a rollback and doubling
    int n_max_limit{1 << 16};
};

struct NResolvedSample {
    double t;
    NResolvedState state;
};

struct NResolvedTrajectory {
    std::vector<NResolvedSample> samples;
    int regrows{0};
};

void n_resolved_rhs(const NResolvedState& s, const RateSet& rates, const EigenBasis& basis, const EnvParams& env,
                    Variant variant, Eigen::VectorXd& out);

// Samples at each of `times`; state0 is taken to be at t = 0. Whenever the top
// bin holds more than the regrow threshold at a sample, the segment is redone
// with n_max doubled. Throws TruncationOverflow past n_max_limit.
NResolvedTrajectory propagate_n_resolved(const NResolvedState& state0, const std::vector<double>& times,
                                         const IntegratorConfig& cfg, const RateSource& source,
                                         const EigenBasis& basis, const EnvParams& env, Variant variant,
                                         const TruncationConfig& trunc = {});

double current(const NResolvedState& s, const EigenBasis& basis, const RateSet& rates) noexcept;

} // namespace dqd
