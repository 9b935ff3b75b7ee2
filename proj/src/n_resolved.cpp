#include "dqd/n_resolved.hpp"

#include "dqd/errors.hpp"

#include <sstream>

namespace dqd {

NResolvedState::NResolvedState(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("NResolvedState: n_max must be >= 1");
    data_ = Eigen::VectorXd::Zero(3 * (n_max + 1));
}

NResolvedState NResolvedState::ground(int n_max) {
    NResolvedState s(n_max);
    s.pgg(0) = 1.0;
    return s;
}

NResolvedState NResolvedState::empty_dot(int n_max) {
    NResolvedState s(n_max);
    s.p00(0) = 1.0;
    return s;
}

double NResolvedState::total() const {
    double sum = 0.0;
    double comp = 0.0;
    for (Eigen::Index i = 0; i < data_.size(); ++i) {
        const double y = data_[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Populations NResolvedState::marginal() const {
    Populations p;
    for (int n = 0; n <= n_max_; ++n) {
        p.p00 += p00(n);
        p.pgg += pgg(n);
        p.pee += pee(n);
    }
    return p;
}

NResolvedState NResolvedState::grown(int new_n_max) const {
    if (new_n_max < n_max_) throw std::invalid_argument("NResolvedState::grown: cannot shrink");
    NResolvedState s(new_n_max);
    s.data_.head(data_.size()) = data_;
    return s;
}

namespace {

void chain_rhs(const Eigen::VectorXd& y, int nm, const RateSet& r, const EigenBasis& b, const EnvParams& env,
               Variant variant, Eigen::VectorXd& out) {
    out.resize(3 * (nm + 1));
    const double a2 = b.alpha * b.alpha;
    const double b2 = b.beta * b.beta;
    const double up = eta(b, env) * (r.delta1 + r.delta2);
    const double down = eta(b, env) * (r.delta1 - r.delta2);
    const bool lc = variant == Variant::LindbladConsistent;
    for (int n = 0; n <= nm; ++n) {
        const double p0 = y[3 * n];
        const double g = y[3 * n + 1];
        const double e = y[3 * n + 2];
        // rho^(-1) = 0 closes the chain
        const double feed = n > 0 ? r.gamma4 * (b2 * y[3 * n - 2] + a2 * y[3 * n - 1]) : 0.0;
        double dg = r.gamma1 * a2 * p0 - r.gamma4 * b2 * g;
        double de = r.gamma1 * b2 * p0 - r.gamma4 * a2 * e;
        if (lc) {
            dg += -up * g + down * e;
            de += up * g - down * e;
        } else {
            dg += down * g - up * e;
            de += up * e - down * g;
        }
        out[3 * n] = -r.gamma1 * p0 + feed;
        out[3 * n + 1] = dg;
        out[3 * n + 2] = de;
    }
}

} // namespace

void n_resolved_rhs(const NResolvedState& s, const RateSet& r, const EigenBasis& b, const EnvParams& env,
                    Variant variant, Eigen::VectorXd& out) {
    chain_rhs(s.data(), s.n_max(), r, b, env, variant, out);
}

NResolvedTrajectory propagate_n_resolved(const NResolvedState& state0, const std::vector<double>& times,
                                         const IntegratorConfig& cfg, const RateSource& source,
                                         const EigenBasis& basis, const EnvParams& env, Variant variant,
                                         const TruncationConfig& trunc) {
    NResolvedTrajectory out;
    out.samples.reserve(times.size());
    NResolvedState checkpoint = state0;
    double t_check = 0.0;
    Integrator integ(cfg);

    for (double target : times) {
        if (!(target >= t_check)) throw std::invalid_argument("propagate_n_resolved: output times must be ascending and >= 0");
        for (;;) {
            NResolvedState work = checkpoint;
            const int nm = work.n_max();
            const Rhs f = [&](double t, const State& y, State& dy) {
                chain_rhs(y, nm, source.at(t), basis, env, variant, dy);
            };
            double t = t_check;
            const Integrator saved = integ;
            integ.advance(f, t, work.data(), target);
            if (work.top_bin() <= trunc.regrow_threshold) {
                checkpoint = std::move(work);
                break;
            }
            const int grown = 2 * nm;
            if (grown > trunc.n_max_limit) {
                std::ostringstream os;
                os << "propagate_n_resolved: top bin holds " << work.top_bin() << " at t = " << target
                   << " and n_max cannot grow past " << trunc.n_max_limit;
                throw TruncationOverflow(os.str());
            }
            integ = saved;
            checkpoint = checkpoint.grown(grown);
            ++out.regrows;
        }
        t_check = target;
        out.samples.push_back({target, checkpoint});
    }
    return out;
}

double current(const NResolvedState& s, const EigenBasis& basis, const RateSet& rates) noexcept {
    return current(s.marginal(), basis, rates);
}

} // namespace dqd
