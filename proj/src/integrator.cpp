#include "dqd/integrator.hpp"

#include "dqd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dqd {

std::vector<std::string> check(const IntegratorConfig& cfg) {
    std::vector<std::string> out;
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol <= 1e-2)) out.emplace_back("integrator.rel_tol must be in (0, 1e-2]");
    if (!(cfg.abs_tol > 0.0 && cfg.abs_tol <= 1e-2)) out.emplace_back("integrator.abs_tol must be in (0, 1e-2]");
    if (!(cfg.max_step > 0.0)) out.emplace_back("integrator.max_step must be > 0");
    return out;
}

Integrator::Integrator(IntegratorConfig cfg) : cfg_(cfg) {}

void Integrator::advance(const Rhs& f, double& t, State& y, double t_end) {
    if (t_end == t) return;
    if (t_end < t) throw std::invalid_argument("Integrator::advance: cannot integrate backwards");
    if (cfg_.method == Method::Rk4Fixed) {
        advance_rk4(f, t, y, t_end);
    } else {
        advance_rk45(f, t, y, t_end);
    }
}

void Integrator::advance_rk4(const Rhs& f, double& t, State& y, double t_end) {
    const Eigen::Index n = y.size();
    k1_.resize(n);
    k2_.resize(n);
    k3_.resize(n);
    k4_.resize(n);
    tmp_.resize(n);
    while (t < t_end) {
        double h = cfg_.max_step;
        bool last = false;
        if (t + h * (1.0 + 1e-6) >= t_end) {
            h = t_end - t;
            last = true;
        }
        f(t, y, k1_);
        tmp_ = y + 0.5 * h * k1_;
        f(t + 0.5 * h, tmp_, k2_);
        tmp_ = y + 0.5 * h * k2_;
        f(t + 0.5 * h, tmp_, k3_);
        tmp_ = y + h * k3_;
        f(t + h, tmp_, k4_);
        y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        t = last ? t_end : t + h;
        ++accepted_;
    }
}

double Integrator::error_norm(const State& y, const State& y_new, const State& err) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        const double e = err[i] / sc;
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(std::max<Eigen::Index>(1, y.size())));
}

void Integrator::advance_rk45(const Rhs& f, double& t, State& y, double t_end) {
    // Dormand-Prince 5(4) tableau
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Eigen::Index n = y.size();
    for (State* s : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &y_new_, &err_}) s->resize(n);

    f(t, y, k1_);
    if (!k1_.allFinite()) {
        std::ostringstream os;
        os << "rk45: non-finite derivative at t = " << t;
        throw StepFailure(os.str());
    }
    if (h_ <= 0.0) {
        const double d0 = y.norm();
        const double d1 = k1_.norm();
        h_ = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    }
    while (t < t_end) {
        double h = std::min(h_, cfg_.max_step);
        bool last = false;
        // absorb a sliver of remaining time into this step rather than leave it for the next
        if (t + h * (1.0 + 1e-6) >= t_end) {
            h = t_end - t;
            last = true;
        }
        if (!last && h < 1e-14 * std::max(1.0, std::abs(t))) {
            std::ostringstream os;
            os << "rk45: step size underflow (h = " << h << ") at t = " << t;
            throw StepFailure(os.str());
        }
        tmp_ = y + h * a21 * k1_;
        f(t + c2 * h, tmp_, k2_);
        tmp_ = y + h * (a31 * k1_ + a32 * k2_);
        f(t + c3 * h, tmp_, k3_);
        tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
        f(t + c4 * h, tmp_, k4_);
        tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
        f(t + c5 * h, tmp_, k5_);
        tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
        f(t + h, tmp_, k6_);
        y_new_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
        f(t + h, y_new_, k7_);
        err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

        const double en = error_norm(y, y_new_, err_);
        if (!std::isfinite(en)) {
            h_ = 0.25 * h;
            ++rejected_;
            continue;
        }
        if (en <= 1.0) {
            t = last ? t_end : t + h;
            y.swap(y_new_);
            k1_.swap(k7_);
            ++accepted_;
            if (!k1_.allFinite()) {
                std::ostringstream os;
                os << "rk45: non-finite derivative at t = " << t;
                throw StepFailure(os.str());
            }
            const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            // a step shortened to hit t_end says nothing about the natural step size
            if (!last || h >= h_) h_ = h * fac;
        } else {
            h_ = h * std::max(0.2, 0.9 * std::pow(en, -0.2));
            ++rejected_;
        }
    }
}

} // namespace dqd
