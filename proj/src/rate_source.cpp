#include "dqd/rate_source.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqd {

void GammaOverrides::apply(RateSet& r) const noexcept {
    if (gamma1) r.gamma1 = *gamma1;
    if (gamma2) r.gamma2 = *gamma2;
    if (gamma3) r.gamma3 = *gamma3;
    if (gamma4) r.gamma4 = *gamma4;
}

RateSource RateSource::constant(const RateSet& rates) {
    RateSource s;
    s.tail_ = rates;
    return s;
}

RateSource RateSource::tabulated(std::vector<RateSet> table, double dt, const RateSet& tail) {
    if (table.size() < 2) throw std::invalid_argument("RateSource::tabulated: need at least two grid points");
    if (!(dt > 0.0)) throw std::invalid_argument("RateSource::tabulated: dt must be > 0");
    RateSource s;
    s.table_ = std::move(table);
    s.dt_ = dt;
    s.tail_ = tail;
    return s;
}

RateSet RateSource::at(double t) const {
    if (table_.empty()) {
        RateSet r = tail_;
        r.t = t;
        return r;
    }
    const double pos = t / dt_;
    const auto last = static_cast<double>(table_.size() - 1);
    if (pos >= last) {
        RateSet r = pos == last ? table_.back() : tail_;
        r.t = t;
        return r;
    }
    const double fl = std::floor(std::max(pos, 0.0));
    const auto i = static_cast<std::size_t>(fl);
    const double f = std::max(pos, 0.0) - fl;
    const RateSet& a = table_[i];
    const RateSet& b = table_[i + 1];
    auto lerp = [f](double x, double y) { return x + f * (y - x); };
    RateSet r;
    r.t = t;
    r.gamma1 = lerp(a.gamma1, b.gamma1);
    r.gamma2 = lerp(a.gamma2, b.gamma2);
    r.gamma3 = lerp(a.gamma3, b.gamma3);
    r.gamma4 = lerp(a.gamma4, b.gamma4);
    r.delta1 = lerp(a.delta1, b.delta1);
    r.delta2 = lerp(a.delta2, b.delta2);
    r.delta3 = lerp(a.delta3, b.delta3);
    r.delta4 = lerp(a.delta4, b.delta4);
    r.delta5 = lerp(a.delta5, b.delta5);
    return r;
}

double table_spacing(const EigenBasis& basis, const EnvParams& env) {
    double scale = 1.0 / basis.omega0;
    if (env.ev_qpc > 0.0) scale = std::min(scale, 1.0 / env.ev_qpc);
    return scale / 20.0;
}

std::vector<double> table_times(double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0)) throw std::invalid_argument("table_times: horizon and dt must be > 0");
    const auto n = static_cast<std::size_t>(std::ceil(horizon / dt)) + 1;
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) * dt;
    return t;
}

} // namespace dqd
