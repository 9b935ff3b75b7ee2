#include "dqd/control.hpp"

#include "dqd/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dqd {

std::vector<std::string> check(const ControlLaw& law) {
    std::vector<std::string> out;
    if (!(law.eta1 >= 0.0)) out.emplace_back("control.eta1 must be >= 0");
    if (!(law.eta2 >= 0.0)) out.emplace_back("control.eta2 must be >= 0");
    if (!(law.k > 0.0)) out.emplace_back("control.k must be > 0");
    if (!(law.sample_dt >= 0.0)) out.emplace_back("control.sample_dt must be > 0 (or 0 for the default)");
    if (!(law.noise_sigma >= 0.0)) out.emplace_back("control.noise_sigma must be >= 0");
    if (!std::isfinite(law.i_target)) out.emplace_back("control.i_target must be finite");
    return out;
}

int sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

ControlSignal control_signal(const ControlLaw& law, double i_measured) noexcept {
    const double e = law.i_target - i_measured;
    if (e == 0.0) return {};
    // exp(-inf) = 0 takes care of |e| so small that k|e| underflows
    const double f = sgn(e) * std::exp(-1.0 / (law.k * std::abs(e)));
    return {f * law.eta1, f * law.eta2};
}

namespace {

struct Plant {
    const DqdParams& params;
    const EnvParams& env;
    const ControlLaw& law;
    const ClosedLoopConfig& cfg;
    const RateSet& frozen;

    RateSet rates_at(const EigenBasis& b) const {
        if (law.freeze_rates) return frozen;
        RateSet r = markovian_rates(b, env);
        cfg.gammas.apply(r);
        return r;
    }

    double current_at(const Populations& p, const ControlSignal& u) const {
        const EigenBasis b = diagonalize({params.epsilon + u.u1, params.omega + u.u2});
        return current(p, b, rates_at(b));
    }
};

// Root of h(e) = e - I0 + I(u(e)) by bisection. The root lies between
// I0 - max I and I0 - min I over the actuation range, which is scanned to
// bracket it.
double solve_error(const Plant& plant, const Populations& p) {
    const ControlLaw& law = plant.law;
    double i_lo = plant.current_at(p, {});
    double i_hi = i_lo;
    constexpr int kScan = 32;
    for (int j = -kScan; j <= kScan; ++j) {
        const double s = static_cast<double>(j) / kScan;
        const double i = plant.current_at(p, {s * law.eta1, s * law.eta2});
        i_lo = std::min(i_lo, i);
        i_hi = std::max(i_hi, i);
    }
    auto h = [&](double e) { return e - law.i_target + plant.current_at(p, control_signal(law, law.i_target - e)); };
    double a = law.i_target - i_hi;
    double b = law.i_target - i_lo;
    double ha = h(a);
    if (ha >= 0.0) return a;
    if (h(b) <= 0.0) return b;
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        const double hm = h(m);
        if (hm == 0.0) return m;
        if ((hm < 0.0) == (ha < 0.0)) {
            a = m;
            ha = hm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

std::vector<ClosedLoopSample> closed_loop(const DqdParams& params, const EnvParams& env, const ControlLaw& law,
                                          const ClosedLoopConfig& cfg) {
    const EigenBasis nominal = diagonalize(params);
    const double dt = law.sample_dt > 0.0 ? law.sample_dt : 0.1 / nominal.omega0;
    if (!(cfg.horizon >= 10.0 * dt)) throw std::invalid_argument("closed_loop: horizon must span at least 10 samples");
    const long n_samples = std::lround(std::floor(cfg.horizon / dt + 1e-9));

    RateSet frozen = markovian_rates(nominal, env);
    cfg.gammas.apply(frozen);
    const Plant plant{params, env, law, cfg, frozen};

    std::mt19937_64 rng(law.noise_seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    EigenBasis basis = nominal;
    RateSet rates = frozen;
    Populations p = cfg.initial;
    Integrator integ(cfg.integrator);

    std::vector<ClosedLoopSample> out;
    const int every = std::max(1, cfg.record_every);
    out.reserve(static_cast<std::size_t>(n_samples / every + 2));
    double t = 0.0;
    State y(3);
    for (long s = 0; s <= n_samples; ++s) {
        const double ts = static_cast<double>(s) * dt;
        if (s > 0) {
            const Rhs f = [&](double, const State& x, State& dx) {
                const auto d = population_rhs({x[0], x[1], x[2]}, rates, basis, env, cfg.variant);
                dx.resize(3);
                dx << d[0], d[1], d[2];
            };
            y << p.p00, p.pgg, p.pee;
            integ.advance(f, t, y, ts);
            p = {y[0], y[1], y[2]};
        }
        const double jitter = law.noise_sigma > 0.0 ? law.noise_sigma * noise(rng) : 0.0;
        ControlSignal u;
        double i_now = 0.0;
        if (law.zero_delay) {
            const double e = solve_error(plant, p);
            u = control_signal(law, law.i_target - e + jitter);
            i_now = plant.current_at(p, u);
        } else {
            u = control_signal(law, current(p, basis, rates) + jitter);
            i_now = plant.current_at(p, u);
        }
        const DqdParams actuated{params.epsilon + u.u1, params.omega + u.u2};
        basis = diagonalize(actuated);
        rates = plant.rates_at(basis);
        if (s % every == 0 || s == n_samples) {
            out.push_back({ts, i_now, law.i_target - i_now, u.u1, u.u2, actuated.epsilon, actuated.omega});
        }
    }
    return out;
}

} // namespace dqd
