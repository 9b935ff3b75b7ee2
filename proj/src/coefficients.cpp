#include "dqd/coefficients.hpp"

#include "dqd/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dqd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularFraction = 1e-9;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("coefficients: t must be finite and >= 0");
}

template <std::size_t N>
void require_converged(const QuadResult<N>& r, const QuadratureConfig& quad, const char* what, double t) {
    if (!r.within(quad.tolerance)) {
        double worst = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double scale = std::max(std::abs(r.value[k]), r.magnitude[k]);
            if (scale > 0.0) worst = std::max(worst, r.error[k] / scale);
        }
        std::ostringstream os;
        os << what << ": estimated relative quadrature error " << worst << " exceeds tolerance "
           << quad.tolerance << " at t = " << t;
        throw QuadratureError(os.str());
    }
}

double tri_weight(double u, double w) noexcept {
    if (u <= 0.0 || u >= 2.0 * w) return 0.0;
    return u < w ? u : 2.0 * w - u;
}

double xlogx(double x) noexcept { return x == 0.0 ? 0.0 : x * std::log(std::abs(x)); }

// Principal value of int_0^{2W} tri(u) / (u - c) du.
double tri_principal_value(double c, double w) noexcept {
    return -xlogx(c) + xlogx(2.0 * w - c) - 2.0 * xlogx(w - c);
}

// Lead energy pieces split at the Fermi edge. At kbt > 0 the edge region
// mu +/- 20 kbt is cut into pieces of width 2 kbt, so each piece stays well
// inside the strip where the Fermi function is analytic (poles at pi kbt).
std::vector<Interval> lead_band(double mu, double w, double kbt) {
    const double edge = 20.0 * kbt;
    if (!(kbt > 0.0) || edge >= w) return {Interval{mu - w, mu}, Interval{mu, mu + w}};
    std::vector<Interval> out{Interval{mu - w, mu - edge}};
    for (int i = -10; i < 10; ++i) out.push_back(Interval{mu + 2.0 * kbt * i, mu + 2.0 * kbt * (i + 1)});
    out.push_back(Interval{mu + edge, mu + w});
    return out;
}

} // namespace

double sin_kernel(double y, double t, double band_cutoff) noexcept {
    if (std::abs(y) < kSingularFraction * band_cutoff) return t;
    return std::sin(y * t) / y;
}

double cos_kernel(double y, double t, double band_cutoff) noexcept {
    if (std::abs(y) < kSingularFraction * band_cutoff) return 0.0;
    const double s = std::sin(0.5 * y * t);
    return 2.0 * s * s / y;
}

double thermal_tanh(double x, double kbt) noexcept {
    if (kbt > 0.0) return std::tanh(x / (2.0 * kbt));
    return (x > 0.0) - (x < 0.0);
}

double fermi_dirac(double energy, double mu, double kbt) noexcept {
    const double x = energy - mu;
    if (kbt <= 0.0) return x < 0.0 ? 1.0 : (x > 0.0 ? 0.0 : 0.5);
    const double z = x / kbt;
    if (z > 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (std::exp(z) + 1.0);
}

FermiLambda fermi_lambda(double omega_m, double omega_n, double kbt) noexcept {
    if (kbt > 0.0) {
        const double tm = std::tanh(omega_m / (2.0 * kbt));
        const double tn = std::tanh(omega_n / (2.0 * kbt));
        return {1.0 - tm * tn, tm - tn};
    }
    auto heaviside = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); };
    const double d = heaviside(omega_m) - heaviside(omega_n);
    return {2.0 * std::abs(d), 2.0 * d};
}

QuadratureConfig quadrature_for(const EnvParams& env) {
    QuadratureConfig q;
    q.band_cutoff = env.band_cutoff;
    return q;
}

DeltaCoeffs delta_coeffs_reduced(const EigenBasis& basis, const EnvParams& env,
                                 const QuadratureConfig& quad, double t) {
    require_time(t);
    if (env.kbt != 0.0) throw std::domain_error("delta_coeffs_reduced: only valid at kbt = 0");
    DeltaCoeffs d;
    if (t == 0.0) return d;
    const double w = quad.band_cutoff;
    const double v = env.ev_qpc;
    const double w0 = basis.omega0;
    const double g2 = env.dos_product;

    // Quadrant A (w_m > 0 > w_n): x = V + u, Lambda1 = Lambda2 = 2.
    // Quadrant B (w_m < 0 < w_n): x = V - u, Lambda1 = 2, Lambda2 = -2.
    auto integrand = [&](double u) -> std::array<double, 5> {
        const double weight = 2.0 * g2 * tri_weight(u, w);
        std::array<double, 5> out{};
        for (int q = 0; q < 2; ++q) {
            const double x = q == 0 ? v + u : v - u;
            const double l2 = q == 0 ? 1.0 : -1.0;
            const double s_minus = sin_kernel(x - w0, t, w);
            const double s_plus = sin_kernel(x + w0, t, w);
            out[0] += 0.5 * (s_minus + s_plus);
            out[1] += l2 * 0.5 * (s_minus - s_plus);
            out[2] += 0.5 * (cos_kernel(w0 + x, t, w) + cos_kernel(w0 - x, t, w));
            out[3] += 4.0 * sin_kernel(x, t, w);
            out[4] += l2 * -2.0 * cos_kernel(x, t, w);
        }
        for (double& o : out) o *= weight;
        return out;
    };
    const std::array<Interval, 2> pieces{Interval{0.0, w}, Interval{w, 2.0 * w}};
    const auto r = integrate<5>(integrand, pieces, t, quad);
    require_converged(r, quad, "delta_coeffs", t);
    return {r.value[0], r.value[1], r.value[2], r.value[3], r.value[4]};
}

DeltaCoeffs delta_coeffs_2d(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                            double t, int refine) {
    require_time(t);
    DeltaCoeffs d;
    if (t == 0.0) return d;
    const double w = quad.band_cutoff;
    const double v = env.ev_qpc;
    const double w0 = basis.omega0;
    const double g2 = env.dos_product;
    const double kbt = env.kbt;

    auto integrand = [&](double wm, double wn) -> std::array<double, 5> {
        const FermiLambda lam = fermi_lambda(wm, wn, kbt);
        const double x = wm - wn + v;
        const double s_minus = sin_kernel(x - w0, t, w);
        const double s_plus = sin_kernel(x + w0, t, w);
        return {g2 * lam.lambda1 * 0.5 * (s_minus + s_plus),
                g2 * lam.lambda2 * 0.5 * (s_minus - s_plus),
                g2 * lam.lambda1 * 0.5 * (cos_kernel(w0 + x, t, w) + cos_kernel(w0 - x, t, w)),
                g2 * lam.lambda1 * 4.0 * sin_kernel(x, t, w),
                g2 * lam.lambda2 * -2.0 * cos_kernel(x, t, w)};
    };

    QuadResult<5> total;
    auto add = [&](const QuadResult<5>& part) {
        for (std::size_t k = 0; k < 5; ++k) {
            total.value[k] += part.value[k];
            total.error[k] += part.error[k];
            total.magnitude[k] += part.magnitude[k];
        }
    };
    const Interval neg{-w, 0.0};
    const Interval pos{0.0, w};
    if (kbt == 0.0) {
        // Lambda vanishes on the same-sign quadrants
        const std::array<Interval, 1> a_m{pos}, a_n{neg};
        add(integrate_2d<5>(integrand, a_m, a_n, t, quad, refine));
        add(integrate_2d<5>(integrand, a_n, a_m, t, quad, refine));
    } else {
        const std::array<Interval, 2> full{neg, pos};
        add(integrate_2d<5>(integrand, full, full, t, quad, refine));
    }
    require_converged(total, quad, "delta_coeffs_2d", t);
    return {total.value[0], total.value[1], total.value[2], total.value[3], total.value[4]};
}

DeltaCoeffs delta_coeffs(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                         double t) {
    if (env.kbt == 0.0) return delta_coeffs_reduced(basis, env, quad, t);
    return delta_coeffs_2d(basis, env, quad, t);
}

GammaRates gamma_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad, double t) {
    require_time(t);
    GammaRates g;
    if (t == 0.0) return g;
    const double w = quad.band_cutoff;
    const double w0 = basis.omega0;
    auto lead = [&](double mu, double coupling) {
        auto f = [&](double e) -> std::array<double, 2> {
            const double th = thermal_tanh(e - mu, env.kbt);
            const double k = coupling * sin_kernel(e - w0, t, w);
            return {(1.0 - th) * k, (1.0 + th) * k};
        };
        const auto pieces = lead_band(mu, w, env.kbt);
        const auto r = integrate<2>(f, pieces, t, quad);
        require_converged(r, quad, "gamma_rates", t);
        return r.value;
    };
    const auto l = lead(env.mu_l, env.lead_coupling_l);
    const auto r = lead(env.mu_r, env.lead_coupling_r);
    g.gamma1 = l[0];
    g.gamma2 = l[1];
    g.gamma3 = r[0];
    g.gamma4 = r[1];
    return g;
}

GammaRates gamma_rates(const EigenBasis& basis, const EnvParams& env, double t) {
    return gamma_rates(basis, env, quadrature_for(env), t);
}

AppendixRates appendix_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                             double t) {
    require_time(t);
    AppendixRates a;
    if (t == 0.0) return a;
    const double w = quad.band_cutoff;
    const double w0 = basis.omega0;
    using C = std::complex<double>;
    auto lead = [&](double mu, double coupling) {
        // components: (re, im) of [minus, plus, prime-minus, prime-plus]
        auto f = [&](double e) -> std::array<double, 8> {
            const double occ = fermi_dirac(e, mu, env.kbt);
            const double s = coupling * sin_kernel(e - w0, t, w);
            const double c = coupling * cos_kernel(e - w0, t, w);
            // int_0^t exp(+i y s) ds = s + i c ; exp(-i y s) -> s - i c
            return {occ * s, occ * c, (1.0 - occ) * s, -(1.0 - occ) * c,
                    (1.0 - occ) * s, (1.0 - occ) * c, occ * s, -occ * c};
        };
        const auto pieces = lead_band(mu, w, env.kbt);
        const auto r = integrate<8>(f, pieces, t, quad);
        require_converged(r, quad, "appendix_rates", t);
        return std::array<C, 4>{C{r.value[0], r.value[1]}, C{r.value[2], r.value[3]},
                                C{r.value[4], r.value[5]}, C{r.value[6], r.value[7]}};
    };
    const auto l = lead(env.mu_l, env.lead_coupling_l);
    const auto r = lead(env.mu_r, env.lead_coupling_r);
    a.l_minus = l[0];
    a.l_plus = l[1];
    a.lp_minus = l[2];
    a.lp_plus = l[3];
    a.r_minus = r[0];
    a.r_plus = r[1];
    a.rp_minus = r[2];
    a.rp_plus = r[3];
    return a;
}

RateSet evaluate_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad, double t) {
    const GammaRates g = gamma_rates(basis, env, quad, t);
    const DeltaCoeffs d = delta_coeffs(basis, env, quad, t);
    return {t, g.gamma1, g.gamma2, g.gamma3, g.gamma4, d.delta1, d.delta2, d.delta3, d.delta4, d.delta5};
}

RateSet markovian_rates(const EigenBasis& basis, const EnvParams& env) {
    if (env.kbt != 0.0) {
        throw std::domain_error("markovian_rates: closed-form Delta limits exist only at kbt = 0");
    }
    const double w = env.band_cutoff;
    const double w0 = basis.omega0;
    const double v = env.ev_qpc;
    const double g2 = env.dos_product;

    RateSet r;
    r.t = std::numeric_limits<double>::infinity();

    // sin(y t)/y -> pi delta(y): the lead weight is read off at e = omega0
    auto lead = [&](double mu, double coupling, double sign) {
        const double y = w0 - mu;
        if (std::abs(y) > w) return 0.0;
        const double edge = std::abs(y) == w ? 0.5 : 1.0;
        return edge * kPi * coupling * (1.0 + sign * thermal_tanh(y, 0.0));
    };
    r.gamma1 = lead(env.mu_l, env.lead_coupling_l, -1.0);
    r.gamma2 = lead(env.mu_l, env.lead_coupling_l, +1.0);
    r.gamma3 = lead(env.mu_r, env.lead_coupling_r, -1.0);
    r.gamma4 = lead(env.mu_r, env.lead_coupling_r, +1.0);

    auto tri = [&](double c) { return tri_weight(c, w); };
    auto pv = [&](double c) { return tri_principal_value(c, w); };
    r.delta1 = kPi * g2 * (tri(w0 - v) + tri(-v - w0) + tri(v - w0) + tri(v + w0));
    r.delta2 = kPi * g2 * (tri(w0 - v) - tri(-v - w0) - tri(v - w0) + tri(v + w0));
    r.delta3 = g2 * (pv(-w0 - v) - pv(w0 - v) - pv(w0 + v) + pv(v - w0));
    r.delta4 = 8.0 * kPi * g2 * (tri(-v) + tri(v));
    r.delta5 = -4.0 * g2 * (pv(-v) + pv(v));
    return r;
}

} // namespace dqd
