#include "dqd/dynamics.hpp"

#include "dqd/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>

namespace dqd {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

// Adds gamma/2 (L rho L^dag - L^dag L rho) to acc; the Hermitian part is
// restored by the caller.
void half_dissipator(DensityMatrix3& acc, double gamma, const Eigen::Matrix3d& l, const DensityMatrix3& rho) {
    if (gamma == 0.0) return;
    const Eigen::Matrix3cd lc = l.cast<C>();
    acc += 0.5 * gamma * (lc * rho * lc.transpose() - (lc.transpose() * lc) * rho);
}

void check_times(const std::vector<double>& times) {
    double prev = 0.0;
    for (double t : times) {
        if (!(t >= prev) || !std::isfinite(t)) throw std::invalid_argument("propagate: output times must be finite, ascending and >= 0");
        prev = t;
    }
}

} // namespace

std::string to_string(Variant v) { return v == Variant::AsWritten ? "as-written" : "lindblad-consistent"; }

Variant parse_variant(const std::string& s) {
    if (s == "as-written") return Variant::AsWritten;
    if (s == "lindblad-consistent") return Variant::LindbladConsistent;
    throw ConfigError("unknown variant '" + s + "' (expected as-written or lindblad-consistent)");
}

DensityMatrix3 lindblad_rhs(const DensityMatrix3& rho, const RateSet& r, const EigenBasis& b, const EnvParams& env,
                            ControlInput u) {
    const double a = b.alpha;
    const double be = b.beta;
    const double et = eta(b, env);
    const double ct = std::cos(b.theta);
    const double st = std::sin(b.theta);

    // rho_z = |e><e| - |g><g|, x = |g><e| + |e><g|
    Eigen::Matrix3d rz = Eigen::Matrix3d::Zero();
    rz(1, 1) = -1.0;
    rz(2, 2) = 1.0;
    Eigen::Matrix3d x = Eigen::Matrix3d::Zero();
    x(1, 2) = x(2, 1) = 1.0;

    const double chi = env.chi_d();
    Eigen::Matrix3d p3 = Eigen::Matrix3d::Zero();
    p3(0, 0) = env.d_amp;
    p3(1, 1) = env.d_amp - env.chi2 - a * a * chi;
    p3(2, 2) = env.d_amp - env.chi1 + a * a * chi;

    Eigen::Matrix3d h = (0.5 * b.omega0 + et * r.delta3) * rz + r.delta5 * p3 * p3;
    h += 0.5 * u.u1 * (ct * rz - st * x) + u.u2 * (st * rz + ct * x);

    DensityMatrix3 acc = -kI * (h.cast<C>() * rho);

    Eigen::Matrix3d sp = Eigen::Matrix3d::Zero(); // |e><g|
    sp(2, 1) = 1.0;
    half_dissipator(acc, r.delta4, p3, rho);
    half_dissipator(acc, et * (r.delta1 + r.delta2), sp, rho);
    half_dissipator(acc, et * (r.delta1 - r.delta2), sp.transpose(), rho);

    // a_g = |0><g|, a_e = |0><e|
    Eigen::Matrix3d ag = Eigen::Matrix3d::Zero();
    ag(0, 1) = 1.0;
    Eigen::Matrix3d ae = Eigen::Matrix3d::Zero();
    ae(0, 2) = 1.0;
    half_dissipator(acc, r.gamma1, (a * ag + be * ae).transpose(), rho);
    half_dissipator(acc, r.gamma2, a * ag + be * ae, rho);
    half_dissipator(acc, r.gamma3, (a * ae + be * ag).transpose(), rho);
    half_dissipator(acc, r.gamma4, a * ae + be * ag, rho);

    return acc + acc.adjoint();
}

State pack(const DensityMatrix3& rho) {
    State y(18);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            y[2 * (3 * i + j)] = rho(i, j).real();
            y[2 * (3 * i + j) + 1] = rho(i, j).imag();
        }
    }
    return y;
}

DensityMatrix3 unpack(const State& y) {
    DensityMatrix3 rho;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) rho(i, j) = C{y[2 * (3 * i + j)], y[2 * (3 * i + j) + 1]};
    }
    return rho;
}

DensityMatrix3 pure_state(int index) {
    if (index < 0 || index > 2) throw std::out_of_range("pure_state: index must be 0, 1 or 2");
    DensityMatrix3 rho = DensityMatrix3::Zero();
    rho(index, index) = 1.0;
    return rho;
}

DmTrajectory propagate(const DensityMatrix3& rho0, const std::vector<double>& times, const IntegratorConfig& cfg,
                       const RateSource& source, const EigenBasis& basis, const EnvParams& env, ControlInput u) {
    check_times(times);
    DmTrajectory out;
    out.samples.reserve(times.size());
    out.min_eigenvalue = 1.0;
    Integrator integ(cfg);
    const Rhs f = [&](double t, const State& y, State& dy) {
        dy = pack(lindblad_rhs(unpack(y), source.at(t), basis, env, u));
    };
    State y = pack(rho0);
    double t = 0.0;
    for (double target : times) {
        integ.advance(f, t, y, target);
        const DensityMatrix3 rho = unpack(y);
        // a diverged state reports as infinitely wrong rather than vanishing into NaN comparisons
        auto worst = [](double acc, double x) { return std::isnan(x) ? HUGE_VAL : std::max(acc, x); };
        out.max_trace_error = worst(out.max_trace_error, std::abs(rho.trace() - C{1.0, 0.0}));
        out.max_hermiticity_error = worst(out.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        out.min_eigenvalue = std::min(out.min_eigenvalue, lo);
        if (lo < -1e-6) ++out.positivity_warnings;
        out.samples.push_back({target, rho});
    }
    return out;
}

std::array<double, 3> population_rhs(const Populations& p, const RateSet& r, const EigenBasis& b, const EnvParams& env,
                                     Variant variant) {
    const double a2 = b.alpha * b.alpha;
    const double b2 = b.beta * b.beta;
    const double up = eta(b, env) * (r.delta1 + r.delta2);
    const double down = eta(b, env) * (r.delta1 - r.delta2);
    std::array<double, 3> d{};
    d[0] = -r.gamma1 * p.p00 + r.gamma4 * (b2 * p.pgg + a2 * p.pee);
    if (variant == Variant::LindbladConsistent) {
        d[1] = -up * p.pgg + down * p.pee;
        d[2] = up * p.pgg - down * p.pee;
    } else {
        d[1] = down * p.pgg - up * p.pee;
        d[2] = up * p.pee - down * p.pgg;
    }
    d[1] += r.gamma1 * a2 * p.p00 - r.gamma4 * b2 * p.pgg;
    d[2] += r.gamma1 * b2 * p.p00 - r.gamma4 * a2 * p.pee;
    return d;
}

std::vector<PopSample> propagate_populations(const Populations& p0, const std::vector<double>& times,
                                             const IntegratorConfig& cfg, const RateSource& source,
                                             const EigenBasis& basis, const EnvParams& env, Variant variant) {
    check_times(times);
    std::vector<PopSample> out;
    out.reserve(times.size());
    Integrator integ(cfg);
    const Rhs f = [&](double t, const State& y, State& dy) {
        const auto d = population_rhs({y[0], y[1], y[2]}, source.at(t), basis, env, variant);
        dy.resize(3);
        dy << d[0], d[1], d[2];
    };
    State y(3);
    y << p0.p00, p0.pgg, p0.pee;
    double t = 0.0;
    for (double target : times) {
        integ.advance(f, t, y, target);
        out.push_back({target, {y[0], y[1], y[2]}});
    }
    return out;
}

double current(const Populations& p, const EigenBasis& b, const RateSet& r) noexcept {
    return r.gamma4 * (b.beta * b.beta * p.pgg + b.alpha * b.alpha * p.pee);
}

double current(const DensityMatrix3& rho, const EigenBasis& b, const RateSet& r) noexcept {
    return current(Populations{rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real()}, b, r);
}

double stationary_current(const EigenBasis& b, const EnvParams& env, const RateSet& r) {
    const double g1 = r.gamma1;
    const double g4 = r.gamma4;
    if (g1 == 0.0 || g4 == 0.0) return 0.0;
    const double a2 = b.alpha * b.alpha;
    const double b2 = b.beta * b.beta;
    if (a2 == 0.0 || b2 == 0.0) return 0.0;
    const double chi2 = env.chi_d() * env.chi_d();
    const double i1 = g1 * g4 * (a2 / b2 + b2 / a2) + g4 * g4 - chi2 * g4 * r.delta2 * (2.0 * a2 - 1.0);
    const double i2 = chi2 * (g4 * (r.delta1 + 2.0 * r.delta2) + 2.0 * g4 * r.delta1);
    const double den = i1 + i2;
    if (den == 0.0) {
        throw DivisionByZeroError("stationary_current: I1 + I2 = 0");
    }
    return g1 * g4 * (2.0 * b2 * chi2 * r.delta2 + g4) / den;
}

Populations stationary_populations(const EigenBasis& b, const EnvParams& env, const RateSet& r, Variant variant) {
    Eigen::Matrix3d m;
    for (int j = 0; j < 3; ++j) {
        Populations unit;
        (j == 0 ? unit.p00 : j == 1 ? unit.pgg : unit.pee) = 1.0;
        const auto col = population_rhs(unit, r, b, env, variant);
        m(0, j) = col[0];
        m(1, j) = col[1];
        m(2, j) = col[2];
    }
    // replace one balance row with the normalization
    Eigen::Matrix3d a = m;
    a.row(0).setOnes();
    const Eigen::Vector3d rhs(1.0, 0.0, 0.0);
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
    if (!lu.isInvertible()) {
        throw DivisionByZeroError("stationary_populations: stationary state is not unique");
    }
    const Eigen::Vector3d p = lu.solve(rhs);
    return {p[0], p[1], p[2]};
}

double stationary_current_exact(const EigenBasis& b, const EnvParams& env, const RateSet& r, Variant variant) {
    return current(stationary_populations(b, env, r, variant), b, r);
}

} // namespace dqd
