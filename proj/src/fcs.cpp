#include "dqd/fcs.hpp"

#include <cmath>
#include <stdexcept>

namespace dqd {

namespace {

struct Compensated {
    long double sum{0.0L};
    long double comp{0.0L};

    void add(long double x) {
        const long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    long double value() const { return sum + comp; }
};

void fill_ratios(CumulantSet& c) {
    if (c.c1 > kRatioThreshold) {
        c.fano = c.c2 / c.c1;
        c.skewness = c.c3 / c.c1;
        c.sharpness = c.c4 / c.c1;
    }
}

} // namespace

CountingDistribution distribution(const NResolvedState& s, double t) {
    CountingDistribution d;
    d.t = t;
    d.probs.resize(static_cast<std::size_t>(s.n_max()) + 1);
    for (int n = 0; n <= s.n_max(); ++n) d.probs[static_cast<std::size_t>(n)] = s.bin(n);
    return d;
}

CumulantSet cumulants(const CountingDistribution& d) {
    Compensated m0, m1;
    for (std::size_t n = 0; n < d.probs.size(); ++n) {
        const long double p = d.probs[n];
        m0.add(p);
        m1.add(static_cast<long double>(n) * p);
    }
    const long double norm = m0.value();
    if (!(norm > 0.0L)) throw std::invalid_argument("cumulants: distribution has no mass");
    const long double mean = m1.value() / norm;

    Compensated k2, k3, k4;
    for (std::size_t n = 0; n < d.probs.size(); ++n) {
        const long double p = d.probs[n];
        if (p == 0.0L) continue;
        const long double x = static_cast<long double>(n) - mean;
        const long double x2 = x * x;
        k2.add(x2 * p);
        k3.add(x2 * x * p);
        k4.add(x2 * x2 * p);
    }
    const long double mu2 = k2.value() / norm;
    const long double mu3 = k3.value() / norm;
    const long double mu4 = k4.value() / norm;

    CumulantSet c;
    c.c1 = static_cast<double>(mean);
    c.c2 = static_cast<double>(mu2);
    c.c3 = static_cast<double>(mu3);
    c.c4 = static_cast<double>(mu4 - 3.0L * mu2 * mu2);
    fill_ratios(c);
    return c;
}

std::complex<double> cgf(const CountingDistribution& d, double zeta) {
    std::complex<long double> z{0.0L, 0.0L};
    for (std::size_t n = 0; n < d.probs.size(); ++n) {
        const long double ph = static_cast<long double>(n) * zeta;
        z += static_cast<long double>(d.probs[n]) * std::complex<long double>{std::cos(ph), std::sin(ph)};
    }
    const std::complex<long double> l = std::log(z);
    return {static_cast<double>(l.real()), static_cast<double>(l.imag())};
}

long double cgf_real(const CountingDistribution& d, long double s) {
    // ln(1 + sum_n P(n) (e^{ns} - 1)) keeps the small-s digits
    Compensated norm, excess;
    for (std::size_t n = 0; n < d.probs.size(); ++n) {
        const long double p = d.probs[n];
        norm.add(p);
        excess.add(p * std::expm1(static_cast<long double>(n) * s));
    }
    return std::log1p(excess.value() / norm.value());
}

CumulantSet cumulants_by_differences(const CountingDistribution& d, double step) {
    const long double h = step;
    long double k[7];
    for (int j = -3; j <= 3; ++j) k[j + 3] = cgf_real(d, j * h);
    const long double km3 = k[0], km2 = k[1], km1 = k[2], k0 = k[3], kp1 = k[4], kp2 = k[5], kp3 = k[6];
    CumulantSet c;
    c.c1 = static_cast<double>((-kp2 + 8.0L * kp1 - 8.0L * km1 + km2) / (12.0L * h));
    c.c2 = static_cast<double>((-kp2 + 16.0L * kp1 - 30.0L * k0 + 16.0L * km1 - km2) / (12.0L * h * h));
    c.c3 = static_cast<double>((-kp3 + 8.0L * kp2 - 13.0L * kp1 + 13.0L * km1 - 8.0L * km2 + km3) /
                               (8.0L * h * h * h));
    c.c4 = static_cast<double>((-kp3 + 12.0L * kp2 - 39.0L * kp1 + 56.0L * k0 - 39.0L * km1 + 12.0L * km2 - km3) /
                               (6.0L * h * h * h * h));
    fill_ratios(c);
    return c;
}

} // namespace dqd
