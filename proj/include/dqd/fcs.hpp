// fcs.hpp — Counting distribution P(n, t), its generating function and first four cumulants.

#pragma once

#include "dqd/n_resolved.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace dqd {

struct CountingDistribution {
    double t{0.0};
    std::vector<double> probs; // P(n), n = 0..n_max
};

// Fano, skewness and sharpness are reported only when C1 exceeds this.
inline constexpr double kRatioThreshold = 1e-12;

struct CumulantSet {
    double c1{0.0}, c2{0.0}, c3{0.0}, c4{0.0};
    std::optional<double> fano;      // C2 / C1
    std::optional<double> skewness;  // C3 / C1
    std::optional<double> sharpness; // C4 / C1
};

CountingDistribution distribution(const NResolvedState& s, double t = 0.0);

// Central moments are accumulated in long double about the mean, then combined
// into cumulants; this is algebraically the raw-moment formula without its
// cancellation.
CumulantSet cumulants(const CountingDistribution& d);

// ln sum_n P(n) exp(i n zeta), principal branch.
std::complex<double> cgf(const CountingDistribution& d, double zeta);

// ln sum_n P(n) exp(n s): the generating function continued to imaginary zeta
// (s = i zeta), where its derivatives are the cumulants themselves.
long double cgf_real(const CountingDistribution& d, long double s);

// Cumulants from 4th-order central differences of cgf_real at s = 0.
CumulantSet cumulants_by_differences(const CountingDistribution& d, double step = 1e-3);

} // namespace dqd
