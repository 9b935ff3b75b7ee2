// coefficients.hpp — Time-dependent decay coefficients of the DQD master equation.
//
// The reservoir mode sums are replaced by flat-band continuum integrals: the
// QPC source/drain energies run over [-W, W] about their chemical potentials
// with weight g^2 (EnvParams::dos_product), the lead energies over
// [mu - W, mu + W] with weight |Omega|^2 g (EnvParams::lead_coupling_*).
// The time integrals are done in closed form; only the energy integrals are
// numerical.

#pragma once

#include "dqd/model.hpp"
#include "dqd/quadrature.hpp"

#include <complex>
#include <limits>

namespace dqd {

struct RateSet {
    double t{0.0};
    double gamma1{0.0}; // left lead -> dot
    double gamma2{0.0}; // dot -> left lead
    double gamma3{0.0}; // right lead -> dot
    double gamma4{0.0}; // dot -> right lead (counted)
    double delta1{0.0};
    double delta2{0.0};
    double delta3{0.0};
    double delta4{0.0};
    double delta5{0.0};
};

struct FermiLambda {
    double lambda1{0.0};
    double lambda2{0.0};
};

struct DeltaCoeffs {
    double delta1{0.0};
    double delta2{0.0};
    double delta3{0.0};
    double delta4{0.0};
    double delta5{0.0};
};

struct GammaRates {
    double gamma1{0.0};
    double gamma2{0.0};
    double gamma3{0.0};
    double gamma4{0.0};
};

// The eight lead correlation integrals before they are paired into Gamma_1..4.
struct AppendixRates {
    std::complex<double> l_minus, l_plus, lp_minus, lp_plus;
    std::complex<double> r_minus, r_plus, rp_minus, rp_plus;
};

// int_0^t cos(y s) ds = sin(y t)/y, and int_0^t sin(y s) ds = (1 - cos(y t))/y.
// Below |y| < 1e-9 W the limit values t and 0 are returned.
double sin_kernel(double y, double t, double band_cutoff) noexcept;
double cos_kernel(double y, double t, double band_cutoff) noexcept;

// tanh(x / 2kT), or sgn(x) at kT = 0.
double thermal_tanh(double x, double kbt) noexcept;

// <c^dag c> for a level at `energy`; 1/2 at energy = mu for every temperature.
double fermi_dirac(double energy, double mu, double kbt) noexcept;

FermiLambda fermi_lambda(double omega_m, double omega_n, double kbt) noexcept;

// Production path: the reduced triangular-weight integral at kT = 0, the full
// double integral otherwise. Throws QuadratureError when the estimated error
// exceeds quad.tolerance.
DeltaCoeffs delta_coeffs(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                         double t);

// Zero temperature only: the two nonzero quadrants collapse onto u = w_m - w_n
// with weight min(u, 2W - u).
DeltaCoeffs delta_coeffs_reduced(const EigenBasis& basis, const EnvParams& env,
                                 const QuadratureConfig& quad, double t);

// Tensor-product quadrature over (w_m, w_n) in [-W, W]^2; `refine` multiplies
// the panel count.
DeltaCoeffs delta_coeffs_2d(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                            double t, int refine = 1);

GammaRates gamma_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad, double t);
GammaRates gamma_rates(const EigenBasis& basis, const EnvParams& env, double t);

AppendixRates appendix_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad,
                             double t);

RateSet evaluate_rates(const EigenBasis& basis, const EnvParams& env, const QuadratureConfig& quad, double t);

// t -> infinity limits in closed form. The Delta limits are derived for kT = 0;
// a finite temperature throws std::domain_error.
RateSet markovian_rates(const EigenBasis& basis, const EnvParams& env);

QuadratureConfig quadrature_for(const EnvParams& env);

} // namespace dqd
