// quadrature.hpp — Composite Gauss-Legendre / trapezoid rules over reservoir energy bands.
//
// Every band integral in the library has an integrand that oscillates at a
// known angular rate (the evaluation time t). Panels are sized so each covers
// at most half an oscillation, with a floor set by QuadratureConfig::n_nodes.
// The error estimate is the difference to the same rule on half as many panels.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dqd {

enum class QuadScheme { Trapezoid, GaussLegendre };

struct QuadratureConfig {
    int n_nodes{256}; // minimum node count per dimension
    QuadScheme scheme{QuadScheme::GaussLegendre};
    double band_cutoff{2000.0};
    double tolerance{1e-9}; // relative to max(|I|, integral of |f|)
};

std::vector<std::string> check(const QuadratureConfig& q);

inline constexpr int kNodesPerPanel = 16;

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

// Cached; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int order);

struct Interval {
    double lo;
    double hi;
};

// Flattened nodes and weights of a composite rule.
struct NodeSet {
    std::vector<double> x;
    std::vector<double> w;
};

// Panels needed on a piece of width `span` for an integrand oscillating at `rate`.
int panel_count(double span, double rate, const QuadratureConfig& cfg, double total_span);

NodeSet composite_nodes(std::span<const Interval> pieces, double rate, const QuadratureConfig& cfg,
                        int refine = 1);

template <std::size_t N>
struct QuadResult {
    std::array<double, N> value{};
    std::array<double, N> error{};
    std::array<double, N> magnitude{}; // integral of |f|, the scale for the tolerance test

    bool within(double tol) const {
        for (std::size_t k = 0; k < N; ++k) {
            const double scale = std::max(std::abs(value[k]), magnitude[k]);
            if (error[k] > tol * scale && error[k] > 1e-300) return false;
        }
        return true;
    }
};

namespace detail {

template <std::size_t N, class F>
void accumulate(const NodeSet& nodes, F& f, std::array<double, N>& sum, std::array<double, N>* mag) {
    // Neumaier-compensated so that results do not depend on node count in the last bits
    std::array<double, N> comp{};
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
        const std::array<double, N> v = f(nodes.x[i]);
        for (std::size_t k = 0; k < N; ++k) {
            const double term = nodes.w[i] * v[k];
            const double s = sum[k] + term;
            if (std::abs(sum[k]) >= std::abs(term)) {
                comp[k] += (sum[k] - s) + term;
            } else {
                comp[k] += (term - s) + sum[k];
            }
            sum[k] = s;
            if (mag) (*mag)[k] += std::abs(term);
        }
    }
    for (std::size_t k = 0; k < N; ++k) sum[k] += comp[k];
}

} // namespace detail

// Integrates a vector-valued f over the union of `pieces`. Breakpoints between
// pieces should sit on kinks or jumps of f.
template <std::size_t N, class F>
QuadResult<N> integrate(F&& f, std::span<const Interval> pieces, double rate,
                        const QuadratureConfig& cfg, int refine = 1) {
    QuadResult<N> r;
    const NodeSet fine = composite_nodes(pieces, rate, cfg, 2 * refine);
    const NodeSet coarse = composite_nodes(pieces, rate, cfg, refine);
    detail::accumulate<N>(fine, f, r.value, &r.magnitude);
    std::array<double, N> c{};
    detail::accumulate<N>(coarse, f, c, nullptr);
    for (std::size_t k = 0; k < N; ++k) r.error[k] = std::abs(r.value[k] - c[k]);
    return r;
}

// Tensor-product version over pieces_x x pieces_y.
template <std::size_t N, class F>
QuadResult<N> integrate_2d(F&& f, std::span<const Interval> pieces_x, std::span<const Interval> pieces_y,
                           double rate, const QuadratureConfig& cfg, int refine = 1) {
    QuadResult<N> r;
    auto run = [&](int level, std::array<double, N>& out, std::array<double, N>* mag) {
        const NodeSet nx = composite_nodes(pieces_x, rate, cfg, level);
        const NodeSet ny = composite_nodes(pieces_y, rate, cfg, level);
        for (std::size_t i = 0; i < nx.x.size(); ++i) {
            const double xi = nx.x[i];
            auto row = [&](double y) { return f(xi, y); };
            std::array<double, N> inner{};
            std::array<double, N> inner_mag{};
            detail::accumulate<N>(ny, row, inner, mag ? &inner_mag : nullptr);
            for (std::size_t k = 0; k < N; ++k) {
                out[k] += nx.w[i] * inner[k];
                if (mag) (*mag)[k] += std::abs(nx.w[i]) * inner_mag[k];
            }
        }
    };
    run(2 * refine, r.value, &r.magnitude);
    std::array<double, N> c{};
    run(refine, c, nullptr);
    for (std::size_t k = 0; k < N; ++k) r.error[k] = std::abs(r.value[k] - c[k]);
    return r;
}

} // namespace dqd
