#include "dqd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dqd {

std::vector<std::string> check(const QuadratureConfig& q) {
    std::vector<std::string> out;
    if (q.n_nodes < 16) out.emplace_back("quadrature.n_nodes must be >= 16");
    if (!(q.band_cutoff > 0.0)) out.emplace_back("quadrature band_cutoff must be > 0");
    if (!(q.tolerance > 0.0)) out.emplace_back("quadrature.tolerance must be > 0");
    return out;
}

namespace {

GaussLegendreRule build_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            // one more evaluation at the converged root for the weight
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(order));
    return *slot;
}

int panel_count(double span, double rate, const QuadratureConfig& cfg, double total_span) {
    if (!(span > 0.0)) return 0;
    // floor: n_nodes spread over the whole domain in proportion to this piece
    const double floor_panels = std::ceil(static_cast<double>(cfg.n_nodes) / kNodesPerPanel *
                                          (total_span > 0.0 ? span / total_span : 1.0));
    const double osc_panels = std::ceil(span * std::abs(rate) / std::numbers::pi);
    const double p = std::max({1.0, floor_panels, osc_panels});
    if (p > 5.0e7) throw std::length_error("panel_count: integrand too oscillatory for the band");
    return static_cast<int>(p);
}

NodeSet composite_nodes(std::span<const Interval> pieces, double rate, const QuadratureConfig& cfg,
                        int refine) {
    NodeSet out;
    double total = 0.0;
    for (const auto& p : pieces) total += std::max(0.0, p.hi - p.lo);
    const GaussLegendreRule& gl = gauss_legendre(kNodesPerPanel);
    for (const auto& piece : pieces) {
        const double span = piece.hi - piece.lo;
        if (!(span > 0.0)) continue;
        const int base = panel_count(span, rate, cfg, total);
        // refine = 2 is the fine level; refine = 1 halves the panel count
        const int panels = std::max(1, (base * refine + 1) / 2);
        const double h = span / panels;
        if (cfg.scheme == QuadScheme::GaussLegendre) {
            for (int p = 0; p < panels; ++p) {
                const double mid = piece.lo + (p + 0.5) * h;
                for (int k = 0; k < kNodesPerPanel; ++k) {
                    out.x.push_back(mid + 0.5 * h * gl.nodes[static_cast<std::size_t>(k)]);
                    out.w.push_back(0.5 * h * gl.weights[static_cast<std::size_t>(k)]);
                }
            }
        } else {
            const int n = panels * kNodesPerPanel;
            const double dx = span / n;
            for (int i = 0; i <= n; ++i) {
                out.x.push_back(piece.lo + i * dx);
                out.w.push_back((i == 0 || i == n) ? 0.5 * dx : dx);
            }
        }
    }
    return out;
}

} // namespace dqd
