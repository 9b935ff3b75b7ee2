// rate_source.hpp — Supplies RateSet values to the propagators: constant or tabulated in time.

#pragma once

#include "dqd/coefficients.hpp"

#include <optional>
#include <vector>

namespace dqd {

// Preset Gamma values that replace the computed lead rates.
struct GammaOverrides {
    std::optional<double> gamma1, gamma2, gamma3, gamma4;

    bool any() const noexcept { return gamma1 || gamma2 || gamma3 || gamma4; }
    void apply(RateSet& r) const noexcept;
};

class RateSource {
public:
    // Same rates at every t.
    static RateSource constant(const RateSet& rates);

    // table[i] holds the rates at t = i * dt; beyond the last entry `tail` is used.
    static RateSource tabulated(std::vector<RateSet> table, double dt, const RateSet& tail);

    // Linear interpolation inside the table.
    RateSet at(double t) const;

    bool is_constant() const noexcept { return table_.empty(); }
    double spacing() const noexcept { return dt_; }
    const std::vector<RateSet>& table() const noexcept { return table_; }
    const RateSet& tail() const noexcept { return tail_; }

private:
    std::vector<RateSet> table_;
    double dt_{0.0};
    RateSet tail_;
};

// Grid spacing min(1/omega0, 1/eV_QPC) / 20 (the eV_QPC term is skipped at zero bias).
double table_spacing(const EigenBasis& basis, const EnvParams& env);

// Uniform grid 0, dt, ..., covering [0, horizon].
std::vector<double> table_times(double horizon, double dt);

} // namespace dqd
