// runner.hpp — Executes an ExperimentConfig and writes its CSV files.

#pragma once

#include "dqd/config.hpp"
#include "dqd/fcs.hpp"
#include "dqd/n_resolved.hpp"

#include <string>
#include <vector>

namespace dqd {

struct RunReport {
    std::vector<std::string> files;
    std::vector<std::string> warnings; // e.g. positivity monitor events
};

// Throws ConfigError (invalid config), NumericalError (integration or
// quadrature failure) or InvariantViolation (conservation broken).
RunReport run_experiment(const ExperimentConfig& cfg);

// Rates for the configured point: long-time values or a table, with the
// configured Gamma overrides applied.
RateSource make_rate_source(const ExperimentConfig& cfg, const EigenBasis& basis,
                            std::vector<RateSet>* table_out = nullptr);

// 0, h, 2h, ..., horizon with `samples` points.
std::vector<double> output_times(double horizon, int samples);

// One counting sub-run of the fig2 preset: counting trajectory and its cumulants.
struct CountingRun {
    NResolvedTrajectory trajectory;
    std::vector<CumulantSet> cumulants;
    std::vector<double> currents;
};

CountingRun counting_run(const ExperimentConfig& cfg, const RateSource& source, const EigenBasis& basis,
                         const std::vector<double>& times);

struct Fig2Case {
    const char* label;
    double gamma1;
    double gamma4;
};

const std::vector<Fig2Case>& fig2_cases();

struct Fig4Case {
    const char* label;
    double eta1;
    double eta2;
};

const std::vector<Fig4Case>& fig4_cases();

// Closed-loop settings for the given config (integrator, variant, gammas, horizon).
ClosedLoopConfig closed_loop_config(const ExperimentConfig& cfg);

} // namespace dqd
