#include "dqd/runner.hpp"

#include "dqd/csv.hpp"
#include "dqd/errors.hpp"
#include "dqd/kernels.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace dqd {

namespace {

constexpr double kProbabilityTol = 1e-8;
constexpr double kHermiticityTol = 1e-12;
constexpr double kTopBinTol = 1e-6;

DensityMatrix3 initial_rho(InitialState s) {
    switch (s) {
    case InitialState::Ground: return pure_state(1);
    case InitialState::Excited: return pure_state(2);
    case InitialState::Empty: return pure_state(0);
    }
    return pure_state(1);
}

NResolvedState initial_chain(InitialState s, int n_max) {
    NResolvedState st(n_max);
    switch (s) {
    case InitialState::Ground: st.pgg(0) = 1.0; break;
    case InitialState::Excited: st.pee(0) = 1.0; break;
    case InitialState::Empty: st.p00(0) = 1.0; break;
    }
    return st;
}

Populations initial_pops(InitialState s) {
    switch (s) {
    case InitialState::Ground: return {0.0, 1.0, 0.0};
    case InitialState::Excited: return {0.0, 0.0, 1.0};
    case InitialState::Empty: return {1.0, 0.0, 0.0};
    }
    return {0.0, 1.0, 0.0};
}

struct Context {
    const ExperimentConfig& cfg;
    CsvMeta meta;
    std::filesystem::path dir;
};

std::string out_path(const Context& ctx, const std::string& name) { return (ctx.dir / name).string(); }

void write_cumulants(const Context& ctx, const std::string& path, const std::vector<double>& times, double omega0,
                     const std::vector<CumulantSet>& cs, const std::vector<std::pair<std::string, std::string>>& extra) {
    CsvMeta meta = ctx.meta;
    meta.extra.insert(meta.extra.end(), extra.begin(), extra.end());
    CsvWriter w(path, meta, {"t", "omega0_t", "c1", "fano", "skewness", "sharpness"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        const CumulantSet& c = cs[i];
        w.row(std::vector<std::optional<double>>{times[i], omega0 * times[i], c.c1, c.fano, c.skewness, c.sharpness});
    }
}

void write_trajectory(const Context& ctx, const std::string& path, const DmTrajectory& traj, double omega0,
                      const EigenBasis& basis, const RateSource& source,
                      const std::vector<std::pair<std::string, std::string>>& extra) {
    CsvMeta meta = ctx.meta;
    meta.extra.insert(meta.extra.end(), extra.begin(), extra.end());
    CsvWriter w(path, meta, {"t", "omega0_t", "rho00", "rho_gg", "rho_ee", "re_rho_ge", "im_rho_ge", "current"});
    for (const auto& s : traj.samples) {
        const auto& r = s.rho;
        w.row(std::vector<double>{s.t, omega0 * s.t, r(0, 0).real(), r(1, 1).real(), r(2, 2).real(), r(1, 2).real(),
                                  r(1, 2).imag(), current(r, basis, source.at(s.t))});
    }
}

void write_snapshot(const Context& ctx, const std::string& path, const NResolvedSample& s,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
    CsvMeta meta = ctx.meta;
    meta.extra.insert(meta.extra.end(), extra.begin(), extra.end());
    CsvWriter w(path, meta, {"t", "n", "p00_n", "pgg_n", "pee_n"});
    // trailing bins below 1e-30 are omitted
    int last = 0;
    for (int n = 0; n <= s.state.n_max(); ++n) {
        if (s.state.bin(n) > 1e-30) last = n;
    }
    for (int n = 0; n <= last; ++n) {
        w.row(std::vector<double>{s.t, static_cast<double>(n), s.state.p00(n), s.state.pgg(n), s.state.pee(n)});
    }
}

void write_coefficients(const Context& ctx, const std::string& path, const std::vector<RateSet>& rows) {
    CsvWriter w(path, ctx.meta, {"t", "gamma1", "gamma2", "gamma3", "gamma4", "delta1", "delta2", "delta3", "delta4", "delta5"});
    for (const RateSet& r : rows) {
        w.row(std::vector<double>{r.t, r.gamma1, r.gamma2, r.gamma3, r.gamma4, r.delta1, r.delta2, r.delta3, r.delta4, r.delta5});
    }
}

void write_closed_loop(const Context& ctx, const std::string& path, const std::vector<ClosedLoopSample>& rows,
                       double omega0, const std::vector<std::pair<std::string, std::string>>& extra) {
    CsvMeta meta = ctx.meta;
    meta.extra.insert(meta.extra.end(), extra.begin(), extra.end());
    CsvWriter w(path, meta, {"t", "omega0_t", "current", "error", "u1", "u2", "eps_eff", "omega_eff"});
    for (const auto& s : rows) {
        w.row(std::vector<double>{s.t, omega0 * s.t, s.current, s.error, s.u1, s.u2, s.eps_eff, s.omega_eff});
    }
}

void check_counting(const CountingRun& run, const std::string& label) {
    for (const auto& s : run.trajectory.samples) {
        const double err = std::abs(s.state.total() - 1.0);
        if (!(err <= kProbabilityTol)) {
            std::ostringstream os;
            os << label << ": sum_n P(n) deviates from 1 by " << err << " at t = " << s.t;
            throw InvariantViolation(os.str());
        }
        if (!(s.state.top_bin() < kTopBinTol)) {
            std::ostringstream os;
            os << label << ": top counting bin holds " << s.state.top_bin() << " at t = " << s.t;
            throw InvariantViolation(os.str());
        }
    }
}

void check_density(const DmTrajectory& traj, const std::string& label, RunReport& report) {
    if (!(traj.max_trace_error <= kProbabilityTol)) {
        std::ostringstream os;
        os << label << ": trace drifted by " << traj.max_trace_error;
        throw InvariantViolation(os.str());
    }
    if (!(traj.max_hermiticity_error <= kHermiticityTol)) {
        std::ostringstream os;
        os << label << ": density matrix lost Hermiticity (" << traj.max_hermiticity_error << ")";
        throw InvariantViolation(os.str());
    }
    if (traj.positivity_warnings > 0) {
        std::ostringstream os;
        os << label << ": " << traj.positivity_warnings << " samples with min eigenvalue below -1e-6 (lowest "
           << traj.min_eigenvalue << ")";
        report.warnings.push_back(os.str());
    }
}

ExperimentConfig with_gammas(const ExperimentConfig& cfg, double g1, double g4) {
    ExperimentConfig c = cfg;
    c.rates.gammas.gamma1 = g1;
    c.rates.gammas.gamma4 = g4;
    return c;
}

void run_fig2(const Context& ctx, RunReport& report) {
    const ExperimentConfig& cfg = ctx.cfg;
    const EigenBasis basis = diagonalize(cfg.model);
    const auto times = output_times(cfg.run.horizon, cfg.run.samples);
    const auto& cases = fig2_cases();
    std::vector<RunReport> partial(cases.size());
    run_parallel(cases.size(), [&](std::size_t i) {
        const Fig2Case& fc = cases[i];
        const ExperimentConfig c = with_gammas(cfg, fc.gamma1, fc.gamma4);
        const RateSource source = make_rate_source(c, basis);
        const CountingRun run = counting_run(c, source, basis, times);
        check_counting(run, fc.label);
        const DmTrajectory dm = propagate(initial_rho(c.initial), times, c.integrator, source, basis, c.env);
        check_density(dm, fc.label, partial[i]);
        const std::vector<std::pair<std::string, std::string>> extra = {
            {"series", fc.label}, {"gamma1", format_number(fc.gamma1)}, {"gamma4", format_number(fc.gamma4)}};
        const std::string stem = std::string("fig2_") + fc.label;
        write_cumulants(ctx, out_path(ctx, stem + "_cumulants.csv"), times, basis.omega0, run.cumulants, extra);
        write_trajectory(ctx, out_path(ctx, stem + "_trajectory.csv"), dm, basis.omega0, basis, source, extra);
        write_snapshot(ctx, out_path(ctx, stem + "_snapshot.csv"), run.trajectory.samples.back(), extra);
        partial[i].files = {out_path(ctx, stem + "_cumulants.csv"), out_path(ctx, stem + "_trajectory.csv"),
                            out_path(ctx, stem + "_snapshot.csv")};
    });
    for (auto& p : partial) {
        report.files.insert(report.files.end(), p.files.begin(), p.files.end());
        report.warnings.insert(report.warnings.end(), p.warnings.begin(), p.warnings.end());
    }
}

void run_fig3(const Context& ctx, RunReport& report) {
    const ExperimentConfig& cfg = ctx.cfg;
    std::vector<double> eps(static_cast<std::size_t>(cfg.run.samples));
    for (std::size_t i = 0; i < eps.size(); ++i) {
        eps[i] = -300.0 + 600.0 * static_cast<double>(i) / static_cast<double>(eps.size() - 1);
    }
    struct Series {
        std::string name;
        double chi_d;
        double gamma4;
    };
    const std::vector<Series> series = {{"fig3a_chid_0.1", 0.1, 0.1},
                                        {"fig3a_chid_0.5", 0.5, 0.1},
                                        {"fig3b_gamma4_0.1", 0.5, 0.1},
                                        {"fig3b_gamma4_0.5", 0.5, 0.5}};
    for (const auto& s : series) {
        EnvParams env = cfg.env;
        env.chi1 = env.chi2 - s.chi_d;
        GammaOverrides g = cfg.rates.gammas;
        g.gamma4 = s.gamma4;
        const auto is = stationary_sweep(eps, cfg.model.omega, env, g);
        CsvMeta meta = ctx.meta;
        meta.extra = {{"series", s.name}, {"chi_d", format_number(s.chi_d)}, {"gamma1", format_number(*g.gamma1)},
                      {"gamma4", format_number(s.gamma4)}, {"omega", format_number(cfg.model.omega)}};
        const std::string path = out_path(ctx, s.name + ".csv");
        CsvWriter w(path, meta, {"epsilon", "omega0", "current"});
        for (std::size_t i = 0; i < eps.size(); ++i) {
            w.row(std::vector<double>{eps[i], std::hypot(eps[i], 2.0 * cfg.model.omega), is[i]});
        }
        report.files.push_back(path);
    }
}

void run_fig4(const Context& ctx, RunReport& report) {
    const ExperimentConfig& cfg = ctx.cfg;
    const EigenBasis basis = diagonalize(cfg.model);
    const auto& cases = fig4_cases();
    std::vector<std::string> files(cases.size());
    run_parallel(cases.size(), [&](std::size_t i) {
        ControlLaw law = cfg.control;
        law.eta1 = cases[i].eta1;
        law.eta2 = cases[i].eta2;
        const auto rows = closed_loop(cfg.model, cfg.env, law, closed_loop_config(cfg));
        const std::string path = out_path(ctx, std::string("fig4_") + cases[i].label + "_closed_loop.csv");
        write_closed_loop(ctx, path, rows, basis.omega0,
                          {{"series", cases[i].label}, {"eta1", format_number(law.eta1)}, {"eta2", format_number(law.eta2)},
                           {"i_target", format_number(law.i_target)}, {"k", format_number(law.k)}});
        files[i] = path;
    });
    report.files.insert(report.files.end(), files.begin(), files.end());
}

void run_custom(const Context& ctx, RunReport& report) {
    const ExperimentConfig& cfg = ctx.cfg;
    const EigenBasis basis = diagonalize(cfg.model);
    const auto times = output_times(cfg.run.horizon, cfg.run.samples);
    std::vector<RateSet> table;
    const RateSource source = make_rate_source(cfg, basis, &table);
    if (table.empty()) table.push_back(source.at(0.0));
    write_coefficients(ctx, out_path(ctx, "custom_coefficients.csv"), table);
    report.files.push_back(out_path(ctx, "custom_coefficients.csv"));

    const CountingRun run = counting_run(cfg, source, basis, times);
    check_counting(run, "custom");
    write_cumulants(ctx, out_path(ctx, "custom_cumulants.csv"), times, basis.omega0, run.cumulants, {});
    write_snapshot(ctx, out_path(ctx, "custom_snapshot.csv"), run.trajectory.samples.back(), {});
    const DmTrajectory dm = propagate(initial_rho(cfg.initial), times, cfg.integrator, source, basis, cfg.env);
    check_density(dm, "custom", report);
    write_trajectory(ctx, out_path(ctx, "custom_trajectory.csv"), dm, basis.omega0, basis, source, {});
    report.files.insert(report.files.end(), {out_path(ctx, "custom_cumulants.csv"), out_path(ctx, "custom_snapshot.csv"),
                                             out_path(ctx, "custom_trajectory.csv")});
    if (cfg.control_enabled) {
        const auto rows = closed_loop(cfg.model, cfg.env, cfg.control, closed_loop_config(cfg));
        write_closed_loop(ctx, out_path(ctx, "custom_closed_loop.csv"), rows, basis.omega0, {});
        report.files.push_back(out_path(ctx, "custom_closed_loop.csv"));
    }
}

} // namespace

const std::vector<Fig2Case>& fig2_cases() {
    static const std::vector<Fig2Case> cases = {{"g1_0.1_g4_0", 0.1, 0.0},
                                                {"g1_0.1_g4_0.1", 0.1, 0.1},
                                                {"g1_0.5_g4_0.1", 0.5, 0.1},
                                                {"g1_0.1_g4_0.5", 0.1, 0.5}};
    return cases;
}

const std::vector<Fig4Case>& fig4_cases() {
    static const std::vector<Fig4Case> cases = {{"eta_1_1", 1.0, 1.0}, {"eta_0_2", 0.0, 2.0}, {"eta_2_2", 2.0, 2.0}};
    return cases;
}

std::vector<double> output_times(double horizon, int samples) {
    if (samples < 2 || !(horizon > 0.0)) throw std::invalid_argument("output_times: need horizon > 0 and samples >= 2");
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) t[static_cast<std::size_t>(i)] = horizon * i / (samples - 1);
    t.back() = horizon;
    return t;
}

RateSource make_rate_source(const ExperimentConfig& cfg, const EigenBasis& basis, std::vector<RateSet>* table_out) {
    if (cfg.rates.mode == RateMode::Markovian) {
        RateSet r = markovian_rates(basis, cfg.env);
        cfg.rates.gammas.apply(r);
        return RateSource::constant(r);
    }
    const double dt = table_spacing(basis, cfg.env);
    const auto times = table_times(cfg.rates.table_horizon, dt);
    std::vector<RateSet> table = tabulate_rates(basis, cfg.env, cfg.quad, times);
    for (auto& r : table) cfg.rates.gammas.apply(r);
    RateSet tail;
    if (cfg.env.kbt == 0.0) {
        tail = markovian_rates(basis, cfg.env);
        cfg.rates.gammas.apply(tail);
    } else {
        tail = table.back();
    }
    if (table_out) *table_out = table;
    return RateSource::tabulated(std::move(table), dt, tail);
}

CountingRun counting_run(const ExperimentConfig& cfg, const RateSource& source, const EigenBasis& basis,
                         const std::vector<double>& times) {
    CountingRun run;
    run.trajectory = propagate_n_resolved(initial_chain(cfg.initial, cfg.n_max), times, cfg.integrator, source, basis,
                                          cfg.env, cfg.variant);
    run.cumulants.reserve(times.size());
    run.currents.reserve(times.size());
    for (const auto& s : run.trajectory.samples) {
        run.cumulants.push_back(cumulants(distribution(s.state, s.t)));
        run.currents.push_back(current(s.state, basis, source.at(s.t)));
    }
    return run;
}

ClosedLoopConfig closed_loop_config(const ExperimentConfig& cfg) {
    ClosedLoopConfig c;
    c.horizon = cfg.run.horizon;
    c.integrator = cfg.integrator;
    c.variant = cfg.variant;
    c.gammas = cfg.rates.gammas;
    c.initial = initial_pops(cfg.initial);
    const EigenBasis b = diagonalize(cfg.model);
    const double dt = cfg.control.sample_dt > 0.0 ? cfg.control.sample_dt : 0.1 / b.omega0;
    const long n = std::lround(std::floor(cfg.run.horizon / dt + 1e-9));
    c.record_every = static_cast<int>(std::max<long>(1, n / std::max(1, cfg.run.samples - 1)));
    return c;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
    const auto diags = validate(cfg);
    if (!diags.empty()) {
        std::string msg;
        for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + d;
        throw ConfigError(msg);
    }
    std::filesystem::create_directories(cfg.run.output_dir);
    ExperimentConfig hashed = cfg;
    hashed.run.output_dir.clear();
    Context ctx{cfg, CsvMeta{fnv1a_hex(to_text(hashed)), to_string(cfg.variant), to_string(cfg.preset), {}},
                std::filesystem::path(cfg.run.output_dir)};
    RunReport report;
    switch (cfg.preset) {
    case Preset::Fig2Cumulants: run_fig2(ctx, report); break;
    case Preset::Fig3StationarySweep: run_fig3(ctx, report); break;
    case Preset::Fig4Feedback: run_fig4(ctx, report); break;
    case Preset::Custom: run_custom(ctx, report); break;
    }
    return report;
}

} // namespace dqd
