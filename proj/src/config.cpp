#include "dqd/config.hpp"

#include "dqd/csv.hpp"
#include "dqd/errors.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dqd {

std::string to_string(Preset p) {
    switch (p) {
    case Preset::Fig2Cumulants: return "fig2-cumulants";
    case Preset::Fig3StationarySweep: return "fig3-stationary-sweep";
    case Preset::Fig4Feedback: return "fig4-feedback";
    case Preset::Custom: return "custom";
    }
    return "custom";
}

std::optional<Preset> parse_preset(std::string_view name) {
    for (Preset p : {Preset::Fig2Cumulants, Preset::Fig3StationarySweep, Preset::Fig4Feedback, Preset::Custom}) {
        if (name == to_string(p)) return p;
    }
    return std::nullopt;
}

ExperimentConfig preset_config(Preset p) {
    ExperimentConfig c;
    c.preset = p;
    if (p == Preset::Custom) return c;
    // the QPC and DQD point shared by all three figures
    c.model = {108.0, 32.0};
    c.env.chi1 = 0.5;
    c.env.chi2 = 1.0;
    c.env.ev_qpc = 400.0;
    c.env.kbt = 0.0;
    c.rates.mode = RateMode::Markovian;
    // the counting chain has no lead back-flow channels; keep the full propagator in step with it
    c.rates.gammas.gamma2 = 0.0;
    c.rates.gammas.gamma3 = 0.0;
    switch (p) {
    case Preset::Fig2Cumulants:
        c.run.horizon = 100.0;
        c.run.samples = 1001;
        break;
    case Preset::Fig3StationarySweep:
        c.rates.gammas.gamma1 = 0.1;
        c.rates.gammas.gamma4 = 0.1;
        c.run.samples = 601;
        break;
    case Preset::Fig4Feedback:
        // Gamma chosen so the uncontrolled current sits 2e-3 below the target
        c.rates.gammas.gamma1 = kFig4Gamma;
        c.rates.gammas.gamma4 = kFig4Gamma;
        c.control_enabled = true;
        c.control.i_target = 0.1;
        c.control.k = 5e4;
        c.run.horizon = 20.0;
        c.run.samples = 2001;
        break;
    case Preset::Custom:
        break;
    }
    return c;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

class Parser {
public:
    Parser(ExperimentConfig& cfg, std::vector<std::string>& diags, std::string origin)
        : cfg_(cfg), diags_(diags), origin_(std::move(origin)) {
        register_keys();
    }

    void line(int lineno, std::string_view raw) {
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) return;
        lineno_ = lineno;
        if (s.front() == '[') {
            if (s.back() != ']') {
                error("unterminated section header '" + s + "'");
                return;
            }
            section_ = trim(std::string_view(s).substr(1, s.size() - 2));
            if (!sections_.count(section_)) error("unknown section [" + section_ + "]");
            return;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            error("expected 'key = value', got '" + s + "'");
            return;
        }
        const std::string key = trim(std::string_view(s).substr(0, eq));
        const std::string value = trim(std::string_view(s).substr(eq + 1));
        const std::string full = section_.empty() ? key : section_ + "." + key;
        if (value.empty()) {
            error(full + " has an empty value");
            return;
        }
        const auto it = setters_.find(full);
        if (it == setters_.end()) {
            error("unknown key " + full);
            return;
        }
        if (seen_.count(full)) error(full + " given twice");
        seen_.insert(full);
        seen_lines_[full] = lineno;
        it->second(full, value);
    }

    const std::set<std::string>& seen() const { return seen_; }
    int line_of(const std::string& key) const {
        const auto it = seen_lines_.find(key);
        return it == seen_lines_.end() ? 0 : it->second;
    }

private:
    void error(const std::string& msg) {
        diags_.push_back(origin_ + ":" + std::to_string(lineno_) + ": " + msg);
    }

    void number(const std::string& key, const std::string& v, double& out) {
        double x = 0.0;
        const char* first = v.data();
        const char* last = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(first, last, x);
        if (ec != std::errc() || ptr != last) {
            error(key + ": '" + v + "' is not a number");
            return;
        }
        out = x;
    }

    void integer(const std::string& key, const std::string& v, int& out) {
        int x = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            error(key + ": '" + v + "' is not an integer");
            return;
        }
        out = x;
    }

    void boolean(const std::string& key, const std::string& v, bool& out) {
        if (v == "true" || v == "1" || v == "yes") {
            out = true;
        } else if (v == "false" || v == "0" || v == "no") {
            out = false;
        } else {
            error(key + ": '" + v + "' is not a boolean");
        }
    }

    void num(const std::string& key, double& ref) {
        setters_[key] = [this, &ref](const std::string& k, const std::string& v) { number(k, v, ref); };
    }

    void opt(const std::string& key, std::optional<double>& ref) {
        setters_[key] = [this, &ref](const std::string& k, const std::string& v) {
            double x = 0.0;
            number(k, v, x);
            ref = x;
        };
    }

    void register_keys() {
        sections_ = {"", "model", "environment", "rates", "quadrature", "integrator", "dynamics", "control", "run"};
        setters_["preset"] = [this](const std::string& k, const std::string& v) {
            const auto p = parse_preset(v);
            if (!p) {
                error(k + ": unknown preset '" + v + "'");
                return;
            }
            cfg_.preset = *p;
        };
        num("model.epsilon", cfg_.model.epsilon);
        num("model.omega", cfg_.model.omega);

        num("environment.chi1", cfg_.env.chi1);
        num("environment.chi2", cfg_.env.chi2);
        num("environment.d_amp", cfg_.env.d_amp);
        num("environment.ev_qpc", cfg_.env.ev_qpc);
        num("environment.mu_l", cfg_.env.mu_l);
        num("environment.mu_r", cfg_.env.mu_r);
        num("environment.kbt", cfg_.env.kbt);
        num("environment.band_cutoff", cfg_.env.band_cutoff);
        num("environment.dos_product", cfg_.env.dos_product);
        num("environment.lead_coupling_l", cfg_.env.lead_coupling_l);
        num("environment.lead_coupling_r", cfg_.env.lead_coupling_r);

        setters_["rates.mode"] = [this](const std::string& k, const std::string& v) {
            if (v == "markovian") {
                cfg_.rates.mode = RateMode::Markovian;
            } else if (v == "tabulated") {
                cfg_.rates.mode = RateMode::Tabulated;
            } else {
                error(k + ": expected markovian or tabulated, got '" + v + "'");
            }
        };
        opt("rates.gamma1", cfg_.rates.gammas.gamma1);
        opt("rates.gamma2", cfg_.rates.gammas.gamma2);
        opt("rates.gamma3", cfg_.rates.gammas.gamma3);
        opt("rates.gamma4", cfg_.rates.gammas.gamma4);
        num("rates.table_horizon", cfg_.rates.table_horizon);

        setters_["quadrature.n_nodes"] = [this](const std::string& k, const std::string& v) {
            integer(k, v, cfg_.quad.n_nodes);
        };
        setters_["quadrature.scheme"] = [this](const std::string& k, const std::string& v) {
            if (v == "gauss-legendre") {
                cfg_.quad.scheme = QuadScheme::GaussLegendre;
            } else if (v == "trapezoid") {
                cfg_.quad.scheme = QuadScheme::Trapezoid;
            } else {
                error(k + ": expected gauss-legendre or trapezoid, got '" + v + "'");
            }
        };
        num("quadrature.tolerance", cfg_.quad.tolerance);

        setters_["integrator.method"] = [this](const std::string& k, const std::string& v) {
            if (v == "rk45-adaptive") {
                cfg_.integrator.method = Method::Rk45Adaptive;
            } else if (v == "rk4-fixed") {
                cfg_.integrator.method = Method::Rk4Fixed;
            } else {
                error(k + ": expected rk45-adaptive or rk4-fixed, got '" + v + "'");
            }
        };
        num("integrator.rel_tol", cfg_.integrator.rel_tol);
        num("integrator.abs_tol", cfg_.integrator.abs_tol);
        num("integrator.max_step", cfg_.integrator.max_step);

        setters_["dynamics.variant"] = [this](const std::string& k, const std::string& v) {
            try {
                cfg_.variant = parse_variant(v);
            } catch (const ConfigError& e) {
                error(k + ": " + e.what());
            }
        };
        setters_["dynamics.n_max"] = [this](const std::string& k, const std::string& v) {
            integer(k, v, cfg_.n_max);
        };
        setters_["dynamics.initial"] = [this](const std::string& k, const std::string& v) {
            if (v == "ground") {
                cfg_.initial = InitialState::Ground;
            } else if (v == "excited") {
                cfg_.initial = InitialState::Excited;
            } else if (v == "empty") {
                cfg_.initial = InitialState::Empty;
            } else {
                error(k + ": expected ground, excited or empty, got '" + v + "'");
            }
        };

        setters_["control.enabled"] = [this](const std::string& k, const std::string& v) {
            boolean(k, v, cfg_.control_enabled);
        };
        num("control.i_target", cfg_.control.i_target);
        num("control.eta1", cfg_.control.eta1);
        num("control.eta2", cfg_.control.eta2);
        num("control.k", cfg_.control.k);
        num("control.sample_dt", cfg_.control.sample_dt);
        setters_["control.freeze_rates"] = [this](const std::string& k, const std::string& v) {
            boolean(k, v, cfg_.control.freeze_rates);
        };
        setters_["control.zero_delay"] = [this](const std::string& k, const std::string& v) {
            boolean(k, v, cfg_.control.zero_delay);
        };
        num("control.noise_sigma", cfg_.control.noise_sigma);
        setters_["control.noise_seed"] = [this](const std::string& k, const std::string& v) {
            int s = 0;
            integer(k, v, s);
            cfg_.control.noise_seed = static_cast<std::uint64_t>(s);
        };

        num("run.horizon", cfg_.run.horizon);
        setters_["run.samples"] = [this](const std::string& k, const std::string& v) {
            integer(k, v, cfg_.run.samples);
        };
        setters_["run.output_dir"] = [this](const std::string&, const std::string& v) { cfg_.run.output_dir = v; };
    }

    ExperimentConfig& cfg_;
    std::vector<std::string>& diags_;
    std::string origin_;
    int lineno_{0};
    std::string section_;
    std::set<std::string> sections_;
    std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters_;
    std::set<std::string> seen_;
    std::map<std::string, int> seen_lines_;
};

// Keys a named preset owns.
bool preset_owned(const std::string& key) {
    static const std::set<std::string> owned = {"rates.gamma1", "rates.gamma2", "rates.gamma3", "rates.gamma4",
                                                "rates.mode",   "control.i_target", "control.k",
                                                "control.eta1", "control.eta2", "control.enabled"};
    return key.rfind("model.", 0) == 0 || key.rfind("environment.", 0) == 0 || owned.count(key) > 0;
}

const std::vector<std::string>& custom_required() {
    static const std::vector<std::string> keys = {
        "model.epsilon",         "model.omega",           "environment.chi1",       "environment.chi2",
        "environment.d_amp",     "environment.ev_qpc",    "environment.mu_l",       "environment.mu_r",
        "environment.kbt",       "environment.band_cutoff", "environment.dos_product",
        "environment.lead_coupling_l", "environment.lead_coupling_r", "rates.mode", "run.horizon"};
    return keys;
}

} // namespace

ParseResult parse_config_text(std::string_view text, std::string_view origin) {
    // Pass 1 finds the preset so pass 2 can start from its defaults.
    ParseResult probe;
    {
        std::vector<std::string> ignored;
        Parser p(probe.config, ignored, std::string(origin));
        std::istringstream in{std::string(text)};
        std::string line;
        int n = 0;
        bool top = true;
        while (std::getline(in, line)) {
            ++n;
            const std::string s = trim(std::string_view(line).substr(0, line.find('#')));
            if (!s.empty() && s.front() == '[') top = false;
            if (top && s.rfind("preset", 0) == 0) p.line(n, line);
        }
    }
    ParseResult r;
    r.config = preset_config(probe.config.preset);
    Parser p(r.config, r.diagnostics, std::string(origin));
    std::istringstream in{std::string(text)};
    std::string line;
    int n = 0;
    while (std::getline(in, line)) p.line(++n, line);

    const std::string org(origin);
    if (r.config.preset == Preset::Custom) {
        for (const auto& key : custom_required()) {
            if (!p.seen().count(key)) r.diagnostics.push_back(org + ": missing required field " + key);
        }
    } else {
        for (const auto& key : p.seen()) {
            if (preset_owned(key)) {
                r.diagnostics.push_back(org + ":" + std::to_string(p.line_of(key)) + ": " + key +
                                        " is fixed by preset " + to_string(r.config.preset) +
                                        " (use preset = custom to change it)");
            }
        }
    }
    r.config.quad.band_cutoff = r.config.env.band_cutoff;
    return r;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
    std::vector<std::string> out;
    auto append = [&out](std::vector<std::string> v) { out.insert(out.end(), v.begin(), v.end()); };
    append(check(cfg.model));
    append(check(cfg.env));
    append(check(cfg.quad));
    append(check(cfg.integrator));
    if (cfg.control_enabled || cfg.preset == Preset::Fig4Feedback) append(check(cfg.control));
    for (auto [name, g] : {std::pair{"rates.gamma1", cfg.rates.gammas.gamma1}, std::pair{"rates.gamma2", cfg.rates.gammas.gamma2},
                           std::pair{"rates.gamma3", cfg.rates.gammas.gamma3}, std::pair{"rates.gamma4", cfg.rates.gammas.gamma4}}) {
        if (g && !(*g >= 0.0)) out.push_back(std::string(name) + " must be >= 0");
    }
    if (cfg.rates.mode == RateMode::Tabulated && !(cfg.rates.table_horizon > 0.0)) {
        out.emplace_back("rates.table_horizon must be > 0");
    }
    if (cfg.rates.mode == RateMode::Markovian && cfg.env.kbt != 0.0) {
        out.emplace_back("rates.mode = markovian needs environment.kbt = 0 (long-time Delta limits are zero-temperature)");
    }
    if (cfg.n_max < 1) out.emplace_back("dynamics.n_max must be >= 1");
    if (!(cfg.run.horizon > 0.0)) out.emplace_back("run.horizon must be > 0");
    if (cfg.run.samples < 2) out.emplace_back("run.samples must be >= 2");
    if (cfg.run.output_dir.empty()) out.emplace_back("run.output_dir must not be empty");
    return out;
}

ExperimentConfig load_config_text(std::string_view text, std::string_view origin) {
    ParseResult r = parse_config_text(text, origin);
    auto diags = r.diagnostics;
    for (auto& d : validate(r.config)) diags.push_back(std::string(origin) + ": " + d);
    if (!diags.empty()) {
        std::string msg;
        for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + d;
        throw ConfigError(msg);
    }
    return r.config;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig load_config_file(const std::string& path) { return load_config_text(read_text_file(path), path); }

std::vector<std::string> validate_file(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const ConfigError& e) {
        return {e.what()};
    }
    ParseResult r = parse_config_text(text, path);
    auto diags = r.diagnostics;
    for (auto& d : validate(r.config)) diags.push_back(path + ": " + d);
    return diags;
}

} // namespace dqd

namespace dqd {

std::string to_text(const ExperimentConfig& c) {
    std::ostringstream os;
    auto num = [&os](const char* key, double v) { os << key << " = " << format_number(v) << '\n'; };
    auto opt = [&os](const char* key, const std::optional<double>& v) {
        if (v) os << key << " = " << format_number(*v) << '\n';
    };
    os << "preset = " << to_string(c.preset) << "\n[model]\n";
    num("epsilon", c.model.epsilon);
    num("omega", c.model.omega);
    os << "[environment]\n";
    num("chi1", c.env.chi1);
    num("chi2", c.env.chi2);
    num("d_amp", c.env.d_amp);
    num("ev_qpc", c.env.ev_qpc);
    num("mu_l", c.env.mu_l);
    num("mu_r", c.env.mu_r);
    num("kbt", c.env.kbt);
    num("band_cutoff", c.env.band_cutoff);
    num("dos_product", c.env.dos_product);
    num("lead_coupling_l", c.env.lead_coupling_l);
    num("lead_coupling_r", c.env.lead_coupling_r);
    os << "[rates]\nmode = " << (c.rates.mode == RateMode::Markovian ? "markovian" : "tabulated") << '\n';
    opt("gamma1", c.rates.gammas.gamma1);
    opt("gamma2", c.rates.gammas.gamma2);
    opt("gamma3", c.rates.gammas.gamma3);
    opt("gamma4", c.rates.gammas.gamma4);
    num("table_horizon", c.rates.table_horizon);
    os << "[quadrature]\nn_nodes = " << c.quad.n_nodes << "\nscheme = "
       << (c.quad.scheme == QuadScheme::GaussLegendre ? "gauss-legendre" : "trapezoid") << '\n';
    num("tolerance", c.quad.tolerance);
    os << "[integrator]\nmethod = " << (c.integrator.method == Method::Rk45Adaptive ? "rk45-adaptive" : "rk4-fixed")
       << '\n';
    num("rel_tol", c.integrator.rel_tol);
    num("abs_tol", c.integrator.abs_tol);
    num("max_step", c.integrator.max_step);
    os << "[dynamics]\nvariant = " << to_string(c.variant) << "\nn_max = " << c.n_max << "\ninitial = "
       << (c.initial == InitialState::Ground ? "ground" : c.initial == InitialState::Excited ? "excited" : "empty")
       << "\n[control]\nenabled = " << (c.control_enabled ? "true" : "false") << '\n';
    num("i_target", c.control.i_target);
    num("eta1", c.control.eta1);
    num("eta2", c.control.eta2);
    num("k", c.control.k);
    num("sample_dt", c.control.sample_dt);
    os << "freeze_rates = " << (c.control.freeze_rates ? "true" : "false") << '\n';
    os << "zero_delay = " << (c.control.zero_delay ? "true" : "false") << '\n';
    num("noise_sigma", c.control.noise_sigma);
    os << "noise_seed = " << c.control.noise_seed << "\n[run]\n";
    num("horizon", c.run.horizon);
    os << "samples = " << c.run.samples << "\noutput_dir = " << c.run.output_dir << '\n';
    return os.str();
}

} // namespace dqd
