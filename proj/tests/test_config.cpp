#include "dqd/config.hpp"
#include "dqd/csv.hpp"
#include "dqd/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

using namespace dqd;

namespace {

bool mentions(const std::vector<std::string>& diags, const std::string& needle) {
    return std::any_of(diags.begin(), diags.end(), [&](const std::string& d) { return d.find(needle) != std::string::npos; });
}

std::string custom_text() { return read_text_file(DQD_CONFIG_DIR "/custom.conf"); }

std::string without_line(std::string text, const std::string& prefix) {
    const auto pos = text.find("\n" + prefix);
    EXPECT_NE(pos, std::string::npos);
    const auto end = text.find('\n', pos + 1);
    text.erase(pos, end - pos);
    return text;
}

} // namespace

TEST(Presets, ValidateClean) {
    for (const char* name : {"fig2-cumulants", "fig3-stationary-sweep", "fig4-feedback"}) {
        const ParseResult r = parse_config_text(std::string("preset = ") + name + "\n");
        EXPECT_TRUE(r.diagnostics.empty()) << name;
        EXPECT_TRUE(validate(r.config).empty()) << name;
        EXPECT_EQ(to_string(*parse_preset(name)), name);
    }
    EXPECT_FALSE(parse_preset("fig5").has_value());
}

TEST(Presets, FixPhysicalParameters) {
    const ExperimentConfig f2 = preset_config(Preset::Fig2Cumulants);
    EXPECT_EQ(f2.model.epsilon, 108.0);
    EXPECT_EQ(f2.model.omega, 32.0);
    EXPECT_EQ(f2.env.chi_d() * f2.env.chi_d(), 0.25);
    EXPECT_EQ(f2.env.ev_qpc, 400.0);
    const ExperimentConfig f4 = preset_config(Preset::Fig4Feedback);
    EXPECT_TRUE(f4.control_enabled);
    EXPECT_EQ(f4.control.i_target, 0.1);
    EXPECT_EQ(f4.control.k, 5e4);
    EXPECT_EQ(*f4.rates.gammas.gamma1, kFig4Gamma);
}

TEST(Presets, ExampleFilesValidate) {
    for (const char* f : {"fig2-cumulants.conf", "fig3-stationary-sweep.conf", "fig4-feedback.conf", "custom.conf"}) {
        EXPECT_TRUE(validate_file(std::string(DQD_CONFIG_DIR "/") + f).empty()) << f;
    }
}

TEST(Validate, ZeroGainCitesInvariant) {
    ExperimentConfig cfg = preset_config(Preset::Fig4Feedback);
    cfg.control.k = 0.0;
    EXPECT_TRUE(mentions(validate(cfg), "control.k must be > 0"));
}

TEST(Validate, ChiOrdering) {
    ExperimentConfig cfg = preset_config(Preset::Custom);
    cfg.env.chi1 = 2.0;
    cfg.env.chi2 = 1.0;
    EXPECT_TRUE(mentions(validate(cfg), "chi1 must be < environment.chi2"));
}

TEST(Parse, MissingBandCutoffNamesField) {
    const std::string text = without_line(custom_text(), "band_cutoff");
    const ParseResult r = parse_config_text(text, "x.conf");
    EXPECT_TRUE(mentions(r.diagnostics, "environment.band_cutoff"));
    try {
        load_config_text(text, "x.conf");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("missing required field environment.band_cutoff"), std::string::npos);
    }
}

TEST(Parse, ReportsEveryProblemWithLineNumbers) {
    const std::string text = "preset = fig2-cumulants\n"
                             "[integrator]\n"
                             "rel_tol = abc\n"
                             "bogus = 1\n"
                             "[model]\n"
                             "epsilon = 3\n"
                             "[nowhere]\n"
                             "this line has no equals\n";
    const ParseResult r = parse_config_text(text, "bad.conf");
    EXPECT_GE(r.diagnostics.size(), 4u);
    EXPECT_TRUE(mentions(r.diagnostics, "bad.conf:3:"));
    EXPECT_TRUE(mentions(r.diagnostics, "bad.conf:4:"));
    EXPECT_TRUE(mentions(r.diagnostics, "model.epsilon is fixed by preset"));
    EXPECT_TRUE(mentions(r.diagnostics, "bad.conf:7:"));
}

TEST(Parse, DuplicateKeyRejected) {
    const ParseResult r = parse_config_text("preset = fig3-stationary-sweep\n[run]\nsamples = 10\nsamples = 11\n");
    EXPECT_TRUE(mentions(r.diagnostics, "run.samples"));
}

TEST(Parse, CustomAndCanonicalTextRoundTrip) {
    const ExperimentConfig a = load_config_text(custom_text());
    EXPECT_EQ(a.rates.mode, RateMode::Tabulated);
    EXPECT_EQ(a.env.mu_l, 1000.0);
    EXPECT_EQ(a.quad.band_cutoff, a.env.band_cutoff);
    const std::string text = to_text(a);
    const ExperimentConfig b = load_config_text(text);
    EXPECT_EQ(to_text(b), text);
    EXPECT_EQ(fnv1a_hex(to_text(b)), fnv1a_hex(text));
}

TEST(Parse, UnreadableFile) {
    const auto d = validate_file("/nonexistent/dir/x.conf");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_THROW(load_config_file("/nonexistent/dir/x.conf"), ConfigError);
}

TEST(Csv, Fnv1aReferenceValues) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Csv, ShortestRoundTripNumbers) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-2.0), "-2");
    EXPECT_EQ(format_number(1e-300), "1e-300");
    EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}
