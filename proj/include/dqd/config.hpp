// config.hpp — Experiment configuration: presets, the key = value file format and validation.
//
// File format: '#' starts a comment, "[section]" opens a section, every other
// non-blank line is "key = value". A top-level "preset = <name>" selects a
// named experiment; named presets fix every physical parameter, so the
// [model] and [environment] sections and the physical [control] / [rates]
// keys are rejected for them. "preset = custom" (or no preset key) requires
// [model], [environment], rates.mode and run.horizon to be spelled out.

#pragma once

#include "dqd/control.hpp"
#include "dqd/dynamics.hpp"
#include "dqd/quadrature.hpp"
#include "dqd/rate_source.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dqd {

// Lead rates of the feedback preset. The uncontrolled long-time current of the
// default variant is then 0.0983, just below the 0.1 target.
inline constexpr double kFig4Gamma = 1.35;

enum class Preset { Fig2Cumulants, Fig3StationarySweep, Fig4Feedback, Custom };

std::string to_string(Preset p);
std::optional<Preset> parse_preset(std::string_view name);

enum class RateMode { Markovian, Tabulated };

struct RatesConfig {
    RateMode mode{RateMode::Markovian};
    GammaOverrides gammas;
    double table_horizon{1.0}; // tabulated mode: grid covers [0, table_horizon], long-time values after
};

struct RunConfig {
    double horizon{100.0};
    int samples{1001};
    std::string output_dir{"out"};
};

enum class InitialState { Ground, Excited, Empty };

struct ExperimentConfig {
    Preset preset{Preset::Custom};
    DqdParams model;
    EnvParams env;
    QuadratureConfig quad;
    IntegratorConfig integrator;
    RatesConfig rates;
    Variant variant{Variant::LindbladConsistent};
    int n_max{200};
    InitialState initial{InitialState::Ground};
    bool control_enabled{false};
    ControlLaw control;
    RunConfig run;
};

ExperimentConfig preset_config(Preset p);

struct ParseResult {
    ExperimentConfig config;
    std::vector<std::string> diagnostics; // syntax, unknown keys, missing fields
};

// Never throws; every problem found is reported.
ParseResult parse_config_text(std::string_view text, std::string_view origin = "<config>");

// Parameter invariants of an assembled config.
std::vector<std::string> validate(const ExperimentConfig& cfg);

// Parse + validate; throws ConfigError listing all diagnostics.
ExperimentConfig load_config_text(std::string_view text, std::string_view origin = "<config>");
ExperimentConfig load_config_file(const std::string& path);

// All diagnostics for a file (unreadable file included).
std::vector<std::string> validate_file(const std::string& path);

// Canonical key = value rendering of every field; its hash tags output files.
std::string to_text(const ExperimentConfig& cfg);

std::string read_text_file(const std::string& path); // throws ConfigError

} // namespace dqd
