/**
 * @file config.hpp
 * @brief JSON experiment configs and report serialization.
 *
 * Experiment configs are strict: unknown fields are rejected and every
 * diagnostic names the offending field path. CSV output uses RFC-4180
 * style quoting with LF line endings; identical seeds give byte-identical
 * files.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "probscale/counting.hpp"
#include "probscale/randfield.hpp"
#include "probscale/rational.hpp"

namespace probscale::config {

/// Config/validation failure; `path` names the field ("Nset[2]", "eq").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Parses an experiment config from JSON text. Field reference:
///   eq ("heat"|"wave"|"schrodinger"), d, p, alpha (number or "a/b"),
///   Nset (dyadic array), samples, seed, kind ("power"|"modsq"|"signs"),
///   signs ("+-+", with kind = "signs"), dataMode ("gaussian"|"ones"),
///   regime ("hhh"|"hhl").
randfield::ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Reads and parses a config file (UTF-8 JSON).
randfield::ExperimentConfig load_config(const std::string& path);

/// JSON summary of an experiment: config echo (reloadable through
/// parse_experiment_config), per-N medians, fit, predicted slope.
std::string experiment_summary_json(const randfield::ExperimentResult& result,
                                    double tolerance);

/// CSV of per-sample results:
/// eq,d,p,kind,alpha,dataMode,regime,N,sampleIndex,hsNorm,besovNorm
std::string experiment_csv(const randfield::ExperimentResult& result);

/// CSV of a counting sweep:
/// dispersion,d,aFamily,N,supCount,argmaxM,annulusSize,paperBound,impliedC
std::string sweep_csv(const counting::SweepResult& sweep, const std::string& family_label);

/// JSON mirror of the sweep rows plus the fitted exponent.
std::string sweep_json(const counting::SweepResult& sweep, const std::string& family_label);

/// One CSV field, quoted when needed (comma, quote, newline).
std::string csv_escape(const std::string& field);

} // namespace probscale::config
