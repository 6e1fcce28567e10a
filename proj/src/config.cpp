#include "probscale/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace probscale::config {

using nlohmann::json;

namespace {

double parse_alpha(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>()).to_double();
        } catch (const std::exception& e) {
            throw ConfigError("alpha", e.what());
        }
    }
    throw ConfigError("alpha", "expected a number or a rational string \"a/b\"");
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

randfield::ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("(document)", std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("(document)", "config must be a JSON object");

    static const std::set<std::string> known = {"eq",     "d",     "p",        "kind",
                                                "signs",  "alpha", "Nset",     "samples",
                                                "seed",   "dataMode", "regime"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) throw ConfigError(key, "unknown field");

    auto require = [&](const char* key) -> const json& {
        if (!doc.contains(key)) throw ConfigError(key, "missing required field");
        return doc.at(key);
    };

    randfield::ExperimentConfig cfg;

    const std::string eq = require("eq").is_string()
                               ? doc.at("eq").get<std::string>()
                               : throw ConfigError("eq", "expected a string");
    if (eq == "heat")
        cfg.eq = EquationKind::Heat;
    else if (eq == "wave")
        cfg.eq = EquationKind::Wave;
    else if (eq == "schrodinger")
        cfg.eq = EquationKind::Schrodinger;
    else
        throw ConfigError("eq", "expected heat|wave|schrodinger, got '" + eq + "'");

    if (!require("d").is_number_integer()) throw ConfigError("d", "expected an integer");
    cfg.d = doc.at("d").get<int>();
    if (cfg.d < 1 || cfg.d > 3) throw ConfigError("d", "must be in [1,3]");

    if (!require("p").is_number_integer()) throw ConfigError("p", "expected an integer");
    const int p = doc.at("p").get<int>();
    if (p < 2) throw ConfigError("p", "must be >= 2");

    std::string kind = "power";
    if (doc.contains("kind")) {
        if (!doc.at("kind").is_string()) throw ConfigError("kind", "expected a string");
        kind = doc.at("kind").get<std::string>();
    }
    try {
        if (kind == "power") {
            cfg.nl = NonlinearitySpec::power(p);
        } else if (kind == "modsq") {
            if (p != 2) throw ConfigError("p", "|u|^2 forces p = 2");
            cfg.nl = NonlinearitySpec::modulus_square();
        } else if (kind == "signs") {
            if (!doc.contains("signs") || !doc.at("signs").is_string())
                throw ConfigError("signs", "kind=signs needs a string like \"+-+\"");
            std::vector<int> signs;
            for (char c : doc.at("signs").get<std::string>()) {
                if (c == '+')
                    signs.push_back(1);
                else if (c == '-')
                    signs.push_back(-1);
                else
                    throw ConfigError("signs", std::string("bad character '") + c + "'");
            }
            if (static_cast<int>(signs.size()) != p)
                throw ConfigError("signs", "sign count must equal p");
            cfg.nl = NonlinearitySpec::signed_product(signs);
        } else {
            throw ConfigError("kind", "expected power|modsq|signs, got '" + kind + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("kind", e.what());
    }
    if (doc.contains("signs") && kind != "signs")
        throw ConfigError("signs", "only valid with kind=signs");

    cfg.alpha = parse_alpha(require("alpha"));

    const json& nset = require("Nset");
    if (!nset.is_array() || nset.empty()) throw ConfigError("Nset", "expected a nonempty array");
    for (std::size_t i = 0; i < nset.size(); ++i) {
        const std::string path = "Nset[" + std::to_string(i) + "]";
        if (!nset[i].is_number_integer()) throw ConfigError(path, "expected an integer");
        const auto n = nset[i].get<std::int64_t>();
        if (n < 2 || !is_pow2(n))
            throw ConfigError(path, std::to_string(n) + " is not a power of two >= 2");
        cfg.n_set.push_back(n);
    }

    if (!require("samples").is_number_integer())
        throw ConfigError("samples", "expected an integer");
    cfg.samples = doc.at("samples").get<int>();
    if (cfg.samples < 8) throw ConfigError("samples", "must be >= 8");

    if (!require("seed").is_number_integer()) throw ConfigError("seed", "expected an integer");
    cfg.seed = doc.at("seed").get<std::uint64_t>();

    if (doc.contains("dataMode")) {
        const std::string m = doc.at("dataMode").is_string()
                                  ? doc.at("dataMode").get<std::string>()
                                  : throw ConfigError("dataMode", "expected a string");
        if (m == "gaussian")
            cfg.data_mode = randfield::DataMode::GaussianRandom;
        else if (m == "ones")
            cfg.data_mode = randfield::DataMode::DeterministicOnes;
        else
            throw ConfigError("dataMode", "expected gaussian|ones, got '" + m + "'");
    }
    if (doc.contains("regime")) {
        const std::string r = doc.at("regime").is_string()
                                  ? doc.at("regime").get<std::string>()
                                  : throw ConfigError("regime", "expected a string");
        if (r == "hhh")
            cfg.regime = Regime::HHH;
        else if (r == "hhl")
            cfg.regime = Regime::HHL;
        else
            throw ConfigError("regime", "expected hhh|hhl, got '" + r + "'");
    }

    if (cfg.eq == EquationKind::Heat)
        throw ConfigError("eq", "heat is oracle-only; sampling experiments need wave or "
                                "schrodinger");
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError("(config)", e.what());
    }
    return cfg;
}

randfield::ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("(file)", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

namespace {

json config_json(const randfield::ExperimentConfig& cfg) {
    json j;
    j["eq"] = name(cfg.eq);
    j["d"] = cfg.d;
    j["p"] = cfg.nl.degree;
    switch (cfg.nl.kind) {
        case NonlinearityKind::PurePower: j["kind"] = "power"; break;
        case NonlinearityKind::ModulusSquare: j["kind"] = "modsq"; break;
        case NonlinearityKind::SignedProduct: {
            j["kind"] = "signs";
            std::string s;
            for (int v : cfg.nl.signs) s += v > 0 ? '+' : '-';
            j["signs"] = s;
            break;
        }
    }
    j["alpha"] = cfg.alpha;
    j["Nset"] = cfg.n_set;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["dataMode"] = name(cfg.data_mode);
    j["regime"] = cfg.regime == Regime::HHH ? "hhh" : "hhl";
    return j;
}

json fit_json(const fitting::FitResult& fit) {
    json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residualMax"] = fit.residual_max;
    j["points"] = json::array();
    for (const auto& [x, y] : fit.points) j["points"].push_back({x, y});
    return j;
}

} // namespace

std::string experiment_summary_json(const randfield::ExperimentResult& result,
                                    double tolerance) {
    json j;
    j["config"] = config_json(result.config);
    j["medianHsNorm"] = json::array();
    for (const auto& [n, med] : result.medians)
        j["medianHsNorm"].push_back({{"N", n}, {"median", med}});
    j["fit"] = fit_json(result.fit);
    j["predictedSlope"] = result.predicted_slope;
    j["tolerance"] = tolerance;
    j["pass"] = std::abs(result.fit.slope - result.predicted_slope) <= tolerance;
    return j.dump(2) + "\n";
}

std::string experiment_csv(const randfield::ExperimentResult& result) {
    std::ostringstream os;
    os << "eq,d,p,kind,alpha,dataMode,regime,N,sampleIndex,hsNorm,besovNorm\n";
    for (const auto& r : result.results) {
        os << name(result.config.eq) << ',' << result.config.d << ',' << result.config.nl.degree
           << ',' << csv_escape(result.config.nl.str()) << ',' << format_double(r.spec.alpha)
           << ',' << name(r.spec.data_mode) << ','
           << (r.regime == Regime::HHH ? "hhh" : "hhl") << ',' << r.band_n << ','
           << r.sample_index << ',' << format_double(r.hs_norm) << ','
           << format_double(r.besov_norm) << '\n';
    }
    return os.str();
}

std::string sweep_csv(const counting::SweepResult& sweep, const std::string& family_label) {
    std::ostringstream os;
    os << "dispersion,d,aFamily,N,supCount,argmaxM,annulusSize,paperBound,impliedC\n";
    for (const auto& rep : sweep.reports) {
        os << name(rep.query.dispersion) << ',' << rep.query.d << ',' << family_label << ','
           << rep.query.n << ',' << rep.sup_count << ',' << rep.argmax_m << ','
           << rep.annulus_size << ',';
        if (rep.has_bound())
            os << format_double(rep.paper_bound) << ',' << format_double(rep.implied_constant());
        else
            os << ',';
        os << '\n';
    }
    return os.str();
}

std::string sweep_json(const counting::SweepResult& sweep, const std::string& family_label) {
    json j;
    j["rows"] = json::array();
    for (const auto& rep : sweep.reports) {
        json row;
        row["dispersion"] = name(rep.query.dispersion);
        row["d"] = rep.query.d;
        row["aFamily"] = family_label;
        row["N"] = rep.query.n;
        row["supCount"] = rep.sup_count;
        row["argmaxM"] = rep.argmax_m;
        row["annulusSize"] = rep.annulus_size;
        if (rep.has_bound()) {
            row["paperBound"] = rep.paper_bound;
            row["impliedC"] = rep.implied_constant();
        } else {
            row["paperBound"] = nullptr;
            row["impliedC"] = nullptr;
        }
        j["rows"].push_back(row);
    }
    j["fit"] = fit_json(sweep.fit);
    return j.dump(2) + "\n";
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace probscale::config
