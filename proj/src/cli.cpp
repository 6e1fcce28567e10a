#include "probscale/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "probscale/config.hpp"
#include "probscale/counting.hpp"
#include "probscale/exponents.hpp"
#include "probscale/randfield.hpp"
#include "probscale/selftest.hpp"
#include "probscale/tables.hpp"

namespace probscale::cli {

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
    return json{{"num", r.num()}, {"den", r.den()}, {"decimal", r.decimal()}};
}

EquationKind parse_eq(const std::string& s) {
    if (s == "heat") return EquationKind::Heat;
    if (s == "wave") return EquationKind::Wave;
    if (s == "schrodinger") return EquationKind::Schrodinger;
    throw CLI::ValidationError("--eq", "expected heat|wave|schrodinger");
}

NonlinearitySpec parse_kind(const std::string& kind, int p) {
    if (kind.empty() || kind == "power") return NonlinearitySpec::power(p);
    if (kind == "modsq") return NonlinearitySpec::modulus_square();
    if (kind.rfind("signs=", 0) == 0) {
        std::vector<int> signs;
        for (char c : kind.substr(6)) {
            if (c == '+')
                signs.push_back(1);
            else if (c == '-')
                signs.push_back(-1);
            else
                throw CLI::ValidationError("--kind", "signs must be + or -");
        }
        return NonlinearitySpec::signed_product(signs);
    }
    throw CLI::ValidationError("--kind", "expected power|modsq|signs=+-+...");
}

std::vector<std::int64_t> parse_nset(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw CLI::ValidationError("--Nset", "expected a comma list of dyadics");
    return out;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << content;
}

int cmd_exponents(const std::string& eq_name, int d, int p, const std::string& kind,
                  const std::optional<std::string>& alpha, const std::optional<std::string>& s_in,
                  const std::string& format, std::ostream& out) {
    const EquationSpec spec(parse_eq(eq_name), d, parse_kind(kind, p));
    using namespace exponents;
    std::optional<Rational> s;
    if (s_in) s = Rational::parse(*s_in);
    if (!s && alpha) s = regularity_level(Rational::parse(*alpha), d);

    const Rational pr = s_pr(spec), hhl = s_hhl(spec), det = s_det(spec);
    const Threshold gibbs = gibbs_support(d);
    const Rational bh = beta_hhh(spec), bl = beta_hhl(spec);

    if (format == "json") {
        json j;
        j["eq"] = name(spec.eq);
        j["d"] = d;
        j["p"] = p;
        j["nonlinearity"] = spec.nl.str();
        j["s_pr"] = rational_json(pr);
        j["s_hhl"] = rational_json(hhl);
        j["s_det"] = rational_json(det);
        j["s_G"] = rational_json(gibbs.value);
        j["s_G_openEndpoint"] = gibbs.open_endpoint;
        j["beta_hhh"] = rational_json(bh);
        j["beta_hhl"] = rational_json(bl);
        if (s) {
            const auto te = time_exponents(spec, *s);
            j["s"] = rational_json(*s);
            j["longTime"] = rational_json(te.long_time);
            j["kinetic"] = rational_json(te.kinetic);
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    auto line = [&](const char* label, const Rational& r, const char* suffix = "") {
        out << label << " = " << r.str() << " (" << r.decimal() << ")" << suffix << "\n";
    };
    out << name(spec.eq) << " d=" << d << " p=" << p << " " << spec.nl.str() << "\n";
    line("s_pr ", pr);
    line("s_hhl", hhl);
    line("s_det", det);
    line("s_G  ", gibbs.value, gibbs.open_endpoint ? " (open endpoint)" : "");
    line("beta_hhh", bh);
    line("beta_hhl", bl);
    if (s) {
        const auto te = time_exponents(spec, *s);
        line("s    ", *s);
        line("longTime", te.long_time);
        line("kinetic ", te.kinetic);
    }
    return 0;
}

int cmd_tables(int which, const std::string& format, std::ostream& out) {
    const auto set = tables::render_tables();
    if (format == "json") {
        json j;
        auto cell = [&](const tables::Table1Cell& c) {
            json jc;
            jc["formula"] = c.formula;
            if (c.constant) jc["value"] = rational_json(*c.constant);
            jc["footnote"] = c.footnote;
            return jc;
        };
        if (which == 0 || which == 1) {
            j["table1"] = json::array();
            for (const auto& row : set.table1)
                j["table1"].push_back(json{{"eq", name(row.eq)},
                                           {"degree", row.degree_label},
                                           {"s_pr", cell(row.s_pr)},
                                           {"s_hhl", cell(row.s_hhl)}});
        }
        auto beta = [&](const tables::BetaTable& t) {
            json rows = json::array();
            for (int r = 0; r < 3; ++r) {
                json row;
                row["eq"] = tables::BetaTable::kRows[static_cast<std::size_t>(r)];
                row["beta"] = json::array();
                for (int c = 0; c < 6; ++c)
                    row["beta"].push_back(rational_json(t.cells[r][c]));
                rows.push_back(row);
            }
            return rows;
        };
        if (which == 0 || which == 2) j["table2"] = beta(set.table2);
        if (which == 0 || which == 3) j["table3"] = beta(set.table3);
        out << j.dump(2) << "\n";
        return 0;
    }
    if (which == 0 || which == 1) out << tables::table1_text(set.table1) << "\n";
    if (which == 0 || which == 2)
        out << tables::beta_table_text(set.table2, "beta (high-high-to-high)") << "\n";
    if (which == 0 || which == 3)
        out << tables::beta_table_text(set.table3, "beta (high-high-to-low)") << "\n";
    return 0;
}

int cmd_classify(const std::string& eq_name, int d, int p, const std::string& kind,
                 const std::optional<std::string>& alpha, const std::optional<std::string>& s_in,
                 const std::string& regime_name, const std::string& format, std::ostream& out,
                 std::ostream& err) {
    if (!alpha && !s_in) {
        err << "classify: provide --s or --alpha\n";
        return 2;
    }
    const EquationSpec spec(parse_eq(eq_name), d, parse_kind(kind, p));
    const Regime regime = regime_name == "hhl" ? Regime::HHL : Regime::HHH;
    const Rational s =
        s_in ? Rational::parse(*s_in) : exponents::regularity_level(Rational::parse(*alpha), d);
    const Criticality c = exponents::classify(spec, s, regime);
    if (format == "json") {
        json j;
        j["eq"] = name(spec.eq);
        j["d"] = d;
        j["p"] = p;
        j["regime"] = regime == Regime::HHH ? "hhh" : "hhl";
        j["s"] = rational_json(s);
        j["threshold"] = rational_json(regime == Regime::HHH ? exponents::s_pr(spec)
                                                             : exponents::s_hhl(spec));
        j["criticality"] = name(c);
        out << j.dump(2) << "\n";
    } else {
        out << "s = " << s.str() << " (" << s.decimal() << ") -> " << name(c) << "\n";
    }
    return 0;
}

int cmd_counting(const std::string& disp_name, int d, const std::string& family_name,
                 const std::optional<std::string>& a_csv, const std::string& nset_csv,
                 int samples, std::uint64_t seed, int threads, double constant,
                 const std::string& format, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    const auto disp = counting::dispersion_from_name(disp_name);
    counting::ShiftFamily family = family_name == "proportional"
                                       ? counting::ShiftFamily::proportional()
                                       : counting::ShiftFamily::fixed_low();
    if (a_csv) {
        std::vector<std::int64_t> coords;
        std::stringstream ss(*a_csv);
        std::string item;
        while (std::getline(ss, item, ',')) coords.push_back(std::stoll(item));
        if (static_cast<int>(coords.size()) != d)
            throw CLI::ValidationError("--a", "coordinate count must equal d");
        if (family_name == "proportional") {
            std::array<double, kMaxDim> u{};
            double n2 = 0;
            for (int i = 0; i < d; ++i) {
                u[static_cast<std::size_t>(i)] = static_cast<double>(coords[static_cast<std::size_t>(i)]);
                n2 += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
            }
            if (n2 <= 0) throw CLI::ValidationError("--a", "direction must be nonzero");
            for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i)] /= std::sqrt(n2);
            family = counting::ShiftFamily::proportional(u);
        } else {
            family = counting::ShiftFamily::fixed_low(make_vec(coords), d);
        }
    }
    const auto nset = parse_nset(nset_csv);
    const auto sweep = counting::scaling_sweep(disp, d, family, nset, samples, seed, threads);
    const auto bounds = counting::verify_bounds(sweep.reports, constant);

    std::string payload;
    if (format == "csv")
        payload = config::sweep_csv(sweep, family.label());
    else if (format == "json")
        payload = config::sweep_json(sweep, family.label());
    else {
        std::ostringstream os;
        os << config::sweep_csv(sweep, family.label());
        os << "fitted slope: " << sweep.fit.slope << "\n";
        os << "implied constant: " << bounds.implied_constant << "\n";
        payload = os.str();
    }
    write_output(out_path, payload, out);

    bool all_pass = true;
    for (const auto& v : bounds.verdicts)
        if (v.applicable && !v.pass) all_pass = false;
    if (!all_pass) {
        err << "bound violated at constant " << constant << " (implied "
            << bounds.implied_constant << ")\n";
        return 1;
    }
    return 0;
}

int cmd_iterate(const std::string& config_path, int threads, double tolerance,
                const std::string& out_base, std::ostream& out, std::ostream& err) {
    const auto cfg = config::load_config(config_path);
    const auto result = randfield::scaling_experiment(cfg, threads);
    const std::string csv = config::experiment_csv(result);
    const std::string summary = config::experiment_summary_json(result, tolerance);
    if (out_base.empty()) {
        out << csv << summary;
    } else {
        write_output(out_base + ".csv", csv, out);
        write_output(out_base + ".json", summary, out);
    }
    if (std::abs(result.fit.slope - result.predicted_slope) > tolerance) {
        err << "slope " << result.fit.slope << " outside " << result.predicted_slope << " +- "
            << tolerance << "\n";
        return 1;
    }
    return 0;
}

int cmd_selftest(std::ostream& out) {
    const auto results = selftest::run();
    for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.pass && !r.detail.empty()) out << "  (" << r.detail << ")";
        out << "\n";
    }
    return selftest::all_passed(results) ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"probabilistic scaling calculus: exact exponents, counting sweeps, "
                 "Monte Carlo iterate experiments"};
    app.require_subcommand(1);

    std::string eq_name = "schrodinger", kind, format = "text", regime = "hhh";
    int d = 1, p = 2, which = 0, samples = 8, threads = 0;
    std::optional<std::string> alpha, s_in, a_csv;
    std::string nset_csv = "8,16,32", out_path, config_path, disp_name = "waveminus",
                family_name = "proportional";
    std::uint64_t seed = 0;
    double constant = 32.0, tolerance = 0.5;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
    };

    auto* exps = app.add_subcommand("exponents", "print every exact threshold for a spec");
    exps->add_option("--eq", eq_name)->required();
    exps->add_option("-d,--dim", d)->required();
    exps->add_option("-p,--degree", p)->required();
    exps->add_option("--kind", kind);
    exps->add_option("--alpha", alpha);
    exps->add_option("--s", s_in);
    add_common(exps);

    auto* tbl = app.add_subcommand("tables", "print the threshold comparison tables");
    tbl->add_option("--which", which)->check(CLI::Range(0, 3));
    add_common(tbl);

    auto* cls = app.add_subcommand("classify", "classify a regularity against a threshold");
    cls->add_option("--eq", eq_name)->required();
    cls->add_option("-d,--dim", d)->required();
    cls->add_option("-p,--degree", p)->required();
    cls->add_option("--kind", kind);
    cls->add_option("--alpha", alpha);
    cls->add_option("--s", s_in);
    cls->add_option("--regime", regime)->check(CLI::IsMember({"hhh", "hhl"}));
    add_common(cls);

    auto* cnt = app.add_subcommand("counting", "run a counting sweep and verify bounds");
    cnt->add_option("--dispersion", disp_name)->required();
    cnt->add_option("-d,--dim", d)->required();
    cnt->add_option("--afamily", family_name)
        ->check(CLI::IsMember({"fixedlow", "proportional"}));
    cnt->add_option("--a", a_csv);
    cnt->add_option("--Nset", nset_csv);
    cnt->add_option("--samples", samples);
    cnt->add_option("--seed", seed);
    cnt->add_option("--threads", threads);
    cnt->add_option("--constant", constant);
    cnt->add_option("--out", out_path);
    add_common(cnt);

    auto* itr = app.add_subcommand("iterate", "run a Monte Carlo scaling experiment");
    itr->add_option("--config", config_path)->required();
    itr->add_option("--threads", threads);
    itr->add_option("--tolerance", tolerance);
    itr->add_option("--out", out_path);

    auto* st = app.add_subcommand("selftest", "run the hermetic invariant checks");
    (void)st;

    std::vector<const char*> argv;
    argv.push_back("probscale");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (exps->parsed())
            return cmd_exponents(eq_name, d, p, kind, alpha, s_in, format, out);
        if (tbl->parsed()) return cmd_tables(which, format, out);
        if (cls->parsed())
            return cmd_classify(eq_name, d, p, kind, alpha, s_in, regime, format, out, err);
        if (cnt->parsed())
            return cmd_counting(disp_name, d, family_name, a_csv, nset_csv, samples, seed,
                                threads, constant, format, out_path, out, err);
        if (itr->parsed()) return cmd_iterate(config_path, threads, tolerance, out_path, out, err);
        if (st->parsed()) return cmd_selftest(out);
    } catch (const config::ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

} // namespace probscale::cli
