#include "nckk/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "nckk/lattice.hpp"
#include "nckk/model.hpp"
#include "nckk/output.hpp"
#include "nckk/potentials.hpp"
#include "nckk/radial.hpp"
#include "nckk/spectrum.hpp"
#include "nckk/verify.hpp"

namespace nckk::cli {

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    PhysicalParams params;

    output::Format parsed_format() const {
        if (format == "csv") return output::Format::csv;
        if (format == "json-lines") return output::Format::json_lines;
        throw CLI::ValidationError("--format", "must be csv or json-lines");
    }
};

struct ParamFlags {
    CLI::Option* theta = nullptr;
    CLI::Option* R = nullptr;
};

ParamFlags add_param_flags(CLI::App& app, PhysicalParams& p) {
    ParamFlags flags;
    app.add_option("--hbar", p.hbar, "action quantum");
    app.add_option("--mass", p.mass, "particle mass");
    app.add_option("--c", p.c, "speed of light");
    app.add_option("--qe2", p.qe2, "Coulomb coupling q_e^2");
    app.add_option("--V0", p.V0, "Yukawa strength");
    app.add_option("--eta", p.eta, "Yukawa screening");
    flags.theta = app.add_option("--theta", p.theta, "deformation parameter");
    flags.R = app.add_option("--R", p.R, "compactification radius");
    app.add_option("--wp", p.wp, "dimensionless wave-sector coupling");
    app.add_option("--D", p.D, "spatial dimension");
    return flags;
}

/// Inclusive integer range `a..b` or a single value `a`.
std::vector<int> parse_range(const std::string& text, const std::string& flag) {
    auto fail = [&]() -> std::vector<int> {
        throw CLI::ValidationError(flag, "expected an integer or an inclusive range a..b");
    };
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) return {std::stoi(text)};
        const int a = std::stoi(text.substr(0, dots));
        const int b = std::stoi(text.substr(dots + 2));
        if (b < a) return fail();
        std::vector<int> vals;
        for (int v = a; v <= b; ++v) vals.push_back(v);
        return vals;
    } catch (const std::invalid_argument&) {
        return fail();
    } catch (const std::out_of_range&) {
        return fail();
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream;
    OutputTarget(const GlobalOptions& g, std::ostream& fallback) {
        if (g.out_path.empty()) {
            stream = &fallback;
        } else {
            file = open_output(g.out_path);
            stream = &file;
        }
    }
};

Eigen::ArrayXd make_grid(double lo, double hi, int points, bool logspace) {
    Eigen::ArrayXd g(points);
    if (points == 1) {
        g[0] = lo;
        return g;
    }
    if (logspace) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < points; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (points - 1.0));
    } else {
        for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1.0);
    }
    return g;
}

int cmd_spectrum(const GlobalOptions& g, const std::string& n_range, const std::string& l_range,
                 const std::string& ell_range, std::ostream& out_stream) {
    OutputTarget target(g, out_stream);
    const auto rows = spectrum::spectrum_table(parse_range(n_range, "--n"), parse_range(l_range, "--l"),
                                               parse_range(ell_range, "--ell"), g.params);
    output::TableWriter w(*target.stream, g.parsed_format(),
                          {"n", "l", "ell", "E_principal", "E_rejected_or_NaN", "a", "zeta"});
    w.comment("nckk spectrum");
    w.params_header(g.params, {{"n", n_range}, {"l", l_range}, {"ell", ell_range}});
    for (const auto& r : rows)
        w.row({static_cast<long>(r.n), static_cast<long>(r.l), static_cast<long>(r.ell),
               r.E_principal, r.E_rejected, r.a, r.zeta});
    return 0;
}

int cmd_potential(const GlobalOptions& g, const std::string& kind, double w_coord, double E,
                  double r_min, double r_max, int points, bool logspace, std::ostream& out_stream) {
    OutputTarget target(g, out_stream);
    const auto grid = make_grid(r_min, r_max, points, logspace);
    output::TableWriter w(*target.stream, g.parsed_format(),
                          {"r", "V_static", "V_theta_part", "V_total"});
    w.comment("nckk potential kind=" + kind);
    w.params_header(g.params, {{"w", output::TableWriter::format_double(w_coord)},
                               {"E", output::TableWriter::format_double(E)},
                               {"kind", kind}});
    auto term_at = [&](double r) -> potentials::NCPotentialTerm {
        if (kind == "coulomb-4d")
            return potentials::compactified_term(lattice::PotentialKind::coulomb_4d, r, w_coord, g.params);
        if (kind == "yukawa-4d")
            return potentials::compactified_term(lattice::PotentialKind::yukawa_4d, r, w_coord, g.params);
        if (kind == "coulomb-6d")
            return potentials::compactified_term(lattice::PotentialKind::coulomb_6d, r, w_coord, g.params);
        if (kind == "nc-coulomb") return potentials::nc_coulomb_term(r, g.params.D, g.params);
        if (kind == "nc-yukawa") return potentials::nc_yukawa_term(r, g.params.D, g.params);
        throw CLI::ValidationError("--kind",
                                   "must be one of coulomb-4d, yukawa-4d, coulomb-6d, nc-coulomb, nc-yukawa");
    };
    for (int i = 0; i < grid.size(); ++i) {
        const auto term = term_at(grid[i]);
        const double total = term.contracted(g.params.theta, E, g.params.hbar);
        w.row({grid[i], term.static_part, total - term.static_part, total});
    }
    return 0;
}

int cmd_wavefunction(const GlobalOptions& g, int n, int l, int ell, double r_max, int points,
                     std::ostream& out_stream) {
    OutputTarget target(g, out_stream);
    const QuantumNumbers qn{n, l, ell};
    const auto level = spectrum::energy_level(qn, g.params);
    output::TableWriter w(*target.stream, g.parsed_format(), {"r", "psi"});
    w.comment("nckk wavefunction");
    w.params_header(g.params, {{"n", std::to_string(n)},
                               {"l", std::to_string(l)},
                               {"ell", std::to_string(ell)},
                               {"E_principal", output::TableWriter::format_double(level.E)},
                               {"a", output::TableWriter::format_double(level.a)}});
    const auto grid = make_grid(r_max / points, r_max, points, false);
    for (int i = 0; i < grid.size(); ++i) w.row({grid[i], spectrum::wavefunction(qn, g.params, grid[i])});
    return 0;
}

int cmd_kg_profile(const GlobalOptions& g, int ell, double E, double r_min, double r_max,
                   int points, std::ostream& out_stream) {
    OutputTarget target(g, out_stream);
    const QuantumNumbers qn{0, 0, ell};
    output::TableWriter w(*target.stream, g.parsed_format(), {"r", "V_eff"});
    w.comment("nckk kg-profile");
    w.params_header(g.params, {{"ell", std::to_string(ell)},
                               {"E", output::TableWriter::format_double(E)},
                               {"r_min", output::TableWriter::format_double(r_min)},
                               {"r_max", output::TableWriter::format_double(r_max)},
                               {"points", std::to_string(points)}});
    const auto grid = make_grid(r_min, r_max, points, true);
    for (int i = 0; i < grid.size(); ++i)
        w.row({grid[i], potentials::kg_effective_potential(grid[i], qn, g.params, E)});
    return 0;
}

int cmd_solve(const GlobalOptions& g, int n, int ell, int nodes, double e_min, double e_max,
              double r_min, double r_max, const std::string& dump_path, std::ostream& out_stream,
              std::ostream& err_stream) {
    double rmin = r_min, rmax = r_max;
    if (rmin <= 0.0) rmin = 1e-4 * std::min(1.0 / std::max(g.params.zeta(), 1e-12), g.params.R);
    if (rmax <= 0.0) {
        const auto guess = spectrum::energy_level(QuantumNumbers{n, 0, ell}, g.params);
        const double kappa = std::sqrt(std::fabs(g.params.alpha2(guess.E) -
                                                 static_cast<double>(n) * n / (g.params.R * g.params.R)));
        rmax = 40.0 / std::max(kappa, 1e-6);
    }
    auto prob = radial::compactified_problem(g.params, n, ell, rmin, rmax);
    if (e_min >= e_max) {
        const auto guess = spectrum::energy_level(QuantumNumbers{n, nodes, ell}, g.params);
        const double margin = 0.45 * std::fabs(guess.E) + 1e-3;
        e_min = guess.E - margin;
        e_max = guess.E + margin;
    }
    const auto res = radial::shoot_eigenvalue(prob, nodes, e_min, e_max);
    // Eigenvalue search log: line-oriented, one bracket per line.
    for (std::size_t i = 0; i < res.bracket_history.size(); ++i)
        err_stream << "bracket " << i << ": [" << output::TableWriter::format_double(res.bracket_history[i][0])
                   << ", " << output::TableWriter::format_double(res.bracket_history[i][1]) << "]\n";
    if (!res.converged) {
        err_stream << "error check=shoot_eigenvalue : " << res.message << "\n";
        return 3;
    }
    OutputTarget target(g, out_stream);
    output::TableWriter w(*target.stream, g.parsed_format(), {"r", "psi", "dpsi"});
    w.comment("nckk solve");
    w.params_header(g.params, {{"n", std::to_string(n)},
                               {"ell", std::to_string(ell)},
                               {"nodes", std::to_string(nodes)},
                               {"E", output::TableWriter::format_double(res.E)},
                               {"residual", output::TableWriter::format_double(res.residual_norm)}});
    const auto ef = radial::eigenfunction(prob, res.E, 0);
    for (Eigen::Index i = 0; i < ef.r.size(); ++i) w.row({ef.r[i], ef.psi[i], ef.dpsi[i]});
    if (!dump_path.empty()) {
        auto f = open_output(dump_path);
        output::TableWriter wd(f, output::Format::csv, {"r", "psi", "dpsi"});
        wd.comment("nckk solve dump");
        wd.params_header(g.params);
        for (Eigen::Index i = 0; i < ef.r.size(); ++i) wd.row({ef.r[i], ef.psi[i], ef.dpsi[i]});
    }
    return 0;
}

int cmd_verify(const GlobalOptions& g, const std::string& suite, bool quick, std::ostream& out_stream,
               std::ostream& err_stream) {
    verify::SuiteResult result;
    if (suite == "lattice")
        result = verify::run_lattice_suite(g.params, quick);
    else if (suite == "fourier")
        result = verify::run_fourier_suite(g.params, quick);
    else if (suite == "spectrum")
        result = verify::run_spectrum_suite(g.params, quick);
    else if (suite == "all")
        result = verify::run_all(g.params, quick);
    else
        throw CLI::ValidationError("--suite", "must be lattice, fourier, spectrum or all");

    auto emit_report = [&](std::ostream& os) {
        output::TableWriter header(os, output::Format::csv, {});
        header.comment("nckk verify suite=" + suite + (quick ? " quick" : " full"));
        header.params_header(g.params);
        verify::write_report_csv(os, result.rows);
    };
    if (!g.out_path.empty()) {
        auto f = open_output(g.out_path);
        emit_report(f);
    } else {
        emit_report(out_stream);
    }
    for (const auto& row : result.rows) {
        const char* tag = row.status == verify::CheckStatus::pass
                              ? "PASS"
                              : (row.status == verify::CheckStatus::info ? "INFO" : "FAIL");
        err_stream << tag << " " << row.identity << " rel_err=" << row.rel_err
                   << " tol=" << row.tolerance << "\n";
    }
    if (result.failures > 0) {
        for (const auto& row : result.rows)
            if (row.status == verify::CheckStatus::fail) {
                err_stream << "error check=" << row.identity << " : rel_err=" << row.rel_err
                           << " exceeds tol=" << row.tolerance << "\n";
                break;
            }
        return 3;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"compactified deformed-spacetime quantum models: spectra, potentials, identities"};
    app.require_subcommand(1);
        GlobalOptions g;
    app.add_option("--config", g.config_path, "key = value parameter file");
    app.add_option("--out", g.out_path, "output file (default: stdout)");
    app.add_option("--format", g.format, "csv or json-lines")->capture_default_str();
    const ParamFlags flags = add_param_flags(app, g.params);

    auto* sp = app.add_subcommand("spectrum", "closed-form energy levels over quantum-number ranges");
    sp->fallthrough();
    std::string n_range = "0", l_range = "0", ell_range = "0";
    sp->add_option("--n", n_range, "compact mode, value or a..b")->capture_default_str();
    sp->add_option("--l", l_range, "radial number, value or a..b")->capture_default_str();
    sp->add_option("--ell", ell_range, "angular momentum, value or a..b")->capture_default_str();

    auto* pot = app.add_subcommand("potential", "potential profile export");
    pot->fallthrough();
    std::string kind = "coulomb-4d";
    double w_coord = 0.0, E_pot = 1.0, pr_min = 0.1, pr_max = 10.0;
    int p_points = 200;
    bool p_log = false;
    pot->add_option("--kind", kind, "coulomb-4d, yukawa-4d, coulomb-6d, nc-coulomb, nc-yukawa")
        ->capture_default_str();
    pot->add_option("--w", w_coord, "compact coordinate")->capture_default_str();
    pot->add_option("--E", E_pot, "stationary-state energy for the theta contraction")
        ->capture_default_str();
    pot->add_option("--r-min", pr_min)->capture_default_str();
    pot->add_option("--r-max", pr_max)->capture_default_str();
    pot->add_option("--points", p_points)->capture_default_str();
    pot->add_flag("--log", p_log, "log-spaced radial grid");

    auto* wf = app.add_subcommand("wavefunction", "normalized bound-state radial function");
    wf->fallthrough();
    int wf_n = 0, wf_l = 0, wf_ell = 0;
    double wf_rmax = 40.0;
    int wf_points = 400;
    wf->add_option("--n", wf_n)->capture_default_str();
    wf->add_option("--l", wf_l)->capture_default_str();
    wf->add_option("--ell", wf_ell)->capture_default_str();
    wf->add_option("--r-max", wf_rmax)->capture_default_str();
    wf->add_option("--points", wf_points)->capture_default_str();

    auto* kg = app.add_subcommand("kg-profile", "effective potential of the wave-equation sector");
    kg->fallthrough();
    int kg_ell = 1;
    double kg_E = 1.0, kg_rmin = 0.005, kg_rmax = 1.0;
    int kg_points = 500;
    kg->add_option("--ell", kg_ell)->capture_default_str();
    kg->add_option("--E", kg_E)->capture_default_str();
    kg->add_option("--r-min", kg_rmin)->capture_default_str();
    kg->add_option("--r-max", kg_rmax)->capture_default_str();
    kg->add_option("--points", kg_points)->capture_default_str();

    auto* sv = app.add_subcommand("solve", "shooting eigenvalue of the compactified radial equation");
    sv->fallthrough();
    int sv_n = 0, sv_ell = 0, sv_nodes = 0;
    double sv_emin = 0.0, sv_emax = 0.0, sv_rmin = 0.0, sv_rmax = 0.0;
    std::string sv_dump;
    sv->add_option("--n", sv_n)->capture_default_str();
    sv->add_option("--ell", sv_ell)->capture_default_str();
    sv->add_option("--nodes", sv_nodes)->capture_default_str();
    sv->add_option("--e-min", sv_emin, "bracket low (default: around the closed form)");
    sv->add_option("--e-max", sv_emax, "bracket high");
    sv->add_option("--r-min", sv_rmin, "integration start (default: series scale)");
    sv->add_option("--r-max", sv_rmax, "integration end (default: 40/kappa)");
    sv->add_option("--dump", sv_dump, "extra CSV dump path for (r, psi, dpsi)");

    auto* vf = app.add_subcommand("verify", "identity suite: closed forms vs independent routes");
    vf->fallthrough();
    std::string suite = "all";
    bool quick = false;
    vf->add_option("--suite", suite, "lattice, fourier, spectrum or all")->capture_default_str();
    vf->add_flag("--quick", quick, "coarse truncations and grids (< 10 s)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        std::map<std::string, std::string> file_kv;
        if (!g.config_path.empty()) {
            file_kv = read_config_file(g.config_path);
            PhysicalParams from_file;  // config first, then flags override
            apply_config(from_file, file_kv);
            GlobalOptions g2;
            g2.params = from_file;
            CLI::App overlay;
            overlay.allow_extras();
            add_param_flags(overlay, g2.params);
            std::vector<std::string> rev2(args.rbegin(), args.rend());
            overlay.parse(rev2);
            g.params = g2.params;
        }
        // The profile command reproduces the reference figure by default:
        // R = 0.01 and theta = 0.01 unless set by flag or config file.
        if (*kg) {
            if (flags.R->count() == 0 && file_kv.count("R") == 0) g.params.R = 0.01;
            if (flags.theta->count() == 0 && file_kv.count("theta") == 0) g.params.theta = 0.01;
        }
        g.params.validate();

        if (*sp) return cmd_spectrum(g, n_range, l_range, ell_range, out);
        if (*pot) return cmd_potential(g, kind, w_coord, E_pot, pr_min, pr_max, p_points, p_log, out);
        if (*wf) return cmd_wavefunction(g, wf_n, wf_l, wf_ell, wf_rmax, wf_points, out);
        if (*kg) return cmd_kg_profile(g, kg_ell, kg_E, kg_rmin, kg_rmax, kg_points, out);
        if (*sv)
            return cmd_solve(g, sv_n, sv_ell, sv_nodes, sv_emin, sv_emax, sv_rmin, sv_rmax, sv_dump,
                             out, err);
        if (*vf) return cmd_verify(g, suite, quick, out, err);
        err << "error check=cli : no subcommand\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error check=arguments : " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error check=domain : " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error check=numerical : " << e.what() << "\n";
        return 3;
    }
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace nckk::cli
