// qdh: batch front end for the q-deformed hyperbolic potential library.
//
// Subcommands:
//   spectrum      bound-state energies (closed form / Cardano / transcendental)
//   wavefunction  normalized bound-state wave function on a grid (V1..V6)
//   green-scan    1/G(x0, x0; E) over an energy window, plus detected poles
//   verify        analytic spectrum vs the finite-difference oracle
//
// Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
// 3 numeric failure. Errors go to stderr as one JSON object.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdh/errors.hpp"
#include "qdh/green.hpp"
#include "qdh/oracle.hpp"
#include "qdh/spectra.hpp"
#include "qdh/wavefun.hpp"

using nlohmann::json;
using namespace qdh;

namespace {

const std::vector<std::string> kParamFlags = {"nu", "eta", "lambda", "alpha", "beta",
                                              "V0", "V1", "V2", "A", "B", "C", "f", "h1"};

struct Options {
    std::string config;
    std::string kind;
    double q = 1.0, hbar = 1.0, mass = 0.5;
    std::map<std::string, double> pvals;
    std::string format = "json";
    std::string out;
    std::string window;
    double tol = 1e-4;
    int grid_points = -1;
    int level = 0;
};

void add_spec_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON config file (flags override it)");
    cmd->add_option("--kind", o.kind, "potential kind: V1..V8, V7p, V8p");
    cmd->add_option("--q", o.q, "deformation parameter q > 0");
    cmd->add_option("--hbar", o.hbar, "Planck constant");
    cmd->add_option("--mass", o.mass, "particle mass");
    for (const auto& p : kParamFlags)
        cmd->add_option("--" + p, o.pvals[p], "potential parameter " + p);
    cmd->add_option("--format", o.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "output file (default: stdout)");
}

PotentialSpec build_spec(const CLI::App* cmd, const Options& o) {
    PotentialSpec spec;
    bool have_kind = false;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw ContractError("cannot open config file: " + o.config);
        json j;
        in >> j;
        from_json(j, spec);
        have_kind = true;
    }
    if (cmd->count("--kind")) {
        spec.kind = kind_from_string(o.kind);
        have_kind = true;
    }
    if (!have_kind) throw ContractError("--kind (or --config) is required");
    if (cmd->count("--q")) spec.q = o.q;
    if (cmd->count("--hbar")) spec.hbar = o.hbar;
    if (cmd->count("--mass")) spec.mass = o.mass;
    for (const auto& p : kParamFlags)
        if (cmd->count("--" + p)) spec.params[p] = o.pvals.at(p);

    std::vector<std::string> warnings = validate(spec);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return spec;
}

std::pair<double, double> parse_window(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
        throw ContractError("--window must be lo:hi");
    size_t used1 = 0, used2 = 0;
    double lo = std::stod(s.substr(0, pos), &used1);
    double hi = std::stod(s.substr(pos + 1), &used2);
    if (used1 != pos || used2 != s.size() - pos - 1)
        throw ContractError("--window must be lo:hi with numeric bounds");
    if (!(lo < hi)) throw ContractError("--window requires lo < hi");
    return {lo, hi};
}

// All output goes through here so stdout/--out behave identically.
void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out);
    if (!out) throw ContractError("cannot open output file: " + o.out);
    out << text;
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Oracle configuration used by `verify` (shifted-frame grids).
GridProblem oracle_problem(const PotentialSpec& spec, int grid_points) {
    ShiftedPotential sp = reduce_to_shifted(spec);
    GridProblem gp;
    gp.V = sp.V;
    gp.hbar = spec.hbar;
    gp.mass = spec.mass;
    bool v8ish = spec.kind == Kind::V8 || spec.kind == Kind::V8p;
    if (sp.half_line) {
        gp.x_min = v8ish ? 0.1 : 0.05;
        gp.x_max = v8ish ? 40.0 : 30.0;
        gp.n_points = v8ish ? 12000 : 6000;
        gp.wall_series = true;
    } else if (spec.kind == Kind::V7 || spec.kind == Kind::V7p) {
        gp.x_min = -30.0;
        gp.x_max = 50.0;
        gp.n_points = 8000;
    } else {
        gp.x_min = -25.0;
        gp.x_max = 25.0;
        gp.n_points = 6000;
    }
    if (grid_points > 0) gp.n_points = grid_points;
    return gp;
}

int cmd_spectrum(const CLI::App* cmd, Options& o) {
    PotentialSpec spec = build_spec(cmd, o);
    Spectrum s;
    if (spec.kind == Kind::V8 && cmd->count("--window"))
        s = spectrum_v8(spec, parse_window(o.window));
    else
        s = spectrum(spec);
    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "n,energy\n";
        for (const auto& l : s.levels) csv << l.n << "," << fmt_g17(l.energy) << "\n";
        emit(o, csv.str());
    } else {
        emit(o, spectrum_json(spec, s).dump(2) + "\n");
    }
    return 0;
}

int cmd_wavefunction(const CLI::App* cmd, Options& o) {
    PotentialSpec spec = build_spec(cmd, o);
    Spectrum s = spectrum(spec);
    if (o.level < 0 || o.level >= (int)s.levels.size())
        throw ContractError("--level " + std::to_string(o.level) + " out of range (" +
                            std::to_string(s.levels.size()) + " bound states)");
    int n_points = o.grid_points > 0 ? o.grid_points : 4001;
    BoundState bs = bound_state(spec, o.level, s.levels[o.level].energy, n_points);
    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "x,psi\n";
        for (size_t i = 0; i < bs.x.size(); ++i)
            csv << fmt_g17(bs.x[i]) << "," << fmt_g17(bs.psi[i]) << "\n";
        emit(o, csv.str());
    } else {
        json j;
        to_json(j, spec);
        j["n"] = bs.n;
        j["energy"] = bs.energy;
        j["nodes"] = bs.nodes;
        j["x"] = bs.x;
        j["psi"] = bs.psi;
        emit(o, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_green_scan(const CLI::App* cmd, Options& o) {
    PotentialSpec spec = build_spec(cmd, o);
    if (!cmd->count("--window")) throw ContractError("green-scan requires --window lo:hi");
    auto [lo, hi] = parse_window(o.window);
    int n = o.grid_points > 0 ? o.grid_points : 400;
    double x0 = spec.ln_sqrt_q() + (spec.half_line() ? 1.0 : 0.5);

    std::vector<double> Es, re, im;
    double span = hi - lo;
    for (int i = 0; i < n; ++i) {
        double E = lo + span * i / (n - 1.0);
        cplx g;
        try {
            g = green(spec, x0, x0, cplx(E, 0.0));
        } catch (const Error&) {
            try {
                g = green(spec, x0, x0, cplx(E + 1e-7 * span, 0.0));
            } catch (const Error&) {
                continue; // sample sits on a pole; skip it
            }
        }
        cplx inv = 1.0 / g;
        Es.push_back(E);
        re.push_back(inv.real());
        im.push_back(inv.imag());
    }

    std::optional<std::vector<double>> poles;
    if (spec.kind != Kind::V7) poles = pole_scan(spec, lo, hi, n);

    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "E,re_invG,im_invG\n";
        for (size_t i = 0; i < Es.size(); ++i)
            csv << fmt_g17(Es[i]) << "," << fmt_g17(re[i]) << "," << fmt_g17(im[i]) << "\n";
        emit(o, csv.str());
    } else {
        json j;
        to_json(j, spec);
        j["window"] = {lo, hi};
        json samples = json::array();
        for (size_t i = 0; i < Es.size(); ++i)
            samples.push_back({{"E", Es[i]}, {"re_invG", re[i]}, {"im_invG", im[i]}});
        j["samples"] = samples;
        if (poles)
            j["poles"] = *poles;
        else
            j["poles_note"] = "V7 Green function is evaluation-only; no pole scan";
        emit(o, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const CLI::App* cmd, Options& o) {
    PotentialSpec spec = build_spec(cmd, o);
    Spectrum s = spectrum(spec);
    GridProblem gp = oracle_problem(spec, o.grid_points);

    std::ostringstream tab;
    bool all_pass = true;
    if (s.levels.empty()) {
        ShiftedPotential sp = reduce_to_shifted(spec);
        int k = count_below(gp, sp.threshold - 1e-9);
        bool pass = (k == 0);
        all_pass = pass;
        tab << "no analytic bound states; oracle count below threshold: " << k << " ["
            << (pass ? "pass" : "FAIL") << "]\n";
    } else {
        Refined r = refine(gp, (int)s.levels.size());
        tab << "  n          analytic E            oracle E        |diff|  status\n";
        for (size_t i = 0; i < s.levels.size(); ++i) {
            double a = s.levels[i].energy;
            double b = r.extrapolated[i];
            double d = std::fabs(a - b);
            bool pass = d <= o.tol;
            all_pass = all_pass && pass;
            char line[160];
            std::snprintf(line, sizeof line, "%3d  %20.12g  %20.12g  %10.3e  %s\n",
                          s.levels[i].n, a, b, d, pass ? "pass" : "FAIL");
            tab << line;
        }
    }
    tab << (all_pass ? "verify: pass" : "verify: FAIL") << " (tol = " << o.tol << ")\n";
    emit(o, tab.str());
    return all_pass ? 0 : 1;
}

void error_json(const std::string& type, const std::string& msg) {
    std::cerr << json{{"error", type}, {"message", msg}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-deformed hyperbolic potentials: spectra, wave functions, Green functions"};
    app.require_subcommand(1);

    Options o;
    CLI::App* c_spec = app.add_subcommand("spectrum", "bound-state energies");
    CLI::App* c_wave = app.add_subcommand("wavefunction", "bound-state wave function");
    CLI::App* c_green = app.add_subcommand("green-scan", "1/G over an energy window");
    CLI::App* c_verify = app.add_subcommand("verify", "analytic vs oracle comparison");
    for (CLI::App* c : {c_spec, c_wave, c_green, c_verify}) add_spec_flags(c, o);
    c_spec->add_option("--window", o.window, "V8 root-search window lo:hi");
    c_wave->add_option("--level", o.level, "level index n");
    c_wave->add_option("--grid-points", o.grid_points, "grid size (default 4001)");
    c_green->add_option("--window", o.window, "energy window lo:hi (required)");
    c_green->add_option("--grid-points", o.grid_points, "energy samples (default 400)");
    c_verify->add_option("--tol", o.tol, "per-level tolerance (default 1e-4)");
    c_verify->add_option("--grid-points", o.grid_points, "oracle grid override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_json("usage", e.what());
        return 2;
    }

    try {
        if (c_spec->parsed()) return cmd_spectrum(c_spec, o);
        if (c_wave->parsed()) return cmd_wavefunction(c_wave, o);
        if (c_green->parsed()) return cmd_green_scan(c_green, o);
        return cmd_verify(c_verify, o);
    } catch (const ContractError& e) {
        error_json("contract", e.what());
        return 2;
    } catch (const DomainError& e) {
        error_json("domain", e.what());
        return 2;
    } catch (const PoleError& e) {
        error_json("pole", e.what());
        return 3;
    } catch (const NumericError& e) {
        error_json("numeric", e.what());
        return 3;
    } catch (const std::exception& e) {
        error_json("internal", e.what());
        return 3;
    }
}
