#include "qdh/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "qdh/errors.hpp"
#include "qdh/oracle.hpp"
#include "qdh/specfun.hpp"

namespace qdh {

namespace {

const double PI = 3.14159265358979323846264338327950288;

double tilde(double p, double q) { return std::sqrt((p * p - 0.25) / q + 0.25); }

Spectrum empty_with(Method m, const std::string& why) {
    Spectrum s;
    s.method = m;
    s.diagnostics.push_back(why);
    return s;
}

void finish(Spectrum& s) { s.n_max = (int)s.levels.size() - 1; }

} // namespace

std::string method_to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::cardano: return "cardano";
        case Method::transcendental: return "transcendental";
        case Method::numeric_oracle: return "numeric_oracle";
    }
    throw ContractError("method_to_string: bad method");
}

Spectrum spectrum_v1(const PotentialSpec& spec) {
    Spectrum s;
    double u = spec.unit();
    double lt = tilde(spec.param("nu"), spec.q);
    if (!(lt > 0.5)) return empty_with(Method::closed_form, "no bound states: lambda_t <= 1/2");
    for (int n = 0; n < lt - 0.5; ++n) {
        double w = n - lt + 0.5;
        s.levels.push_back({n, -u * w * w});
    }
    finish(s);
    return s;
}

Spectrum spectrum_v2(const PotentialSpec& spec) {
    Spectrum s;
    double u = spec.unit();
    double et = tilde(spec.param("eta"), spec.q);
    double nt = tilde(spec.param("nu"), spec.q);
    if (!(nt - et > 1.0))
        return empty_with(Method::closed_form, "no bound states: nu_t - eta_t <= 1");
    for (int n = 0; n < 0.5 * (nt - et - 1.0); ++n) {
        double w = 2.0 * n + et - nt + 1.0;
        s.levels.push_back({n, -u * w * w});
    }
    finish(s);
    return s;
}

Spectrum spectrum_v3(const PotentialSpec& spec) {
    Spectrum s;
    double u = spec.unit();
    double a = spec.param("alpha") / u;
    if (!(a > 0.0)) return empty_with(Method::closed_form, "no bound states: alpha <= 0");
    double sv = 2.0 * tilde(spec.param("lambda"), spec.q);
    for (int n = 0;; ++n) {
        double S = sv + 2.0 * n + 1.0;
        // binding condition: decay rate sigma_n = a/S - S/2 must be positive
        if (!(a / S - 0.5 * S > 0.0)) break;
        s.levels.push_back({n, -u * (0.25 * S * S + a * a / (S * S))});
    }
    if (s.levels.empty())
        return empty_with(Method::closed_form, "no bound states: a/S - S/2 <= 0 at n = 0");
    finish(s);
    return s;
}

Spectrum spectrum_v4(const PotentialSpec& spec) {
    Spectrum s;
    double u = spec.unit();
    double b = spec.param("beta") / u;
    double sv = 2.0 * tilde(spec.param("lambda"), spec.q);
    for (int n = 0;; ++n) {
        double Sp = sv - 2.0 * n - 1.0;
        // both asymptotic decay rates S'/2 -+ b/S' must be positive (for
        // b > 0 this is the k2 > 1/2 admissibility condition)
        if (!(Sp > 0.0) || !(Sp * Sp > 2.0 * std::fabs(b))) break;
        s.levels.push_back({n, -u * (0.25 * Sp * Sp + b * b / (Sp * Sp))});
    }
    if (s.levels.empty())
        return empty_with(Method::closed_form, "no bound states: admissibility fails at n = 0");
    finish(s);
    return s;
}

Spectrum spectrum_v5(const PotentialSpec& spec) {
    Spectrum s;
    double u = spec.unit();
    double V0 = spec.param("V0") / u, V1 = spec.param("V1") / u, V2 = spec.param("V2") / u;
    if (!(V2 < 0.0)) return empty_with(Method::closed_form, "no bound states: V2 >= 0");
    double sq = std::sqrt(spec.q);
    double eta2 = V1 + V2 / sq + 0.25, nu2 = V1 - V2 / sq + 0.25;
    if (eta2 < 0.0 || nu2 < 0.0)
        return empty_with(Method::closed_form,
                          "no bound states: wall/tail indices complex (V1 -+ V2/sqrt(q) + 1/4 < 0)");
    double k1 = 0.5 * (1.0 + std::sqrt(nu2)), k2 = 0.5 * (1.0 + std::sqrt(eta2));
    if (!(k1 - k2 > 0.5))
        return empty_with(Method::closed_form, "no bound states: k1 - k2 <= 1/2");
    for (int n = 0; n < k1 - k2 - 0.5; ++n) {
        double w = k1 - k2 - n - 0.5;
        s.levels.push_back({n, u * (V0 + V1) - u * w * w});
    }
    finish(s);
    return s;
}

Spectrum spectrum_v6(const PotentialSpec& spec) {
    Spectrum s;
    double u = spec.unit();
    double V0 = spec.param("V0") / u, V1 = spec.param("V1") / u, V2 = spec.param("V2") / u;
    cplx lam = std::sqrt(cplx(0.25 + V2, -V1 / std::sqrt(spec.q)));
    double lr = lam.real();
    if (!(lr > 0.5)) return empty_with(Method::closed_form, "no bound states: Re(lambda) <= 1/2");
    for (int n = 0; n < lr - 0.5; ++n) {
        double w = n + 0.5 - lr;
        s.levels.push_back({n, u * (V0 + V2) - u * w * w});
    }
    finish(s);
    return s;
}

std::vector<double> cardano_cubic(double R, double S, double T, bool* has_complex_pair) {
    double P = (3.0 * S - R * R) / 3.0;
    double Q = 2.0 * R * R * R / 27.0 - R * S / 3.0 + T;
    double D = std::pow(P / 3.0, 3) + 0.25 * Q * Q;
    std::vector<double> roots;
    if (D > 0.0) {
        double sd = std::sqrt(D);
        double t = std::cbrt(-0.5 * Q + sd) + std::cbrt(-0.5 * Q - sd);
        roots.push_back(t - R / 3.0);
        if (has_complex_pair) *has_complex_pair = true;
    } else {
        // three real roots (trigonometric form)
        if (has_complex_pair) *has_complex_pair = false;
        if (P >= 0.0) {
            // only possible with P ~ 0: triple root
            roots.push_back(std::cbrt(-Q) - R / 3.0);
        } else {
            double m = 2.0 * std::sqrt(-P / 3.0);
            double arg = 3.0 * Q / (P * m);
            arg = std::max(-1.0, std::min(1.0, arg));
            double th = std::acos(arg);
            for (int k = 0; k < 3; ++k)
                roots.push_back(m * std::cos((th - 2.0 * PI * k) / 3.0) - R / 3.0);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

CubicCoefficients v7_cubic(const PotentialSpec& spec, int n) {
    if (n < 0) throw ContractError("v7_cubic: n >= 0 required");
    double At = spec.param("A") / std::sqrt(spec.q);
    double BC = spec.param("B") + spec.param("C");
    double nt = n + 0.5, nt2 = nt * nt;
    double lam = BC + nt2;
    double K = lam * lam + 0.25 * At * At + 4.0 * nt2 * BC;
    CubicCoefficients c;
    c.R = (12.0 * nt2 * lam - 20.0 * nt2 * nt2 - lam * lam) / (4.0 * nt2);
    c.S = (16.0 * nt2 * lam * (lam + BC) - 2.0 * (lam + 4.0 * nt2) * K) / (4.0 * nt2);
    c.T = (16.0 * nt2 * lam * lam * BC - K * K) / (4.0 * nt2);
    c.P = (3.0 * c.S - c.R * c.R) / 3.0;
    c.Q = 2.0 * c.R * c.R * c.R / 27.0 - c.R * c.S / 3.0 + c.T;
    c.D = std::pow(c.P / 3.0, 3) + 0.25 * c.Q * c.Q;
    return c;
}

cplx v7_quantization_residual(const PotentialSpec& spec, int n, double E) {
    double At = spec.param("A") / std::sqrt(spec.q);
    double BC = spec.param("B") + spec.param("C");
    cplx nu7 = std::sqrt(cplx(At - E, 0.0));
    cplx eta7 = std::sqrt(cplx(-At - E, 0.0));
    cplx kap = std::sqrt(cplx(BC - E, 0.0));
    return 0.5 * (nu7 - eta7) - (n + 0.5) - kap;
}

Spectrum spectrum_v7(const PotentialSpec& spec) {
    Spectrum s;
    s.method = Method::cardano;
    double u = spec.unit();
    double At = spec.param("A") / std::sqrt(spec.q);
    double B = spec.param("B"), C = spec.param("C");
    if (std::fabs(C + 0.75) > 1e-12) {
        s.diagnostics.push_back("C differs from -3/4: potential is not conditionally solvable");
        return s;
    }
    if (!(B < 0.0 && At > 0.0 && At < std::fabs(B)))
        s.diagnostics.push_back("existence condition (B < 0, 0 < A/sqrt(q) < |B|) violated");
    double Emax = std::min(-At, B + C); // continuum edge in units of u
    for (int n = 0;; ++n) {
        CubicCoefficients cc = v7_cubic(spec, n);
        std::vector<double> roots = cardano_cubic(cc.R, cc.S, cc.T);
        std::vector<double> admissible;
        for (double r : roots) {
            double E = -r;
            if (!(E < Emax)) continue;
            if (std::abs(v7_quantization_residual(spec, n, E)) < 1e-10)
                admissible.push_back(E);
        }
        if (admissible.empty()) {
            if (n == 0)
                s.diagnostics.push_back("no cubic root passes the quantization filter at n = 0");
            break;
        }
        if (admissible.size() > 1)
            throw NumericError("spectrum_v7: quantization filter not unique at n = " +
                               std::to_string(n));
        s.levels.push_back({n, u * admissible[0]});
    }
    // the cubic yields successively shallower levels; report in increasing order
    std::sort(s.levels.begin(), s.levels.end(),
              [](const Level& a, const Level& b) { return a.energy < b.energy; });
    for (size_t i = 0; i < s.levels.size(); ++i) s.levels[i].n = (int)i;
    finish(s);
    return s;
}

namespace {

// Decaying solution of the V8 pseudo-problem at the reference point u0 = 2.5,
// used to make the root condition a real-valued indicator.
cplx v8_phi_ref(double f, double ht, double E) {
    cplx lam = std::sqrt(cplx(f + 1.0 - E, -ht));
    cplx kap = std::sqrt(cplx(1.0 - E, 0.0));
    cplx a = 0.5 - lam.real() + kap;
    double u0 = 2.5;
    cplx w = cplx(1.0, std::sinh(u0)) / 2.0;
    return std::pow(w, 0.25 - 0.5 * lam) * std::pow(1.0 - w, 0.25 - 0.5 * std::conj(lam)) *
           std::pow(w, -a) * hyp2f1(a, a + lam, 1.0 + 2.0 * kap, 1.0 / w);
}

} // namespace

V8Condition v8_condition(const PotentialSpec& spec, double E) {
    double u = spec.unit();
    double f = spec.param("f");
    double ht = spec.param("h1") / std::sqrt(spec.q);
    double Er = E / u;
    cplx lam = std::sqrt(cplx(f + 1.0 - Er, -ht));
    cplx kap = std::sqrt(cplx(1.0 - Er, 0.0));
    cplx A = 0.5 - lam.real() + kap;
    cplx B = A + lam;
    cplx Cc = 1.0 + 2.0 * kap;
    const cplx ipi(0.0, PI);
    cplx t1 = gamma_c(Cc) * gamma_c(B - A) / (gamma_c(B) * gamma_c(Cc - A)) *
              std::exp(-A * (std::log(2.0) + ipi)) *
              hyp2f1(A, A - Cc + 1.0, A - B + 1.0, 0.5);
    cplx t2 = gamma_c(Cc) * gamma_c(A - B) / (gamma_c(A) * gamma_c(Cc - B)) *
              std::exp(-B * (std::log(2.0) + ipi)) *
              hyp2f1(B, B - Cc + 1.0, B - A + 1.0, 0.5);
    V8Condition out;
    out.value = t1 + t2;
    out.scale = std::max(std::abs(t1), std::abs(t2));
    return out;
}

Spectrum spectrum_v8(const PotentialSpec& spec, std::optional<std::pair<double, double>> window,
                     int scan_points) {
    Spectrum s;
    s.method = Method::transcendental;
    double u = spec.unit();
    double f = spec.param("f");
    double ht = spec.param("h1") / std::sqrt(spec.q);
    if (std::fabs(spec.param("C") + 0.75) > 1e-12) {
        s.diagnostics.push_back("C differs from -3/4: potential is not conditionally solvable");
        return s;
    }
    double lo = -10.0 * u * std::max(std::fabs(f + 1.0), 1.0);
    double hi = u - 1e-6;
    if (window) {
        lo = window->first;
        hi = window->second;
    }
    if (!(lo < hi)) throw ContractError("spectrum_v8: empty window");
    if (scan_points < 10) throw ContractError("spectrum_v8: scan_points too small");

    // real indicator: phi_+(wall)/phi_+(reference) is real for real E below
    // threshold and changes sign exactly at the bound states
    auto indicator = [&](double E) -> cplx {
        V8Condition c = v8_condition(spec, E);
        cplx kap = std::sqrt(cplx(1.0 - E / u, 0.0));
        return std::pow(cplx(2.0, 0.0), kap) * c.value / v8_phi_ref(f, ht, E / u);
    };

    std::vector<double> Es(scan_points);
    std::vector<cplx> vals(scan_points);
    std::vector<bool> ok(scan_points, false);
    for (int i = 0; i < scan_points; ++i) {
        Es[i] = lo + (hi - lo) * i / (scan_points - 1.0);
        try {
            vals[i] = indicator(Es[i]);
            ok[i] = std::isfinite(vals[i].real()) && std::isfinite(vals[i].imag());
        } catch (const Error&) {
            s.diagnostics.push_back("singular sample skipped at E = " + std::to_string(Es[i]));
        }
    }
    int idx = 0;
    for (int i = 0; i + 1 < scan_points; ++i) {
        if (!ok[i] || !ok[i + 1]) continue;
        if (!(vals[i].real() * vals[i + 1].real() < 0.0)) continue;
        double a = Es[i], b = Es[i + 1];
        double bracket_scale = std::max(std::abs(vals[i]), std::abs(vals[i + 1]));
        double fa = vals[i].real();
        cplx last = vals[i];
        for (int it = 0; it < 120; ++it) {
            double m = 0.5 * (a + b);
            cplx fm;
            try {
                fm = indicator(m);
            } catch (const Error&) {
                m = std::nextafter(m, b);
                fm = indicator(m);
            }
            last = fm;
            if (fa * fm.real() <= 0.0)
                b = m;
            else {
                a = m;
                fa = fm.real();
            }
            if (b - a < 1e-15 * (1.0 + std::fabs(a))) break;
        }
        double root = 0.5 * (a + b);
        V8Condition c = v8_condition(spec, root);
        if (c.scale > 0.0 && std::abs(c.value) / c.scale < 1e-10 &&
            std::abs(last.imag()) < 1e-8 * std::max(1.0, bracket_scale)) {
            s.levels.push_back({idx++, root});
        }
    }
    if (s.levels.empty() && s.diagnostics.empty())
        s.diagnostics.push_back("no sign change of the root condition in the window");
    finish(s);
    return s;
}

Spectrum spectrum(const PotentialSpec& spec) {
    switch (spec.kind) {
        case Kind::V1: return spectrum_v1(spec);
        case Kind::V2: return spectrum_v2(spec);
        case Kind::V3: return spectrum_v3(spec);
        case Kind::V4: return spectrum_v4(spec);
        case Kind::V5: return spectrum_v5(spec);
        case Kind::V6: return spectrum_v6(spec);
        case Kind::V7: return spectrum_v7(spec);
        case Kind::V8: return spectrum_v8(spec);
        case Kind::V7p:
        case Kind::V8p: {
            // no closed form; numeric oracle as an extra feature
            Spectrum s;
            s.method = Method::numeric_oracle;
            ShiftedPotential sp = reduce_to_shifted(spec);
            GridProblem gp;
            gp.V = sp.V;
            gp.hbar = spec.hbar;
            gp.mass = spec.mass;
            if (sp.half_line) {
                gp.x_min = 0.05;
                gp.x_max = 40.0;
                gp.wall_series = true;
            } else {
                gp.x_min = -30.0;
                gp.x_max = 40.0;
            }
            gp.n_points = 8000;
            int k = count_below(gp, sp.threshold - 1e-9);
            if (k == 0) {
                s.diagnostics.push_back("numeric oracle found no levels below threshold");
                return s;
            }
            auto evs = refine(gp, k);
            for (int i = 0; i < k; ++i) s.levels.push_back({i, evs.extrapolated[i]});
            s.diagnostics.push_back("numeric oracle estimate (no closed form available)");
            finish(s);
            return s;
        }
    }
    throw ContractError("spectrum: bad kind");
}

QReductionReport q_reduction_check(const PotentialSpec& spec) {
    QReductionReport rep;
    if (!(spec.kind >= Kind::V1 && spec.kind <= Kind::V6))
        throw ContractError("q_reduction_check: kinds V1..V6 only");
    PotentialSpec eq = spec;
    eq.q = 1.0;
    double q = spec.q, sq = std::sqrt(q);
    switch (spec.kind) {
        case Kind::V1: eq.params["nu"] = tilde(spec.param("nu"), q); break;
        case Kind::V2:
            eq.params["eta"] = tilde(spec.param("eta"), q);
            eq.params["nu"] = tilde(spec.param("nu"), q);
            break;
        case Kind::V3: eq.params["lambda"] = tilde(spec.param("lambda"), q); break;
        case Kind::V4: eq.params["lambda"] = tilde(spec.param("lambda"), q); break;
        case Kind::V5: eq.params["V2"] = spec.param("V2") / sq; break;
        case Kind::V6: eq.params["V1"] = spec.param("V1") / sq; break;
        default: break;
    }
    Spectrum a = spectrum(spec), b = spectrum(eq);
    if (a.levels.size() != b.levels.size()) {
        rep.pass = false;
        rep.details.push_back("level count mismatch: " + std::to_string(a.levels.size()) +
                              " vs " + std::to_string(b.levels.size()));
        return rep;
    }
    for (size_t i = 0; i < a.levels.size(); ++i) {
        double diff = std::fabs(a.levels[i].energy - b.levels[i].energy) /
                      std::max(1.0, std::fabs(a.levels[i].energy));
        rep.max_diff = std::max(rep.max_diff, diff);
        if (diff > 1e-12) {
            rep.pass = false;
            rep.details.push_back("level " + std::to_string(i) + ": " +
                                  std::to_string(a.levels[i].energy) + " vs " +
                                  std::to_string(b.levels[i].energy));
        }
    }
    return rep;
}

void to_json(nlohmann::json& j, const Spectrum& s) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : s.levels) levels.push_back({{"n", l.n}, {"E", l.energy}});
    j = nlohmann::json{{"levels", levels},
                       {"n_max", s.n_max},
                       {"method", method_to_string(s.method)},
                       {"diagnostics", s.diagnostics}};
}

nlohmann::json spectrum_json(const PotentialSpec& spec, const Spectrum& s) {
    nlohmann::json j;
    to_json(j, s);
    j["kind"] = kind_to_string(spec.kind);
    j["q"] = spec.q;
    j["params"] = spec.params;
    return j;
}

} // namespace qdh
