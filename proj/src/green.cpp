#include "qdh/green.hpp"

#include <algorithm>
#include <cmath>

#include "qdh/errors.hpp"
#include "qdh/specfun.hpp"
#include "qdh/spectra.hpp"

namespace qdh {

namespace {

double tilde(double p, double q) { return std::sqrt((p * p - 0.25) / q + 0.25); }

// Legendre P_nu^mu on the cut for complex order mu.
cplx legendre_pc(double nu, cplx mu, double x) {
    return std::pow((1.0 + x) / (1.0 - x), 0.5 * mu) / gamma_c(1.0 - mu) *
           hyp2f1(-nu, nu + 1.0, 1.0 - mu, 0.5 * (1.0 - x));
}

cplx green_v1(const PotentialSpec& spec, double ylo, double yhi, cplx E) {
    double lt = tilde(spec.param("nu"), spec.q);
    cplx kap = std::sqrt(-E);
    return 0.5 * gamma_c(kap - lt + 0.5) * gamma_c(kap + lt + 0.5) *
           legendre_pc(lt - 0.5, -kap, std::tanh(ylo)) *
           legendre_pc(lt - 0.5, -kap, -std::tanh(yhi));
}

// Modified Poeschl-Teller template shared by V2, V5 and V7: indices m1, m2,
// L from (eta, nu), frequency w, continuum offset const_.
cplx green_pt(double eta, double nu, double w, double const_, double coef, double ylo,
              double yhi, cplx E) {
    cplx kap = std::sqrt(const_ - E) / w;
    cplx m1 = 0.5 * (eta + kap), m2 = 0.5 * (eta - kap);
    double L = 0.5 * (nu - 1.0);
    cplx a = m1 - L, b = m1 + L + 1.0;
    auto pre = [&](double y) {
        return std::pow(std::tanh(w * y), m1 + m2 + 0.5) *
               std::pow(std::cosh(w * y), -(m1 - m2));
    };
    double tl = std::tanh(w * ylo), ch = std::cosh(w * yhi);
    return coef * gamma_c(m1 - L) * gamma_c(m1 + L + 1.0) /
           (gamma_c(m1 + m2 + 1.0) * gamma_c(m1 - m2 + 1.0)) * pre(ylo) * pre(yhi) *
           hyp2f1(a, b, m1 + m2 + 1.0, tl * tl) * hyp2f1(a, b, m1 - m2 + 1.0, 1.0 / (ch * ch));
}

cplx green_v3(const PotentialSpec& spec, double ylo, double yhi, cplx E) {
    double u = spec.unit();
    double a0 = spec.param("alpha") / u;
    double lt = tilde(spec.param("lambda"), spec.q);
    cplx sig = std::sqrt(-a0 - E), tau = std::sqrt(a0 - E);
    cplx LE = -0.5 + 0.5 * tau;
    cplx m1 = lt + 0.5 * sig, m2 = lt - 0.5 * sig;
    cplx a = m1 - LE, b = m1 + LE + 1.0;
    auto zeta = [](double y) { return 1.0 - std::exp(-2.0 * y); };
    auto xi = [](double y) { return std::exp(-2.0 * y); };
    auto pre = [&](double y) {
        return std::pow(zeta(y), 0.5 * (m1 + m2 + 1.0)) * std::pow(xi(y), 0.5 * (m1 - m2));
    };
    return 0.5 * gamma_c(m1 - LE) * gamma_c(m1 + LE + 1.0) /
           (gamma_c(m1 + m2 + 1.0) * gamma_c(m1 - m2 + 1.0)) * pre(ylo) * pre(yhi) *
           hyp2f1(a, b, m1 + m2 + 1.0, zeta(ylo)) * hyp2f1(a, b, m1 - m2 + 1.0, xi(yhi));
}

cplx green_v4(const PotentialSpec& spec, double ylo, double yhi, cplx E) {
    double u = spec.unit();
    double b0 = spec.param("beta") / u;
    double lt = tilde(spec.param("lambda"), spec.q);
    cplx km = std::sqrt(-b0 - E), kp = std::sqrt(b0 - E);
    cplx LB = lt - 0.5;
    cplx m1 = 0.5 * (km + kp), m2 = 0.5 * (km - kp);
    cplx a = m1 - LB, b = m1 + LB + 1.0;
    auto up = [](double y) { return 0.5 * (1.0 + std::tanh(y)); };
    auto um = [](double y) { return 0.5 * (1.0 - std::tanh(y)); };
    auto pre = [&](double y) {
        return std::pow(up(y), 0.5 * (m1 + m2)) * std::pow(um(y), 0.5 * (m1 - m2));
    };
    return 0.5 * gamma_c(m1 - LB) * gamma_c(m1 + LB + 1.0) /
           (gamma_c(m1 + m2 + 1.0) * gamma_c(m1 - m2 + 1.0)) * pre(ylo) * pre(yhi) *
           hyp2f1(a, b, m1 + m2 + 1.0, up(ylo)) * hyp2f1(a, b, m1 - m2 + 1.0, um(yhi));
}

// V7 in the sinh-substitution variable v = arcsinh(e^y): a modified
// Poeschl-Teller form at half argument with a measure prefactor.
// Evaluation only; its pole structure reproduces the cubic's levels.
cplx green_v7(const PotentialSpec& spec, double ylo, double yhi, cplx E) {
    double At = spec.param("A") / std::sqrt(spec.q);
    double BC = spec.param("B") + spec.param("C");
    cplx eta7 = std::sqrt(-E - At), nu7 = std::sqrt(At - E);
    double vlo = std::asinh(std::exp(ylo)), vhi = std::asinh(std::exp(yhi));
    cplx kap = 2.0 * std::sqrt(BC - E); // template kappa at frequency 1/2
    cplx m1 = 0.5 * (eta7 + kap), m2 = 0.5 * (eta7 - kap);
    cplx L = 0.5 * (nu7 - 1.0);
    cplx a = m1 - L, b = m1 + L + 1.0;
    auto pre = [&](double v) {
        return std::pow(std::tanh(0.5 * v), m1 + m2 + 0.5) *
               std::pow(std::cosh(0.5 * v), -(m1 - m2));
    };
    double tl = std::tanh(0.5 * vlo), ch = std::cosh(0.5 * vhi);
    cplx G = gamma_c(m1 - L) * gamma_c(m1 + L + 1.0) /
             (gamma_c(m1 + m2 + 1.0) * gamma_c(m1 - m2 + 1.0)) * pre(vlo) * pre(vhi) *
             hyp2f1(a, b, m1 + m2 + 1.0, tl * tl) * hyp2f1(a, b, m1 - m2 + 1.0, 1.0 / (ch * ch));
    return std::sqrt(1.0 / (std::tanh(vlo) * std::tanh(vhi))) * G;
}

// ---- Wronskian machinery for V6 and V8 --------------------------------
//
// Both reduce, via w = (1 + i sinh y)/2, to a hypergeometric equation with
// indices (lam, lamp) and decay rate kap. The solution decaying at y -> +inf
// (phi_plus) and at y -> -inf (phi_minus) have 2F1 representations in 1/w
// and 1/(1-w). Where a representation's series region is unsafe, the
// solution is carried by RK4 integration of the (real-potential) ODE from a
// safe anchor, which is numerically stable because each integration runs in
// the solution's growth direction.

struct Phi {
    cplx f, df;
};

struct WronskCtx {
    cplx lam, lamp, kap, a;
    cplx E;                            // reduced energy
    std::function<double(double)> Vred; // reduced shifted potential
};

Phi phip_rep(const WronskCtx& c, double y) {
    cplx w = cplx(1.0, std::sinh(y)) / 2.0;
    cplx z = 1.0 / w;
    cplx p1 = 0.25 - 0.5 * c.lam, p2 = 0.25 - 0.5 * c.lamp;
    cplx cc = 1.0 + 2.0 * c.kap;
    cplx F = hyp2f1(c.a, c.a + c.lam, cc, z);
    cplx Fd = hyp2f1_deriv(c.a, c.a + c.lam, cc, z);
    cplx f = std::pow(w, p1 - c.a) * std::pow(1.0 - w, p2) * F;
    cplx logd = (p1 - c.a) / w - p2 / (1.0 - w) - Fd / F * z * z;
    cplx wp = cplx(0.0, 0.5 * std::cosh(y));
    return {f, f * logd * wp};
}

Phi phim_rep(const WronskCtx& c, double y) {
    cplx w = cplx(1.0, std::sinh(y)) / 2.0;
    cplx z = 1.0 / (1.0 - w);
    cplx p1 = 0.25 - 0.5 * c.lam, p2 = 0.25 - 0.5 * c.lamp;
    cplx cc = 1.0 + 2.0 * c.kap;
    cplx F = hyp2f1(c.a, c.a + c.lamp, cc, z);
    cplx Fd = hyp2f1_deriv(c.a, c.a + c.lamp, cc, z);
    cplx f = std::pow(w, p1) * std::pow(1.0 - w, p2 - c.a) * F;
    cplx logd = p1 / w - (p2 - c.a) / (1.0 - w) + Fd / F * z * z;
    cplx wp = cplx(0.0, 0.5 * std::cosh(y));
    return {f, f * logd * wp};
}

// RK4 for f'' = (Vred - E) f from y0 to y1.
Phi rk_carry(const WronskCtx& c, Phi s, double y0, double y1) {
    int n = (int)std::ceil(std::fabs(y1 - y0) / 2e-3);
    n = std::max(n, 1);
    double h = (y1 - y0) / n;
    auto rhs = [&](double y, const Phi& p) -> Phi {
        return {p.df, (c.Vred(y) - c.E) * p.f};
    };
    double y = y0;
    for (int i = 0; i < n; ++i) {
        Phi k1 = rhs(y, s);
        Phi k2 = rhs(y + 0.5 * h, {s.f + 0.5 * h * k1.f, s.df + 0.5 * h * k1.df});
        Phi k3 = rhs(y + 0.5 * h, {s.f + 0.5 * h * k2.f, s.df + 0.5 * h * k2.df});
        Phi k4 = rhs(y + h, {s.f + h * k3.f, s.df + h * k3.df});
        s.f += h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
        s.df += h / 6.0 * (k1.df + 2.0 * k2.df + 2.0 * k3.df + k4.df);
        y += h;
        // renormalize to avoid overflow along growth directions
        double m = std::max(std::abs(s.f), std::abs(s.df));
        if (m > 1e100) {
            s.f /= m;
            s.df /= m;
        }
    }
    return s;
}

// V6: full line. phi_plus rep is safe for y >= 2.2, phi_minus for y <= -2.2
// (the analytic continuation of either rep to the far side picks up the
// wrong branch, so the gap is bridged by integration).
Phi v6_phip(const WronskCtx& c, double y) {
    if (y >= 2.2) return phip_rep(c, y);
    return rk_carry(c, phip_rep(c, 2.5), 2.5, y);
}
Phi v6_phim(const WronskCtx& c, double y) {
    if (y <= -2.2) return phim_rep(c, y);
    return rk_carry(c, phim_rep(c, -2.5), -2.5, y);
}

cplx green_v6(const PotentialSpec& spec, double ylo, double yhi, cplx E) {
    double u = spec.unit();
    double V0 = spec.param("V0") / u, V1 = spec.param("V1") / u, V2 = spec.param("V2") / u;
    WronskCtx c;
    c.lam = std::sqrt(cplx(0.25 + V2, -V1 / std::sqrt(spec.q)));
    c.lamp = std::conj(c.lam);
    c.E = E;
    c.kap = std::sqrt(V0 + V2 - E);
    c.a = 0.5 - 0.5 * (c.lam + c.lamp) + c.kap;
    ShiftedPotential sp = reduce_to_shifted(spec);
    c.Vred = [sp, u](double y) { return sp.V(y) / u; };
    Phi pm_hi = v6_phim(c, yhi);
    Phi pp_hi = v6_phip(c, yhi);
    Phi pm_lo = (ylo == yhi) ? pm_hi : v6_phim(c, ylo);
    cplx W = pp_hi.df * pm_hi.f - pp_hi.f * pm_hi.df;
    return -pp_hi.f * pm_lo.f / W;
}

// RK4 on a log grid (Y1 = psi, Y2 = z psi'), stable through the z^-2 wall
// singularity.
Phi lnrk_carry(const WronskCtx& c, Phi p, double z0, double z1) {
    double t0 = std::log(z0), t1 = std::log(z1);
    int n = std::max(1, (int)std::ceil(std::fabs(t1 - t0) / 1e-3));
    double h = (t1 - t0) / n;
    cplx Y1 = p.f, Y2 = z0 * p.df;
    auto rhs = [&](double t, cplx y1, cplx y2, cplx& d1, cplx& d2) {
        double zz = std::exp(t);
        d1 = y2;
        d2 = y2 + zz * zz * (c.Vred(zz) - c.E) * y1;
    };
    double t = t0;
    for (int i = 0; i < n; ++i) {
        cplx k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        rhs(t, Y1, Y2, k1a, k1b);
        rhs(t + 0.5 * h, Y1 + 0.5 * h * k1a, Y2 + 0.5 * h * k1b, k2a, k2b);
        rhs(t + 0.5 * h, Y1 + 0.5 * h * k2a, Y2 + 0.5 * h * k2b, k3a, k3b);
        rhs(t + h, Y1 + h * k3a, Y2 + h * k3b, k4a, k4b);
        Y1 += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        Y2 += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        t += h;
    }
    return {Y1, Y2 / z1};
}

// V8's pseudo-problem lives in the coordinate v = arccosh(e^z): the
// physical decaying solution is psi(z) = sqrt(tanh v) phi_plus(v). The rep
// is used where its series is safe (v >= 1.8, i.e. z >= 1.14); below, the
// solution is carried by integration in z (downward, its growth direction;
// the principal-branch continuation of the rep would switch solutions).
Phi v8_phip_anchor(const WronskCtx& c, double z) {
    double v = std::acosh(std::exp(z));
    Phi p = phip_rep(c, v);
    double t = std::sqrt(std::tanh(v));
    double tp = 1.0 / (std::cosh(v) * std::cosh(v)) / (2.0 * t);
    double dvdz = 1.0 / std::tanh(v);
    return {t * p.f, (tp * p.f + t * p.df) * dvdz};
}

Phi v8_phip(const WronskCtx& c, double z) {
    if (z >= 1.2) return v8_phip_anchor(c, z);
    Phi p = rk_carry(c, v8_phip_anchor(c, 1.2), 1.2, std::max(z, 0.1));
    if (z < 0.1) p = lnrk_carry(c, p, 0.1, z);
    return p;
}

// The paper's half-space Dirichlet combination
//   G - G(.,0) G(0,.) / G(0,0)
// is algebraically the Green function built from phi_plus and the solution
// regular at the wall (~ z^(3/4)); the latter is evaluated directly, which
// stays well conditioned at real E where the full-line combination
// degenerates (phi_minus is then proportional to conj(phi_plus)).
//
// Wall solution by Frobenius series in half powers: z^2 V/u - E z^2 =
// sum_j e_j z^(j/2), psi = z^s sum_k a_k z^(k/2).
struct WallSeries {
    cplx e[10];
    double s;
};

WallSeries v8_wall_series(double f, double ht, double C, cplx E) {
    WallSeries ws{};
    const double r2 = std::sqrt(2.0);
    double fm = f - 0.75;
    ws.e[0] = C / 4.0;
    ws.e[1] = 0.0;
    ws.e[2] = 0.5 * (C - fm);
    ws.e[3] = ht / r2;
    ws.e[4] = (f + 1.0) - 0.5 * fm + 5.0 * C / 12.0 - E;
    ws.e[5] = -ht / (2.0 * r2);
    ws.e[6] = (C - fm) / 6.0;
    ws.e[7] = ht / (24.0 * r2);
    ws.e[8] = C / 60.0;
    ws.e[9] = ht / (48.0 * r2);
    double disc = 0.25 + C / 4.0;
    if (disc < 0.0)
        throw NumericError("green_v8: wall exponent complex (C < -1)");
    ws.s = 0.5 + std::sqrt(disc);
    return ws;
}

Phi wall_series_eval(const WallSeries& ws, double z) {
    const int N = 48;
    cplx a[N + 1];
    a[0] = 1.0;
    for (int k = 1; k <= N; ++k) {
        cplx num = 0.0;
        for (int j = 1; j <= std::min(k, 9); ++j) num += ws.e[j] * a[k - j];
        double p = ws.s + 0.5 * k;
        a[k] = num / (p * (p - 1.0) - ws.e[0]);
    }
    double zh = std::sqrt(z), pk = 1.0;
    cplx S = 0.0, Sd = 0.0;
    for (int k = 0; k <= N; ++k) {
        S += a[k] * pk;
        Sd += (ws.s + 0.5 * k) * a[k] * pk;
        pk *= zh;
    }
    double zs = std::pow(z, ws.s);
    return {zs * S, zs * Sd / z};
}

// Canonically normalized wall solution at z: series near the wall, RK4 on a
// log grid through the singular region, plain RK4 beyond.
Phi v8_wall(const WronskCtx& c, const WallSeries& ws, double z) {
    const double z0 = 0.01, zmid = 0.1;
    if (z <= z0) return wall_series_eval(ws, z);
    Phi p = lnrk_carry(c, wall_series_eval(ws, z0), z0, std::min(z, zmid));
    if (z > zmid) p = rk_carry(c, p, zmid, z);
    return p;
}

cplx green_v8(const PotentialSpec& spec, double zlo, double zhi, cplx E) {
    double u = spec.unit();
    double f = spec.param("f");
    double ht = spec.param("h1") / std::sqrt(spec.q);
    WronskCtx c;
    c.E = E;
    c.lam = std::sqrt(f + 1.0 - E - cplx(0.0, ht));
    c.lamp = std::sqrt(f + 1.0 - E + cplx(0.0, ht));
    c.kap = std::sqrt(1.0 - E);
    c.a = 0.5 - 0.5 * (c.lam + c.lamp) + c.kap;
    ShiftedPotential sp = reduce_to_shifted(spec);
    c.Vred = [sp, u](double z) { return sp.V(z) / u; };
    WallSeries ws = v8_wall_series(f, ht, spec.param("C"), E);

    Phi pp = v8_phip(c, zhi);
    Phi w_hi = v8_wall(c, ws, zhi);
    Phi w_lo = (zlo == zhi) ? w_hi : v8_wall(c, ws, zlo);
    cplx W = pp.df * w_hi.f - pp.f * w_hi.df;
    return -pp.f * w_lo.f / W;
}

cplx green_impl(const PotentialSpec& spec, double x1, double x2, cplx E) {
    double u = spec.unit();
    double s = spec.ln_sqrt_q();
    double ylo = std::min(x1, x2) - s, yhi = std::max(x1, x2) - s;
    if (spec.half_line() && ylo <= 0.0)
        throw DomainError("green: coordinate outside the half-line domain");
    cplx Er = E / u;
    cplx G;
    switch (spec.kind) {
        case Kind::V1: G = green_v1(spec, ylo, yhi, Er); break;
        case Kind::V2:
            G = green_pt(tilde(spec.param("eta"), spec.q), tilde(spec.param("nu"), spec.q),
                         1.0, 0.0, 0.5, ylo, yhi, Er);
            break;
        case Kind::V3: G = green_v3(spec, ylo, yhi, Er); break;
        case Kind::V4: G = green_v4(spec, ylo, yhi, Er); break;
        case Kind::V5: {
            double V0 = spec.param("V0") / u, V1 = spec.param("V1") / u,
                   V2 = spec.param("V2") / u;
            double sq = std::sqrt(spec.q);
            double eta = std::sqrt(V1 + V2 / sq + 0.25), nu = std::sqrt(V1 - V2 / sq + 0.25);
            G = green_pt(eta, nu, 0.5, V0 + V1, 1.0, ylo, yhi, Er);
            break;
        }
        case Kind::V6: G = green_v6(spec, ylo, yhi, Er); break;
        case Kind::V7: G = green_v7(spec, ylo, yhi, Er); break;
        case Kind::V8: G = green_v8(spec, ylo, yhi, Er); break;
        default: throw ContractError("green: no closed form for this kind");
    }
    return G / u;
}

bool is_degenerate_2f1(const Error& e) {
    return std::string(e.what()).find("degenerate") != std::string::npos;
}

cplx green_perturbing(const PotentialSpec& spec, double x1, double x2, cplx E) {
    for (int k = 0;; ++k) {
        try {
            return green_impl(spec, x1, x2, E);
        } catch (const DomainError& e) {
            if (k >= 2 || !is_degenerate_2f1(e)) throw;
            E += 1e-12 * std::max(1.0, std::abs(E));
        }
    }
}

} // namespace

cplx green(const PotentialSpec& spec, double x1, double x2, cplx E) {
    if (E.imag() == 0.0 && spec.kind >= Kind::V1 && spec.kind <= Kind::V6) {
        Spectrum sp = spectrum(spec);
        for (const auto& l : sp.levels)
            if (std::fabs(E.real() - l.energy) < 1e-9)
                throw PoleError("green: E at bound state n = " + std::to_string(l.n) +
                                " (E = " + std::to_string(l.energy) + ")");
    }
    return green_perturbing(spec, x1, x2, E);
}

std::vector<double> pole_scan(const PotentialSpec& spec, double E_lo, double E_hi,
                              int resolution) {
    if (spec.kind == Kind::V7)
        throw ContractError("pole_scan: V7's Green function is evaluation-only");
    if (!(spec.kind >= Kind::V1 && spec.kind <= Kind::V6) && spec.kind != Kind::V8)
        throw ContractError("pole_scan: no closed-form Green function for this kind");
    if (!(E_lo < E_hi) || resolution < 2) return {};

    double s = spec.ln_sqrt_q();
    std::vector<double> probes;
    if (spec.half_line())
        probes = {s + 1.0, s + 0.5, s + 1.5};
    else
        probes = {s, s - 0.5, s + 0.5};

    std::vector<double> roots;
    for (double x0 : probes) {
        auto inv = [&](double E) {
            return 1.0 / green_perturbing(spec, x0, x0, cplx(E, 0.0));
        };
        std::vector<double> Es(resolution), re(resolution);
        std::vector<bool> ok(resolution, false);
        for (int i = 0; i < resolution; ++i) {
            Es[i] = E_lo + (E_hi - E_lo) * i / (resolution - 1.0);
            for (int tries = 0; tries < 2 && !ok[i]; ++tries) {
                try {
                    cplx v = inv(Es[i]);
                    re[i] = v.real();
                    ok[i] = std::isfinite(re[i]);
                } catch (const Error&) {
                    // sample sits on a Gamma pole; nudge it
                    Es[i] += 1e-7 * (E_hi - E_lo);
                }
            }
        }
        for (int i = 0; i + 1 < resolution; ++i) {
            if (!ok[i] || !ok[i + 1] || !(re[i] * re[i + 1] < 0.0)) continue;
            double a = Es[i], b = Es[i + 1], fa = re[i];
            double edge = std::max(std::fabs(re[i]), std::fabs(re[i + 1]));
            while (b - a > 1e-9) {
                double m = 0.5 * (a + b);
                double fm;
                try {
                    fm = inv(m).real();
                } catch (const Error&) {
                    fm = fa; // step past a bad sample
                }
                if (fa * fm <= 0.0)
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            double root = 0.5 * (a + b);
            // evaluate the filter slightly off the root: exactly at a true
            // pole the Gamma prefactors themselves throw
            double off = 10.0 * std::max(b - a, 1e-9 * std::max(1.0, std::fabs(root)));
            double v = edge;
            for (double p : {root, root - off, root + off}) {
                try {
                    v = std::min(v, std::fabs(inv(p).real()));
                } catch (const Error&) {
                }
            }
            // keep poles of G (1/G -> 0); drop zeros of G (1/G -> inf)
            if (v < 1e-3 * edge) roots.push_back(root);
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots)
        if (merged.empty() || r - merged.back() > 1e-7) merged.push_back(r);
    return merged;
}

} // namespace qdh
