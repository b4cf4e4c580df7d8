#include "qdh/wavefun.hpp"

#include <algorithm>
#include <cmath>

#include "qdh/errors.hpp"
#include "qdh/specfun.hpp"

namespace qdh {

namespace {

double tilde(double p, double q) { return std::sqrt((p * p - 0.25) / q + 0.25); }

// Shifted-frame psi(y), unnormalized. E in physical units.
double psi_shifted(const PotentialSpec& spec, int n, double E, double y) {
    double u = spec.unit();
    double q = spec.q;
    switch (spec.kind) {
        case Kind::V1: {
            // evaluate on the y >= 0 side (parity) to avoid the cancellation
            // of the Legendre connection formula in the decaying tail
            double lt = tilde(spec.param("nu"), q);
            double sgn = (y < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
            return sgn * legendre_p(lt - 0.5, n - lt + 0.5, std::tanh(std::fabs(y)));
        }
        case Kind::V2: {
            if (y <= 0.0) throw DomainError("psi_value: y <= 0 on a half-line kind");
            double et = tilde(spec.param("eta"), q);
            double nt = tilde(spec.param("nu"), q);
            double t = std::tanh(y);
            cplx F = hyp2f1(-n, cplx(nt - n), cplx(1.0 + et), t * t);
            return std::pow(std::sinh(y), et + 0.5) *
                   std::pow(std::cosh(y), 2.0 * n - nt + 0.5) * F.real();
        }
        case Kind::V3: {
            if (y <= 0.0) throw DomainError("psi_value: y <= 0 on a half-line kind");
            double a = spec.param("alpha") / u;
            double s = 2.0 * tilde(spec.param("lambda"), q);
            double S = s + 2.0 * n + 1.0;
            double k1 = 0.5 * (1.0 + 0.5 * S + a / S);
            double xi = std::exp(-2.0 * y);
            cplx P = jacobi_p(n, cplx(2.0 * k1 - 2.0 * n - s - 2.0), cplx(s), 1.0 - 2.0 * xi);
            return std::pow(1.0 - xi, 0.5 * (s + 1.0)) *
                   std::exp(-2.0 * y * (k1 - 0.5 * s - n - 1.0)) * P.real();
        }
        case Kind::V4: {
            double b = spec.param("beta") / u;
            double s = 2.0 * tilde(spec.param("lambda"), q);
            double Sp = s - 2.0 * n - 1.0;
            double k2 = 0.5 * (1.0 + 0.5 * Sp - b / Sp);
            double t = std::tanh(y);
            cplx P = jacobi_p(n, cplx(s - 2.0 * k2 - 2.0 * n), cplx(2.0 * k2 - 1.0), t);
            return std::pow(1.0 - t, 0.5 * s - k2 - n) * std::pow(1.0 + t, k2 - 0.5) * P.real();
        }
        case Kind::V5: {
            if (y <= 0.0) throw DomainError("psi_value: y <= 0 on a half-line kind");
            double V1 = spec.param("V1") / u, V2 = spec.param("V2") / u;
            double sq = std::sqrt(q);
            double eta = std::sqrt(V1 + V2 / sq + 0.25), nu = std::sqrt(V1 - V2 / sq + 0.25);
            double k1 = 0.5 * (1.0 + nu), k2 = 0.5 * (1.0 + eta);
            double ch = std::cosh(0.5 * y);
            cplx P = jacobi_p(n, cplx(2.0 * k2 - 1.0), cplx(2.0 * (k1 - k2 - n) - 1.0),
                              2.0 / (ch * ch) - 1.0);
            return std::pow(std::sinh(0.5 * y), 2.0 * k2 - 0.5) *
                   std::pow(ch, 2.0 * n - 2.0 * k1 + 1.5) * P.real();
        }
        default: throw ContractError("psi_value: closed form available for V1..V6 only");
    }
}

// V6 needs a global phase fix, so it is evaluated on the whole grid at once.
std::vector<double> psi_v6_grid(const PotentialSpec& spec, int n,
                                const std::vector<double>& ys) {
    double u = spec.unit();
    cplx lam = std::sqrt(cplx(0.25 + spec.param("V2") / u,
                              -spec.param("V1") / u / std::sqrt(spec.q)));
    cplx lamc = std::conj(lam);
    std::vector<cplx> vals(ys.size());
    double vmax = 0.0;
    size_t imax = 0;
    for (size_t i = 0; i < ys.size(); ++i) {
        cplx is(0.0, std::sinh(ys[i]));
        cplx w = (1.0 + is) / 2.0;
        vals[i] = std::pow(w, 0.5 * (0.5 - lam)) * std::pow(1.0 - w, 0.5 * (0.5 - lamc)) *
                  jacobi_p(n, -lamc, -lam, is);
        if (std::abs(vals[i]) > vmax) {
            vmax = std::abs(vals[i]);
            imax = i;
        }
    }
    if (vmax == 0.0) throw NumericError("psi_v6: identically zero");
    cplx phase = std::conj(vals[imax]) / std::abs(vals[imax]);
    std::vector<double> out(ys.size());
    double imag_max = 0.0;
    for (size_t i = 0; i < ys.size(); ++i) {
        cplx v = phase * vals[i];
        out[i] = v.real();
        imag_max = std::max(imag_max, std::fabs(v.imag()));
    }
    if (imag_max > 1e-8 * vmax)
        throw NumericError("psi_v6: residual imaginary part after phase fix");
    return out;
}

} // namespace

double psi_value(const PotentialSpec& spec, int n, double E, double x) {
    double y = x - spec.ln_sqrt_q();
    if (spec.kind == Kind::V6) {
        // single-point evaluation: phase-fix against the origin
        std::vector<double> ys = {0.0, y};
        return psi_v6_grid(spec, n, ys)[1];
    }
    return psi_shifted(spec, n, E, y);
}

BoundState bound_state(const PotentialSpec& spec, int n, double E, int n_points) {
    if (n_points < 16) throw ContractError("bound_state: n_points too small");
    ShiftedPotential sp = reduce_to_shifted(spec);
    double u = spec.unit();
    double gap = sp.threshold - E;
    if (!(gap > 0.0)) throw ContractError("bound_state: E not below threshold");
    double kappa = std::sqrt(gap / u);
    double L = std::max(20.0, 20.0 / kappa);

    BoundState bs;
    bs.n = n;
    bs.energy = E;
    for (int attempt = 0;; ++attempt) {
        double ylo = sp.half_line ? L / (n_points - 1.0) : -L;
        double yhi = L;
        std::vector<double> ys(n_points);
        for (int i = 0; i < n_points; ++i)
            ys[i] = ylo + (yhi - ylo) * i / (n_points - 1.0);
        std::vector<double> psi;
        if (spec.kind == Kind::V6)
            psi = psi_v6_grid(spec, n, ys);
        else {
            psi.resize(n_points);
            for (int i = 0; i < n_points; ++i) psi[i] = psi_shifted(spec, n, E, ys[i]);
        }
        double peak = 0.0;
        for (double v : psi) peak = std::max(peak, v * v);
        bool tails_ok = psi.front() * psi.front() < 1e-16 * peak &&
                        psi.back() * psi.back() < 1e-16 * peak;
        if (sp.half_line) tails_ok = psi.back() * psi.back() < 1e-16 * peak;
        if (!tails_ok && attempt < 8 && L < 400.0) {
            L *= 1.5;
            continue;
        }
        bs.x.resize(n_points);
        for (int i = 0; i < n_points; ++i) bs.x[i] = ys[i] + sp.shift;
        bs.psi = std::move(psi);
        break;
    }

    // trapezoid normalization
    double norm2 = 0.0;
    for (size_t i = 0; i + 1 < bs.x.size(); ++i)
        norm2 += 0.5 * (bs.x[i + 1] - bs.x[i]) *
                 (bs.psi[i] * bs.psi[i] + bs.psi[i + 1] * bs.psi[i + 1]);
    if (!(norm2 > 0.0)) throw NumericError("bound_state: zero norm");
    double inv = 1.0 / std::sqrt(norm2);
    for (double& v : bs.psi) v *= inv;

    // sign fix: first antinode positive
    double amax = 0.0;
    for (double v : bs.psi) amax = std::max(amax, std::fabs(v));
    for (double v : bs.psi) {
        if (std::fabs(v) > 0.2 * amax) {
            if (v < 0.0)
                for (double& w : bs.psi) w = -w;
            break;
        }
    }

    // node count with a noise floor
    double floor_v = 1e-6 * amax;
    int nodes = 0;
    double prev = 0.0;
    for (double v : bs.psi) {
        if (std::fabs(v) <= floor_v) continue;
        if (prev != 0.0 && v * prev < 0.0) ++nodes;
        prev = v;
    }
    bs.nodes = nodes;
    return bs;
}

} // namespace qdh
