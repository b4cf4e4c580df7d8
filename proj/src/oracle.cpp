#include "qdh/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qdh/errors.hpp"

namespace qdh {

namespace {

struct Tridiag {
    std::vector<double> d; // diagonal
    double e;              // constant off-diagonal (-u/h^2)
    std::vector<double> x; // interior grid
    double h;
};

// Frobenius-series boundary ratio psi(za)/psi(zb) for a potential with a
// c0/z^2 + c1/z^{3/2} + ... wall at z -> 0 (z measured from wall_pos).
// The z^2 V(z) profile is fitted on the half-integer power basis, the
// recessive solution is seeded from its 4-term series at z = 1e-6 and grown
// to za, zb by RK4 in t = ln z.
double wall_ratio(const GridProblem& p, double E, double za, double zb) {
    const double u = p.unit();
    const int nb = 5; // basis 1, z^{1/2}, z, z^{3/2}, z^2
    const double zref = 1e-5;
    const double zs[6] = {zref, 2 * zref, 3 * zref, 4 * zref, 6 * zref, 8 * zref};

    // least squares via normal equations
    double ata[nb][nb] = {}, atb[nb] = {};
    for (int i = 0; i < 6; ++i) {
        double w = zs[i] * zs[i] * p.V(p.wall_pos + zs[i]) / u;
        double base[nb];
        for (int m = 0; m < nb; ++m) base[m] = std::pow(zs[i], 0.5 * m);
        for (int r = 0; r < nb; ++r) {
            atb[r] += base[r] * w;
            for (int c = 0; c < nb; ++c) ata[r][c] += base[r] * base[c];
        }
    }
    double cf[nb];
    { // gaussian elimination with partial pivoting
        double A[nb][nb + 1];
        for (int r = 0; r < nb; ++r) {
            for (int c = 0; c < nb; ++c) A[r][c] = ata[r][c];
            A[r][nb] = atb[r];
        }
        for (int col = 0; col < nb; ++col) {
            int piv = col;
            for (int r = col + 1; r < nb; ++r)
                if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
            for (int c = 0; c <= nb; ++c) std::swap(A[col][c], A[piv][c]);
            for (int r = col + 1; r < nb; ++r) {
                double f = A[r][col] / A[col][col];
                for (int c = col; c <= nb; ++c) A[r][c] -= f * A[col][c];
            }
        }
        for (int r = nb - 1; r >= 0; --r) {
            double s = A[r][nb];
            for (int c = r + 1; c < nb; ++c) s -= A[r][c] * cf[c];
            cf[r] = s / A[r][r];
        }
    }

    const double c0 = cf[0];
    const double s = 0.5 + std::sqrt(std::max(0.25 + c0, 0.0));
    double dd[5] = {0.0, cf[1], cf[2], cf[3], cf[4] - E / u};
    double a[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (int k = 1; k <= 4; ++k) {
        double den = (s + 0.5 * k) * (s + 0.5 * k - 1.0) - c0;
        double acc = 0.0;
        for (int m = 1; m <= k; ++m) acc += dd[m] * a[k - m];
        a[k] = acc / den;
    }
    const double z0 = 1e-6;
    auto psi_ser = [&](double z) {
        double v = 0.0;
        for (int k = 0; k <= 4; ++k) v += a[k] * std::pow(z, s + 0.5 * k);
        return v;
    };
    auto dpsi_ser = [&](double z) {
        double v = 0.0;
        for (int k = 0; k <= 4; ++k) v += a[k] * (s + 0.5 * k) * std::pow(z, s + 0.5 * k - 1.0);
        return v;
    };

    // RK4 in t = ln z for Y = (psi, z psi'):
    //   Y1' = Y2,  Y2' = Y2 + z^2 (V - E)/u Y1
    double t = std::log(z0);
    double Y1 = psi_ser(z0), Y2 = z0 * dpsi_ser(z0);
    double psi_a = 0.0;
    bool have_a = false;
    auto rhs = [&](double tt, double y1, double y2, double& f1, double& f2) {
        double z = std::exp(tt);
        f1 = y2;
        f2 = y2 + z * z * (p.V(p.wall_pos + z) - E) / u * y1;
    };
    auto integrate_to = [&](double t_end) {
        int nst = 1500;
        double ht = (t_end - t) / nst;
        for (int i = 0; i < nst; ++i) {
            double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
            rhs(t, Y1, Y2, k1a, k1b);
            rhs(t + 0.5 * ht, Y1 + 0.5 * ht * k1a, Y2 + 0.5 * ht * k1b, k2a, k2b);
            rhs(t + 0.5 * ht, Y1 + 0.5 * ht * k2a, Y2 + 0.5 * ht * k2b, k3a, k3b);
            rhs(t + ht, Y1 + ht * k3a, Y2 + ht * k3b, k4a, k4b);
            Y1 += ht / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
            Y2 += ht / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
            t += ht;
            // renormalize to avoid overflow for deep wells
            double sc = std::max(std::fabs(Y1), std::fabs(Y2));
            if (sc > 1e200) {
                Y1 /= sc;
                Y2 /= sc;
                if (have_a) psi_a /= sc;
            }
        }
    };
    integrate_to(std::log(za));
    psi_a = Y1;
    have_a = true;
    integrate_to(std::log(zb));
    if (Y1 == 0.0) throw NumericError("wall_ratio: node at first interior grid point");
    return psi_a / Y1;
}

Tridiag assemble(const GridProblem& p, double E_bc) {
    if (p.n_points < 3) throw ContractError("GridProblem: n_points must be >= 3");
    if (!(p.x_min < p.x_max)) throw ContractError("GridProblem: x_min < x_max required");
    Tridiag t;
    const double u = p.unit();
    t.h = (p.x_max - p.x_min) / (p.n_points - 1);
    int n = p.n_points - 2;
    t.d.resize(n);
    t.x.resize(n);
    for (int i = 0; i < n; ++i) {
        double xi = p.x_min + (i + 1) * t.h;
        double vi = p.V(xi);
        if (!std::isfinite(vi))
            throw NumericError("oracle: non-finite potential at x = " + std::to_string(xi));
        t.x[i] = xi;
        t.d[i] = 2.0 * u / (t.h * t.h) + vi;
    }
    t.e = -u / (t.h * t.h);
    if (p.wall_series) {
        double r = wall_ratio(p, E_bc, p.x_min - p.wall_pos, p.x_min + t.h - p.wall_pos);
        t.d[0] -= r * u / (t.h * t.h);
    }
    return t;
}

// number of eigenvalues of the tridiagonal matrix strictly below x
int sturm_count(const Tridiag& t, double x) {
    int count = 0;
    double qv = 1.0;
    double e2 = t.e * t.e;
    for (size_t i = 0; i < t.d.size(); ++i) {
        qv = (i == 0) ? t.d[0] - x : t.d[i] - x - e2 / qv;
        if (qv == 0.0) qv = 1e-300;
        if (qv < 0.0) ++count;
    }
    return count;
}

std::vector<double> eig_bisect(const Tridiag& t, int k) {
    double lo = t.d[0] - 2.0 * std::fabs(t.e), hi = t.d[0] + 2.0 * std::fabs(t.e);
    for (double di : t.d) {
        lo = std::min(lo, di - 2.0 * std::fabs(t.e));
        hi = std::max(hi, di + 2.0 * std::fabs(t.e));
    }
    std::vector<double> out;
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > 1e-12 * (1.0 + std::fabs(a) + std::fabs(b))) {
            double m = 0.5 * (a + b);
            if (m == a || m == b) break; // spacing limit
            if (sturm_count(t, m) >= j + 1)
                b = m;
            else
                a = m;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

std::vector<double> solve_eigs(const GridProblem& p, int k) {
    if (!p.wall_series) return eig_bisect(assemble(p, 0.0), k);
    // E-dependent boundary: fixed-point iteration per level, to convergence
    // (Richardson extrapolation needs the boundary bias iterated away).
    std::vector<double> w = eig_bisect(assemble(p, 0.0), k);
    for (int j = 0; j < k; ++j) {
        for (int it = 0; it < 30; ++it) {
            double next = eig_bisect(assemble(p, w[j]), j + 1)[j];
            bool done = std::fabs(next - w[j]) < 1e-11 * (1.0 + std::fabs(next));
            w[j] = next;
            if (done) break;
        }
    }
    return w;
}

} // namespace

std::vector<double> lowest_eigenvalues(const GridProblem& p, int k) {
    if (k < 1) throw ContractError("lowest_eigenvalues: k >= 1 required");
    return solve_eigs(p, k);
}

int count_below(const GridProblem& p, double energy) {
    return sturm_count(assemble(p, energy), energy);
}

Eigenvector eigenvector(const GridProblem& p, int index) {
    if (index < 0) throw ContractError("eigenvector: index >= 0 required");
    std::vector<double> evs = solve_eigs(p, index + 1);
    double lam = evs[index];
    Tridiag t = assemble(p, lam);
    int n = (int)t.d.size();

    // inverse iteration with a slightly shifted matrix; tridiagonal solve
    // with partial pivoting (one extra superdiagonal from row swaps)
    double shift = lam + 1e-10 * (1.0 + std::fabs(lam));
    std::vector<double> v(n, 1.0 / std::sqrt((double)n)), w(n);
    for (int i = 0; i < n; ++i) v[i] *= (1.0 + 0.01 * std::sin(1.0 + 7.0 * i));
    double prev_change = 1e300;
    for (int it = 0; it < 50; ++it) {
        // rebuild factorable bands each pass (partial pivoting fills du2)
        std::vector<double> dm(n), du(n, 0.0), du2(n, 0.0);
        for (int i = 0; i < n; ++i) dm[i] = t.d[i] - shift;
        for (int i = 0; i + 1 < n; ++i) du[i] = t.e;
        w = v;
        // forward elimination; subdiagonal entry below row i is t.e
        for (int i = 0; i < n - 1; ++i) {
            double sub = t.e;
            if (std::fabs(sub) > std::fabs(dm[i])) {
                // swap rows i and i+1
                double old_di = dm[i], old_dui = du[i];
                dm[i] = sub;
                du[i] = dm[i + 1];
                du2[i] = du[i + 1];
                double f = old_di / dm[i];
                dm[i + 1] = old_dui - f * du[i];
                du[i + 1] = -f * du2[i];
                std::swap(w[i], w[i + 1]);
                w[i + 1] -= f * w[i];
            } else {
                if (dm[i] == 0.0) dm[i] = 1e-300;
                double f = sub / dm[i];
                dm[i + 1] -= f * du[i];
                // du[i+1] unchanged, du2[i] stays 0
                w[i + 1] -= f * w[i];
            }
        }
        if (dm[n - 1] == 0.0) dm[n - 1] = 1e-300;
        // back substitution
        w[n - 1] /= dm[n - 1];
        if (n >= 2) w[n - 2] = (w[n - 2] - du[n - 2] * w[n - 1]) / dm[n - 2];
        for (int i = n - 3; i >= 0; --i)
            w[i] = (w[i] - du[i] * w[i + 1] - du2[i] * w[i + 2]) / dm[i];
        double nrm = 0.0;
        for (double x : w) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (auto& x : w) x /= nrm;
        double change = 0.0;
        for (int i = 0; i < n; ++i)
            change = std::max(change, std::min(std::fabs(w[i] - v[i]), std::fabs(w[i] + v[i])));
        v = w;
        if (change < 1e-12) break;
        if (it == 49 && change > 1e-8 && change > prev_change)
            throw NumericError("eigenvector: inverse iteration failed to converge");
        prev_change = change;
    }

    // normalize by the trapezoid rule and fix the sign at the first antinode
    double nrm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double wgt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        nrm2 += wgt * v[i] * v[i] * t.h;
    }
    double sc = 1.0 / std::sqrt(nrm2);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::fabs(x));
    int anti = 0;
    for (int i = 1; i < n - 1; ++i) {
        if (std::fabs(v[i]) >= std::fabs(v[i - 1]) && std::fabs(v[i]) >= std::fabs(v[i + 1]) &&
            std::fabs(v[i]) > 0.2 * vmax) {
            anti = i;
            break;
        }
    }
    if (v[anti] < 0.0) sc = -sc;
    Eigenvector out;
    out.eigenvalue = lam;
    out.x = t.x;
    out.psi.resize(n);
    for (int i = 0; i < n; ++i) out.psi[i] = v[i] * sc;
    return out;
}

Refined refine(const GridProblem& p, int k) {
    Refined r;
    r.raw_h = solve_eigs(p, k);
    GridProblem p2 = p;
    p2.n_points = 2 * p.n_points - 1;
    r.raw_h2 = solve_eigs(p2, k);
    r.extrapolated.resize(k);
    for (int i = 0; i < k; ++i)
        r.extrapolated[i] = (4.0 * r.raw_h2[i] - r.raw_h[i]) / 3.0;
    return r;
}

} // namespace qdh
