#pragma once

// Self-contained special-functions kernel: complex Gamma (Lanczos), Gauss
// hypergeometric 2F1 with complex parameters, on-cut associated Legendre
// functions of real degree/order, and Jacobi polynomials with complex
// parameters (three-term recurrence).

#include <complex>

namespace qdh {

using cplx = std::complex<double>;

// Gamma(z), >= 12 significant digits for |z| <= 50 off the poles.
// Throws PoleError at non-positive integers.
cplx gamma_c(cplx z);

// Gauss hypergeometric 2F1(a,b;c;z).
//   - terminating series (a or b a non-positive integer) for any z;
//   - direct power series for |z| <= 0.6;
//   - z -> 1-z linear transformation for real z in (0.6, 1) (requires
//     c-a-b non-integer, otherwise DomainError("degenerate ...") so the
//     caller can perturb E);
//   - Pfaff map z -> z/(z-1) or long series for the rest of |z| < 1;
//   - z -> 1/z linear transformation for |z| > 1 (requires a-b non-integer).
//     For real z > 1 the branch is the continuation from below the cut
//     (Im z -> 0^-), i.e. (-z)^(-a) = exp(-a(ln z - i pi)).
cplx hyp2f1(cplx a, cplx b, cplx c, cplx z);

// d/dz 2F1(a,b;c;z) = (a b / c) 2F1(a+1,b+1;c+1;z).
cplx hyp2f1_deriv(cplx a, cplx b, cplx c, cplx z);

// On-cut associated Legendre function P_nu^mu(x), |x| < 1, via
//   ((1+x)/(1-x))^(mu/2) / Gamma(1-mu) * 2F1(-nu, nu+1; 1-mu; (1-x)/2).
// At x = +-1: returns 0 for mu < 0, 1 for mu = 0 at x = 1, DomainError for mu > 0.
double legendre_p(double nu, double mu, double x);

// Jacobi polynomial P_n^(alpha,beta)(x) for complex alpha, beta, x.
cplx jacobi_p(int n, cplx alpha, cplx beta, cplx x);

// True if z is within tol of a non-positive integer.
bool near_nonpos_int(cplx z, double tol = 1e-12);

} // namespace qdh
