#pragma once

// Independent numerical Schrodinger eigenvalue solver: uniform-grid finite
// differences, Sturm-sequence bisection for eigenvalues, inverse iteration
// for eigenvectors, Richardson extrapolation in the grid spacing.
//
// For half-line problems with a singular wall (V ~ c0/z^2 + ... at z -> 0)
// the plain Dirichlet condition at the first grid point can be replaced by a
// Frobenius-series boundary ratio psi(x0)/psi(x1); because the series depends
// on E, eigenvalues are then found by a short fixed-point iteration.

#include <functional>
#include <vector>

namespace qdh {

struct GridProblem {
    double x_min = -25.0;
    double x_max = 25.0;
    int n_points = 6000;
    std::function<double(double)> V;
    double hbar = 1.0;
    double mass = 0.5;
    // Singular-wall treatment (half-line kinds): when true, the boundary at
    // x_min uses the recessive Frobenius solution grown from wall_pos.
    bool wall_series = false;
    double wall_pos = 0.0;

    double unit() const { return hbar * hbar / (2.0 * mass); }
};

// k smallest eigenvalues, Sturm-count bisection to 1e-12 absolute.
std::vector<double> lowest_eigenvalues(const GridProblem& p, int k);

// Number of grid eigenvalues strictly below `energy`.
int count_below(const GridProblem& p, double energy);

struct Eigenvector {
    double eigenvalue;
    std::vector<double> x;   // interior grid points
    std::vector<double> psi; // normalized (trapezoid), sign-fixed
};
Eigenvector eigenvector(const GridProblem& p, int index);

struct Refined {
    std::vector<double> raw_h;       // eigenvalues at spacing h
    std::vector<double> raw_h2;      // eigenvalues at spacing h/2
    std::vector<double> extrapolated; // (4 E_{h/2} - E_h)/3
};
Refined refine(const GridProblem& p, int k);

} // namespace qdh
