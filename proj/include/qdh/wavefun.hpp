#pragma once

// Closed-form bound-state wave functions for V1..V6 on a uniform grid, with
// trapezoid normalization and node counting. V7/V8 wave functions have no
// usable closed form here and are not provided.

#include <vector>

#include "qdh/potentials.hpp"

namespace qdh {

struct BoundState {
    int n = 0;
    double energy = 0.0;
    std::vector<double> x;   // raw-frame coordinates
    std::vector<double> psi; // normalized, sign-fixed
    int nodes = 0;
};

// Unnormalized psi at raw coordinate x for level n with energy E.
// Kinds V1..V6 only (ContractError otherwise); DomainError outside domain.
double psi_value(const PotentialSpec& spec, int n, double E, double x);

// Level n on an adaptively truncated grid: the domain is extended until the
// probability density at the ends is below 1e-16 of its peak (minimum span
// 40), then normalized to unit trapezoid norm with the first antinode
// positive. Nodes are sign changes above a 1e-6 * max(|psi|) floor.
BoundState bound_state(const PotentialSpec& spec, int n, double E, int n_points = 4001);

} // namespace qdh
