#pragma once

// Energy-dependent Green functions G(x1, x2; E):
//   V1          Legendre product form,
//   V2..V5      Gamma * Gamma / Gamma / Gamma * prefactors * 2F1 * 2F1,
//   V6, V8      Wronskian of the two decaying 2F1 solutions (V8 adds the
//               half-space Dirichlet subtraction at the wall),
//   V7          evaluation only (sinh-substitution form); not pole-scanned.
// Pole scanning over a real energy window recovers the spectrum
// independently of the spectra module.

#include <complex>
#include <vector>

#include "qdh/potentials.hpp"

namespace qdh {

// G(x1, x2; E) in the raw frame. For V1..V6 at real E a PoleError carrying
// the nearest level is thrown when E is within 1e-9 of a bound state.
// Degenerate 2F1 parameter coincidences are absorbed by an automatic
// 1e-12 energy perturbation. V7'/V8': ContractError (no closed form).
cplx green(const PotentialSpec& spec, double x1, double x2, cplx E);

// Poles of G in (E_lo, E_hi), found from sign changes of Re 1/G(x0, x0; E)
// at three interior probes, bisected to 1e-9 and merged within 1e-7.
// Kinds V1..V6 and V8; V7 is evaluation-only (ContractError).
std::vector<double> pole_scan(const PotentialSpec& spec, double E_lo, double E_hi,
                              int resolution);

} // namespace qdh
