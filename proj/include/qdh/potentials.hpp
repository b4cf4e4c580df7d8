#pragma once

// Definition, validation and pointwise evaluation of the ten q-deformed
// hyperbolic potentials V1..V8, V7', V8' in the raw frame (coordinate x,
// deformed functions) and the shifted frame (y = x - ln sqrt q, standard
// functions with rescaled strengths).
//
// Units: hbar and mass are explicit; u = hbar^2/(2 mass) is the natural
// energy unit (defaults hbar = 1, mass = 1/2, so u = 1).

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qdh {

using cplx = std::complex<double>;

enum class Kind { V1, V2, V3, V4, V5, V6, V7, V7p, V8, V8p };

std::string kind_to_string(Kind k);
Kind kind_from_string(const std::string& s);

// Parameter names each kind requires (the conditionally solvable kinds carry
// C explicitly; the solvers use C = -3/4 in units of u and warn on deviation).
const std::vector<std::string>& required_params(Kind k);

struct PotentialSpec {
    Kind kind = Kind::V1;
    double q = 1.0;
    double hbar = 1.0;
    double mass = 0.5;
    std::map<std::string, double> params;

    double unit() const { return hbar * hbar / (2.0 * mass); }
    double ln_sqrt_q() const;
    bool half_line() const; // domain x > ln sqrt q (V2, V3, V5, V8, V8')
    double param(const std::string& name) const; // ContractError if missing
};

// Validates q > 0, hbar/mass > 0 and presence of the per-kind parameters.
// Returns human-readable warnings (e.g. C differing from the conditionally
// solvable value).
std::vector<std::string> validate(const PotentialSpec& spec);

// V(x) in the raw frame, computed via the deformed functions.
// DomainError outside the kind's domain, PoleError on the coth_q pole.
double evaluate(const PotentialSpec& spec, double x);

// The y-frame description: V_shifted(y) with standard hyperbolic functions
// and rescaled strengths, such that evaluate(spec, x) = V(y = x - ln sqrt q).
struct ShiftedPotential {
    double shift;                       // ln sqrt q
    std::function<double(double)> V;    // y -> energy
    double threshold;                   // continuum edge (min over open ends)
    bool half_line;                     // domain y > 0 if true
};
ShiftedPotential reduce_to_shifted(const PotentialSpec& spec);

// Derived symbols of the solution sections. Only the fields meaningful for
// the kind are set. Level-dependent fields (k1, k2, n_t, cubic_lambda)
// require n. Complex branch convention: principal square roots throughout,
// kappa = sqrt(-2mE)/hbar with positive real part for E below threshold.
struct EffectiveParams {
    std::optional<double> lambda_t, eta_t, nu_t; // deformed tilde parameters
    std::optional<double> s;                     // 2*lambda_t (V3, V4)
    std::optional<double> B_t;                   // deformed strength of V7's exponential term
    std::optional<cplx> m1, m2;                  // index pair of the 2F1 Green functions
    std::optional<cplx> L;                       // L_nu / L_E / L_B per kind
    std::optional<cplx> k1, k2;                  // wave-function exponents
    std::optional<double> n_t;                   // hbar (n + 1/2) / sqrt(2 mass)
    std::optional<double> cubic_lambda;          // V7: B + C + n_t^2 (in units of u)
};
EffectiveParams effective_params(const PotentialSpec& spec, cplx E,
                                 std::optional<int> n = std::nullopt);

void to_json(nlohmann::json& j, const PotentialSpec& spec);
void from_json(const nlohmann::json& j, PotentialSpec& spec);

} // namespace qdh
