#pragma once

// Closed-form bound-state spectra for V1..V6, the cubic (Cardano)
// quantization solver for V7 and the transcendental 2F1 root solver for V8.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdh/potentials.hpp"

namespace qdh {

enum class Method { closed_form, cardano, transcendental, numeric_oracle };
std::string method_to_string(Method m);

struct Level {
    int n;
    double energy;
};

struct Spectrum {
    std::vector<Level> levels;
    int n_max = -1; // largest admissible level index (-1: empty spectrum)
    Method method = Method::closed_form;
    std::vector<std::string> diagnostics;
};

// Paper-layout Cardano auxiliaries for the V7 cubic u^3 + R u^2 + S u + T = 0
// (the unknown is u = -E).
struct CubicCoefficients {
    double R, S, T; // cubic coefficients
    double P, Q, D; // P = (3S - R^2)/3, Q = 2R^3/27 - RS/3 + T, D = (P/3)^3 + (Q/2)^2
};

// All real roots of u^3 + R u^2 + S u + T = 0 via the P, Q, D reduction.
// has_complex_pair reports a discarded conjugate pair.
std::vector<double> cardano_cubic(double R, double S, double T,
                                  bool* has_complex_pair = nullptr);

// V7 cubic coefficients for level n (energies in units of u = hbar^2/2m).
CubicCoefficients v7_cubic(const PotentialSpec& spec, int n);

// Residual of the V7 quantization condition at energy E (units of u):
//   (sqrt(At - E) - sqrt(-At - E))/2 - (n + 1/2) - sqrt(B + C - E)
// with principal square roots; At = A/sqrt(q).
cplx v7_quantization_residual(const PotentialSpec& spec, int n, double E_reduced);

// The V8 root condition: the bound-state equation of the half-space problem,
// reduced by the z -> 1/z connection to two 2F1 values at argument 1/2.
// Returns the (complex) condition value and the magnitude of its largest
// term, so |value|/scale is a meaningful normalized residual.
struct V8Condition {
    cplx value;
    double scale;
};
V8Condition v8_condition(const PotentialSpec& spec, double E);

// Dispatching front end; V8 takes an optional search window.
Spectrum spectrum(const PotentialSpec& spec);
Spectrum spectrum_v1(const PotentialSpec& spec);
Spectrum spectrum_v2(const PotentialSpec& spec);
Spectrum spectrum_v3(const PotentialSpec& spec);
Spectrum spectrum_v4(const PotentialSpec& spec);
Spectrum spectrum_v5(const PotentialSpec& spec);
Spectrum spectrum_v6(const PotentialSpec& spec);
Spectrum spectrum_v7(const PotentialSpec& spec);
Spectrum spectrum_v8(const PotentialSpec& spec,
                     std::optional<std::pair<double, double>> window = std::nullopt,
                     int scan_points = 2000);

struct QReductionReport {
    bool pass = true;
    double max_diff = 0.0;
    std::vector<std::string> details;
};
// Asserts spectrum(spec) == spectrum(equivalent q=1 spec with deformed
// parameters) to 1e-12 per level (kinds V1..V6).
QReductionReport q_reduction_check(const PotentialSpec& spec);

void to_json(nlohmann::json& j, const Spectrum& s);
nlohmann::json spectrum_json(const PotentialSpec& spec, const Spectrum& s);

} // namespace qdh
