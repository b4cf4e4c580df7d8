#pragma once

// q-deformed hyperbolic functions:
//   sinh_q x = (e^x - q e^-x)/2,   cosh_q x = (e^x + q e^-x)/2,
//   tanh_q = sinh_q/cosh_q,        coth_q = cosh_q/sinh_q.
// They satisfy cosh_q^2 - sinh_q^2 = q and reduce to the standard functions
// shifted by ln(sqrt(q)) and scaled by sqrt(q):
//   sinh_q(x) = sqrt(q) sinh(x - ln sqrt q), etc.

#include <cmath>
#include <limits>

#include "qdh/errors.hpp"

namespace qdh {

struct Deformation {
    double q;
    double ln_sqrt_q;

    explicit Deformation(double q_) : q(q_), ln_sqrt_q(0.5 * std::log(q_)) {
        if (!(q_ > 0.0) || !std::isfinite(q_))
            throw DomainError("Deformation: q must be a positive finite real");
    }
};

enum class Frame { raw, shifted };

struct Coordinate {
    double x;
    Frame frame;
};

// Evaluated via exp(x), exp(-x) directly (the shift identities are used as
// cross-checks in the tests, not as the implementation).
inline double sinh_q(double x, const Deformation& d) {
    double ep = std::exp(x), em = std::exp(-x);
    if (!std::isfinite(ep) || !std::isfinite(em))
        throw DomainError("sinh_q: |x| beyond floating range");
    return 0.5 * (ep - d.q * em);
}

inline double cosh_q(double x, const Deformation& d) {
    double ep = std::exp(x), em = std::exp(-x);
    if (!std::isfinite(ep) || !std::isfinite(em))
        throw DomainError("cosh_q: |x| beyond floating range");
    return 0.5 * (ep + d.q * em);
}

inline double tanh_q(double x, const Deformation& d) {
    return sinh_q(x, d) / cosh_q(x, d);
}

inline double coth_q(double x, const Deformation& d) {
    double s = sinh_q(x, d);
    if (std::fabs(s) < 1e-300)
        throw PoleError("coth_q: pole at x = ln(sqrt(q))");
    return cosh_q(x, d) / s;
}

} // namespace qdh
