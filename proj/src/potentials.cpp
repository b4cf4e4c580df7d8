#include "qdh/potentials.hpp"

#include <cmath>

#include "qdh/errors.hpp"
#include "qdh/qhyp.hpp"

namespace qdh {

namespace {

const std::vector<std::string> P_V1 = {"nu"};
const std::vector<std::string> P_V2 = {"eta", "nu"};
const std::vector<std::string> P_V3 = {"alpha", "lambda"};
const std::vector<std::string> P_V4 = {"beta", "lambda"};
const std::vector<std::string> P_V56 = {"V0", "V1", "V2"};
const std::vector<std::string> P_V7 = {"A", "B", "C"};
const std::vector<std::string> P_V8 = {"f", "h1", "C"};

// deformed parameter: t^2 = (p^2 - 1/4)/q + 1/4
double tilde(double p, double q) { return std::sqrt((p * p - 0.25) / q + 0.25); }

} // namespace

std::string kind_to_string(Kind k) {
    switch (k) {
        case Kind::V1: return "V1";
        case Kind::V2: return "V2";
        case Kind::V3: return "V3";
        case Kind::V4: return "V4";
        case Kind::V5: return "V5";
        case Kind::V6: return "V6";
        case Kind::V7: return "V7";
        case Kind::V7p: return "V7p";
        case Kind::V8: return "V8";
        case Kind::V8p: return "V8p";
    }
    throw ContractError("kind_to_string: bad kind");
}

Kind kind_from_string(const std::string& s) {
    if (s == "V1") return Kind::V1;
    if (s == "V2") return Kind::V2;
    if (s == "V3") return Kind::V3;
    if (s == "V4") return Kind::V4;
    if (s == "V5") return Kind::V5;
    if (s == "V6") return Kind::V6;
    if (s == "V7") return Kind::V7;
    if (s == "V7p" || s == "V7'") return Kind::V7p;
    if (s == "V8") return Kind::V8;
    if (s == "V8p" || s == "V8'") return Kind::V8p;
    throw ContractError("unknown potential kind '" + s + "'");
}

const std::vector<std::string>& required_params(Kind k) {
    switch (k) {
        case Kind::V1: return P_V1;
        case Kind::V2: return P_V2;
        case Kind::V3: return P_V3;
        case Kind::V4: return P_V4;
        case Kind::V5:
        case Kind::V6: return P_V56;
        case Kind::V7:
        case Kind::V7p: return P_V7;
        case Kind::V8:
        case Kind::V8p: return P_V8;
    }
    throw ContractError("required_params: bad kind");
}

double PotentialSpec::ln_sqrt_q() const { return 0.5 * std::log(q); }

bool PotentialSpec::half_line() const {
    return kind == Kind::V2 || kind == Kind::V3 || kind == Kind::V5 || kind == Kind::V8 ||
           kind == Kind::V8p;
}

double PotentialSpec::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end())
        throw ContractError("missing parameter '" + name + "' for kind " + kind_to_string(kind));
    return it->second;
}

std::vector<std::string> validate(const PotentialSpec& spec) {
    if (!(spec.q > 0.0)) throw ContractError("q must be positive");
    if (!(spec.hbar > 0.0) || !(spec.mass > 0.0))
        throw ContractError("hbar and mass must be positive");
    for (const auto& name : required_params(spec.kind)) spec.param(name);
    for (const auto& [name, value] : spec.params) {
        (void)value;
        const auto& req = required_params(spec.kind);
        bool known = false;
        for (const auto& r : req) known = known || (r == name);
        if (!known)
            throw ContractError("parameter '" + name + "' not used by kind " +
                                kind_to_string(spec.kind));
    }
    std::vector<std::string> warnings;
    if (spec.kind == Kind::V7 || spec.kind == Kind::V7p || spec.kind == Kind::V8 ||
        spec.kind == Kind::V8p) {
        // The conditionally solvable constraint; solvers assume C = -3/4.
        if (std::fabs(spec.param("C") + 0.75) > 1e-12)
            warnings.push_back("C = " + std::to_string(spec.param("C")) +
                               " deviates from the conditionally solvable value -3/4; "
                               "closed-form solvers are not applicable");
    }
    return warnings;
}

namespace {

// shared shifted-frame building blocks, numerically stable for large y:
//   e^y/(2 cosh y)        = 1/(1+e^{-2y})
//   e^{2y}/(4 cosh^2 y)   = 1/(1+e^{-2y})^2
//   e^{-y/2}/sqrt(2cosh y)= e^{-y}/sqrt(1+e^{-2y})
//   e^{y/2}/sqrt(2 cosh y)= 1/sqrt(1+e^{-2y})
// and the sinh versions with 1 - e^{-2y}.
double shifted_value(Kind kind, const std::map<std::string, double>& p, double q, double u,
                     double y) {
    double sq = std::sqrt(q);
    switch (kind) {
        case Kind::V1: {
            double lt2 = (p.at("nu") * p.at("nu") - 0.25) / q + 0.25;
            double c = std::cosh(y);
            return -u * (lt2 - 0.25) / (c * c);
        }
        case Kind::V2: {
            double et2 = (p.at("eta") * p.at("eta") - 0.25) / q + 0.25;
            double nt2 = (p.at("nu") * p.at("nu") - 0.25) / q + 0.25;
            double s = std::sinh(y), c = std::cosh(y);
            return u * ((et2 - 0.25) / (s * s) - (nt2 - 0.25) / (c * c));
        }
        case Kind::V3: {
            double lt2 = (p.at("lambda") * p.at("lambda") - 0.25) / q + 0.25;
            double s = std::sinh(y);
            return -p.at("alpha") / std::tanh(y) + u * (lt2 - 0.25) / (s * s);
        }
        case Kind::V4: {
            double lt2 = (p.at("lambda") * p.at("lambda") - 0.25) / q + 0.25;
            double c = std::cosh(y);
            return p.at("beta") * std::tanh(y) - u * (lt2 - 0.25) / (c * c);
        }
        case Kind::V5: {
            double t = std::tanh(y), s = std::sinh(y);
            return p.at("V0") + p.at("V1") / (t * t) +
                   (p.at("V2") / sq) * std::cosh(y) / (s * s);
        }
        case Kind::V6: {
            double t = std::tanh(y), c = std::cosh(y);
            return p.at("V0") + (p.at("V1") / sq) * t / c + p.at("V2") * t * t;
        }
        case Kind::V7: {
            double e2 = std::exp(-2.0 * y);
            double d = 1.0 + e2;
            return u * (-(p.at("A") / sq) * std::exp(-y) / std::sqrt(d) + p.at("B") / d +
                        p.at("C") / (d * d));
        }
        case Kind::V7p: {
            double e2 = std::exp(-2.0 * y);
            double d = 1.0 + e2;
            return u * (-p.at("A") / std::sqrt(d) + p.at("B") / d + p.at("C") / (d * d));
        }
        case Kind::V8: {
            double e2 = std::exp(-2.0 * y);
            double d = 1.0 - e2;
            return u * (p.at("f") + 1.0 - (p.at("f") - 0.75) / d +
                        (p.at("h1") / sq) * std::exp(-y) / std::sqrt(d) + p.at("C") / (d * d));
        }
        case Kind::V8p: {
            double e2 = std::exp(-2.0 * y);
            double d = 1.0 - e2;
            return u * (p.at("f") + 1.0 - (p.at("f") - 0.75) / d +
                        p.at("h1") / std::sqrt(d) + p.at("C") / (d * d));
        }
    }
    throw ContractError("shifted_value: bad kind");
}

double threshold_of(const PotentialSpec& spec) {
    double u = spec.unit();
    double sq = std::sqrt(spec.q);
    switch (spec.kind) {
        case Kind::V1:
        case Kind::V2: return 0.0;
        case Kind::V3: return -spec.param("alpha");
        case Kind::V4: return -std::fabs(spec.param("beta"));
        case Kind::V5: return spec.param("V0") + spec.param("V1");
        case Kind::V6: return spec.param("V0") + spec.param("V2");
        case Kind::V7:
            return u * std::min(-spec.param("A") / sq, spec.param("B") + spec.param("C"));
        case Kind::V7p:
            return u * std::min(0.0, spec.param("B") + spec.param("C") - spec.param("A"));
        case Kind::V8: return u;
        case Kind::V8p: return u * (1.0 + spec.param("h1"));
    }
    throw ContractError("threshold_of: bad kind");
}

} // namespace

double evaluate(const PotentialSpec& spec, double x) {
    Deformation d(spec.q);
    double u = spec.unit();
    const auto& p = spec.params;
    if (spec.half_line() && !(x > d.ln_sqrt_q))
        throw DomainError("evaluate: x must exceed ln(sqrt(q)) for half-line kinds");
    switch (spec.kind) {
        case Kind::V1: {
            double c = cosh_q(x, d);
            return -u * (p.at("nu") * p.at("nu") - 0.25) / (c * c);
        }
        case Kind::V2: {
            double s = sinh_q(x, d), c = cosh_q(x, d);
            return u * ((p.at("eta") * p.at("eta") - 0.25) / (s * s) -
                        (p.at("nu") * p.at("nu") - 0.25) / (c * c));
        }
        case Kind::V3: {
            double s = sinh_q(x, d);
            return -p.at("alpha") * coth_q(x, d) +
                   u * (p.at("lambda") * p.at("lambda") - 0.25) / (s * s);
        }
        case Kind::V4: {
            double c = cosh_q(x, d);
            return p.at("beta") * tanh_q(x, d) -
                   u * (p.at("lambda") * p.at("lambda") - 0.25) / (c * c);
        }
        case Kind::V5: {
            double s = sinh_q(x, d);
            return p.at("V0") + p.at("V1") * coth_q(x, d) * coth_q(x, d) +
                   p.at("V2") * coth_q(x, d) / s;
        }
        case Kind::V6: {
            double t = tanh_q(x, d);
            return p.at("V0") + p.at("V1") * t / cosh_q(x, d) + p.at("V2") * t * t;
        }
        case Kind::V7: {
            double w = 1.0 + spec.q * std::exp(-2.0 * x);
            return u * (-p.at("A") * std::exp(-x) / std::sqrt(w) + p.at("B") / w +
                        p.at("C") / (w * w));
        }
        case Kind::V7p: {
            double w = 1.0 + spec.q * std::exp(-2.0 * x);
            return u * (-p.at("A") / std::sqrt(w) + p.at("B") / w + p.at("C") / (w * w));
        }
        case Kind::V8: {
            double w = 1.0 - spec.q * std::exp(-2.0 * x);
            return u * (p.at("f") + 1.0 - (p.at("f") - 0.75) / w +
                        p.at("h1") * std::exp(-x) / std::sqrt(w) + p.at("C") / (w * w));
        }
        case Kind::V8p: {
            double w = 1.0 - spec.q * std::exp(-2.0 * x);
            return u * (p.at("f") + 1.0 - (p.at("f") - 0.75) / w + p.at("h1") / std::sqrt(w) +
                        p.at("C") / (w * w));
        }
    }
    throw ContractError("evaluate: bad kind");
}

ShiftedPotential reduce_to_shifted(const PotentialSpec& spec) {
    ShiftedPotential out;
    out.shift = spec.ln_sqrt_q();
    out.half_line = spec.half_line();
    out.threshold = threshold_of(spec);
    Kind kind = spec.kind;
    auto params = spec.params;
    double q = spec.q, u = spec.unit();
    bool half = out.half_line;
    out.V = [kind, params, q, u, half](double y) {
        if (half && !(y > 0.0)) throw DomainError("shifted potential: y must be positive");
        return shifted_value(kind, params, q, u, y);
    };
    return out;
}

EffectiveParams effective_params(const PotentialSpec& spec, cplx E, std::optional<int> n) {
    EffectiveParams ep;
    double q = spec.q, sq = std::sqrt(q), u = spec.unit();
    cplx Er = E / u; // energy in units of u
    cplx kappa = std::sqrt(-Er);
    auto need_n = [&]() {
        if (!n || *n < 0) throw ContractError("effective_params: level index n required");
        return *n;
    };
    switch (spec.kind) {
        case Kind::V1: {
            double lt = tilde(spec.param("nu"), q);
            ep.lambda_t = lt;
            ep.L = cplx(lt - 0.5, 0.0);
            ep.m1 = kappa; // |order| of the Legendre functions
            break;
        }
        case Kind::V2: {
            double et = tilde(spec.param("eta"), q), nt = tilde(spec.param("nu"), q);
            ep.eta_t = et;
            ep.nu_t = nt;
            ep.m1 = 0.5 * (et + kappa);
            ep.m2 = 0.5 * (et - kappa);
            ep.L = cplx(0.5 * (nt - 1.0), 0.0);
            break;
        }
        case Kind::V3: {
            double lt = tilde(spec.param("lambda"), q);
            double a = spec.param("alpha") / u;
            ep.lambda_t = lt;
            ep.s = 2.0 * lt;
            cplx sig = std::sqrt(-a - Er), tau = std::sqrt(a - Er);
            ep.m1 = lt + 0.5 * sig;
            ep.m2 = lt - 0.5 * sig;
            ep.L = -0.5 + 0.5 * tau;
            if (n) {
                double S = 2.0 * lt + 2.0 * need_n() + 1.0;
                ep.k1 = cplx(0.5 * (1.0 + 0.5 * S + a / S), 0.0);
            }
            break;
        }
        case Kind::V4: {
            double lt = tilde(spec.param("lambda"), q);
            double b = spec.param("beta") / u;
            ep.lambda_t = lt;
            ep.s = 2.0 * lt;
            cplx km = std::sqrt(-b - Er), kp = std::sqrt(b - Er);
            ep.m1 = 0.5 * (km + kp);
            ep.m2 = 0.5 * (km - kp);
            ep.L = cplx(lt - 0.5, 0.0);
            if (n) {
                double Sp = 2.0 * lt - 2.0 * need_n() - 1.0;
                ep.k2 = cplx(0.5 * (1.0 + 0.5 * Sp - b / Sp), 0.0);
            }
            break;
        }
        case Kind::V5: {
            double V0 = spec.param("V0") / u, V1 = spec.param("V1") / u,
                   V2 = spec.param("V2") / u;
            cplx eta = std::sqrt(cplx(V1 + V2 / sq + 0.25));
            cplx nu = std::sqrt(cplx(V1 - V2 / sq + 0.25));
            cplx kap = std::sqrt(V0 + V1 - Er);
            ep.k1 = 0.5 * (1.0 + nu);
            ep.k2 = 0.5 * (1.0 + eta);
            ep.m1 = 0.5 * eta + kap;
            ep.m2 = 0.5 * eta - kap;
            ep.L = 0.5 * (nu - 1.0);
            break;
        }
        case Kind::V6: {
            double V0 = spec.param("V0") / u, V1 = spec.param("V1") / u,
                   V2 = spec.param("V2") / u;
            cplx lam = std::sqrt(cplx(0.25 + V2, -V1 / sq));
            cplx kap = std::sqrt(V0 + V2 - Er);
            ep.L = lam;
            ep.k1 = 0.5 * (1.0 + lam);
            ep.k2 = 0.5 * (1.0 + std::conj(lam));
            ep.m1 = 0.5 + kap - lam.real(); // pole-bearing index
            break;
        }
        case Kind::V7:
        case Kind::V7p: {
            double A = spec.param("A"), B = spec.param("B"), C = spec.param("C");
            double At = A / sq;
            ep.B_t = At; // deformed strength of the exponential term
            cplx eta7 = std::sqrt(-Er - At), nu7 = std::sqrt(At - Er);
            cplx kapu = std::sqrt(B + C - Er);
            ep.m1 = 0.5 * eta7 + kapu;
            ep.m2 = 0.5 * eta7 - kapu;
            ep.L = 0.5 * (nu7 - 1.0);
            if (n) {
                double nt = (need_n() + 0.5);
                ep.n_t = std::sqrt(u) * nt;
                ep.cubic_lambda = B + C + nt * nt;
            }
            break;
        }
        case Kind::V8:
        case Kind::V8p: {
            double f = spec.param("f");
            double ht = spec.param("h1") / sq;
            cplx lam = std::sqrt(cplx(f + 1.0, 0.0) - Er - cplx(0.0, ht));
            cplx kap8 = std::sqrt(cplx(1.0, 0.0) - Er);
            cplx a = 0.5 - lam.real() + kap8;
            ep.L = lam;
            ep.m1 = a;          // first index of the root condition
            ep.m2 = a + lam;    // second index
            ep.k1 = kap8;
            break;
        }
    }
    return ep;
}

void to_json(nlohmann::json& j, const PotentialSpec& spec) {
    j = nlohmann::json{{"kind", kind_to_string(spec.kind)},
                       {"q", spec.q},
                       {"hbar", spec.hbar},
                       {"mass", spec.mass},
                       {"params", spec.params}};
}

void from_json(const nlohmann::json& j, PotentialSpec& spec) {
    spec.kind = kind_from_string(j.at("kind").get<std::string>());
    spec.q = j.value("q", 1.0);
    spec.hbar = j.value("hbar", 1.0);
    spec.mass = j.value("mass", 0.5);
    spec.params.clear();
    if (j.contains("params"))
        spec.params = j.at("params").get<std::map<std::string, double>>();
}

} // namespace qdh
