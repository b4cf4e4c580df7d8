#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catalog.hpp"
#include "qdh/errors.hpp"
#include "qdh/green.hpp"
#include "qdh/potentials.hpp"

using namespace qdh;
using qdh_test::mk;

namespace {

// interior probe points per spec, clear of walls and shifted by ln sqrt(q)
std::pair<double, double> probes(const PotentialSpec& s) {
    double base = s.ln_sqrt_q();
    if (s.half_line()) return {base + 0.8, base + 1.7};
    return {-0.6 + base, 1.1 + base};
}

} // namespace

TEST_CASE("symmetry G(x1,x2) = G(x2,x1)") {
    for (const auto& pt : qdh_test::catalog()) {
        if (pt.spec.kind == Kind::V7 && pt.spec.q != 1) continue; // same form, keep it quick
        auto [a, b] = probes(pt.spec);
        for (cplx E : {cplx(pt.energies[0] - 0.631, 0.0), cplx(-1.7, 0.9)}) {
            cplx g12 = green(pt.spec, a, b, E);
            cplx g21 = green(pt.spec, b, a, E);
            CHECK(std::abs(g12 - g21) < 1e-9 * (1.0 + std::abs(g12)));
        }
    }
}

TEST_CASE("continuity across the diagonal") {
    for (Kind k : {Kind::V1, Kind::V3, Kind::V6, Kind::V7, Kind::V8}) {
        PotentialSpec s;
        switch (k) {
            case Kind::V1: s = mk(k, 2, {{"nu", 2.5}}); break;
            case Kind::V3: s = mk(k, 1, {{"alpha", 9}, {"lambda", 1.5}}); break;
            case Kind::V6: s = mk(k, 1, {{"V0", 0}, {"V1", 3}, {"V2", 8}}); break;
            case Kind::V7: s = mk(k, 1, {{"A", 3}, {"B", -4}, {"C", -0.75}}); break;
            default: s = mk(k, 1, {{"f", 0}, {"h1", -10}, {"C", -0.75}}); break;
        }
        auto [a, b] = probes(s);
        (void)b;
        cplx E(-6.3, 0.0);
        cplx diag = green(s, a, a, E);
        cplx near1 = green(s, a, a + 1e-4, E);
        cplx near2 = green(s, a - 1e-4, a, E);
        CHECK(std::abs(near1 - diag) < 1e-3 * (1.0 + std::abs(diag)));
        CHECK(std::abs(near2 - diag) < 1e-3 * (1.0 + std::abs(diag)));
    }
}

TEST_CASE("pole scan recovers the spectrum") {
    for (const auto& pt : qdh_test::catalog()) {
        if (pt.spec.kind == Kind::V7) continue; // evaluation-only
        ShiftedPotential sp = reduce_to_shifted(pt.spec);
        double lo = pt.energies.front() - 1.0;
        double hi = sp.threshold - 1e-3;
        auto poles = pole_scan(pt.spec, lo, hi, 600);
        REQUIRE(poles.size() == pt.energies.size());
        for (size_t i = 0; i < poles.size(); ++i)
            CHECK(std::fabs(poles[i] - pt.energies[i]) < 1e-8 * std::max(1.0, std::fabs(pt.energies[i])));
    }
}

TEST_CASE("PoleError at a bound-state energy") {
    auto s = mk(Kind::V1, 1, {{"nu", 2.5}});
    CHECK_THROWS_AS(green(s, -0.6, 1.1, cplx(-4.0, 0.0)), PoleError);
    CHECK_THROWS_AS(green(s, -0.6, 1.1, cplx(-1.0 + 3e-10, 0.0)), PoleError);
    // off the pole by more than the guard: fine
    CHECK(std::isfinite(green(s, -0.6, 1.1, cplx(-1.0 + 1e-6, 0.0)).real()));
}

TEST_CASE("V8 Green function vanishes at the wall like eps^{3/4}") {
    auto s = mk(Kind::V8, 1, {{"f", 0}, {"h1", -10}, {"C", -0.75}});
    double wall = s.ln_sqrt_q();
    cplx E(-5.11, 0.0);
    double ref = std::abs(green(s, wall + 1.0, wall + 2.0, E));
    double g11 = std::abs(green(s, wall + 1e-11, wall + 2.0, E));
    CHECK(g11 / ref < 1e-7); // eps^{3/4} = 5.6e-9 times an O(1) constant
    // one decade in eps scales the wall value by 10^{3/4}
    double g10 = std::abs(green(s, wall + 1e-10, wall + 2.0, E));
    CHECK(g10 / g11 == doctest::Approx(std::pow(10.0, 0.75)).epsilon(1e-3));
}

TEST_CASE("kind restrictions and windows") {
    auto v7 = mk(Kind::V7, 1, {{"A", 3}, {"B", -4}, {"C", -0.75}});
    CHECK_THROWS_AS(pole_scan(v7, -6.0, -5.0, 200), ContractError);
    auto v7p = mk(Kind::V7p, 1, {{"A", 3}, {"B", -4}, {"C", -0.75}});
    CHECK_THROWS_AS(green(v7p, 0.5, 1.0, cplx(-1.0, 0.0)), ContractError);
    auto v1 = mk(Kind::V1, 1, {{"nu", 2.5}});
    CHECK(pole_scan(v1, -0.5, -0.1, 200).empty()); // window holds no level
    CHECK(pole_scan(v1, -0.1, -0.5, 200).empty()); // inverted window
    CHECK(pole_scan(v1, -5.0, -0.5, 1).empty());   // degenerate resolution
}
