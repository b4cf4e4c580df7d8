#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catalog.hpp"
#include "qdh/errors.hpp"
#include "qdh/oracle.hpp"
#include "qdh/spectra.hpp"

using namespace qdh;
using qdh_test::mk;

TEST_CASE("catalog energies reproduce the frozen values") {
    for (const auto& pt : qdh_test::catalog()) {
        Spectrum s = spectrum(pt.spec);
        REQUIRE(s.levels.size() == pt.energies.size());
        CHECK(s.n_max == (int)pt.energies.size() - 1);
        for (size_t i = 0; i < pt.energies.size(); ++i) {
            CHECK(s.levels[i].n == (int)i);
            CHECK(std::fabs(s.levels[i].energy - pt.energies[i]) <=
                  1e-10 * std::max(1.0, std::fabs(pt.energies[i])));
        }
        for (size_t i = 1; i < s.levels.size(); ++i)
            CHECK(s.levels[i].energy > s.levels[i - 1].energy);
    }
}

TEST_CASE("solver methods per kind") {
    CHECK(spectrum(mk(Kind::V1, 1, {{"nu", 2.5}})).method == Method::closed_form);
    CHECK(spectrum(mk(Kind::V7, 1, {{"A", 3}, {"B", -4}, {"C", -0.75}})).method ==
          Method::cardano);
    CHECK(spectrum(mk(Kind::V8, 1, {{"f", 0}, {"h1", -10}, {"C", -0.75}})).method ==
          Method::transcendental);
    Spectrum sp = spectrum(mk(Kind::V7p, 1, {{"A", 3}, {"B", -4}, {"C", -0.75}}));
    CHECK(sp.method == Method::numeric_oracle);
    // the primed well interpolates monotonically between its asymptotes, so
    // there is nothing below the continuum threshold; the oracle says so
    CHECK(sp.levels.empty());
    CHECK(!sp.diagnostics.empty());
}

TEST_CASE("empty spectra carry diagnostics, never errors") {
    auto empty = [](PotentialSpec s) {
        Spectrum sp = spectrum(s);
        CHECK(sp.levels.empty());
        CHECK(sp.n_max == -1);
        CHECK(!sp.diagnostics.empty());
    };
    empty(mk(Kind::V1, 1, {{"nu", 0.5}}));
    empty(mk(Kind::V1, 9, {{"nu", 0.5}}));
    empty(mk(Kind::V2, 1, {{"eta", 1.5}, {"nu", 2.4}})); // nu~ - eta~ <= 1
    empty(mk(Kind::V3, 1, {{"alpha", -2}, {"lambda", 1.5}}));
    empty(mk(Kind::V5, 1, {{"V0", 0}, {"V1", 6}, {"V2", 2}})); // V2 >= 0
    empty(mk(Kind::V7, 1, {{"A", 3}, {"B", -4}, {"C", 0.5}})); // not conditionally solvable
}

TEST_CASE("V4 with beta = 0 degenerates to V1") {
    Spectrum v4 = spectrum(mk(Kind::V4, 1, {{"beta", 0}, {"lambda", 2.5}}));
    Spectrum v1 = spectrum(mk(Kind::V1, 1, {{"nu", 2.5}}));
    REQUIRE(v4.levels.size() == v1.levels.size());
    for (size_t i = 0; i < v4.levels.size(); ++i)
        CHECK(v4.levels[i].energy == doctest::Approx(v1.levels[i].energy).epsilon(1e-14));
}

TEST_CASE("q-reduction identity for V1-V6") {
    for (const auto& pt : qdh_test::catalog()) {
        if (pt.spec.kind == Kind::V7 || pt.spec.kind == Kind::V8) continue;
        for (double q : {0.25, 0.5, 2.0, 4.0}) {
            PotentialSpec s = pt.spec;
            s.q = q;
            QReductionReport rep = q_reduction_check(s);
            CHECK(rep.pass);
            CHECK(rep.max_diff <= 1e-12);
        }
    }
}

TEST_CASE("V1 energies are non-decreasing in q") {
    const double qs[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<std::vector<double>> runs;
    for (double q : qs) {
        Spectrum s = spectrum(mk(Kind::V1, q, {{"nu", 2.5}}));
        std::vector<double> e;
        for (auto& l : s.levels) e.push_back(l.energy);
        runs.push_back(e);
    }
    for (size_t i = 1; i < runs.size(); ++i) {
        size_t shared = std::min(runs[i].size(), runs[i - 1].size());
        CHECK(runs[i].size() <= runs[i - 1].size()); // levels can only be lost as q grows
        for (size_t n = 0; n < shared; ++n) CHECK(runs[i][n] >= runs[i - 1][n] - 1e-12);
    }
}

TEST_CASE("V6: V1 = 0 collapse and large-q limit") {
    double V0 = 0.0, V2 = 8.0;
    Spectrum s = spectrum(mk(Kind::V6, 1, {{"V0", V0}, {"V1", 0}, {"V2", V2}}));
    double lam = std::sqrt(0.25 + V2);
    for (auto& l : s.levels) {
        double en = (V0 + V2) - std::pow(l.n + 0.5 - lam, 2.0);
        CHECK(l.energy == doctest::Approx(en).epsilon(1e-13));
    }
    // q -> infinity approaches the V1=0 spectrum monotonically
    double prev_gap = 1e300;
    for (double q : {1.0, 10.0, 100.0}) {
        Spectrum sq = spectrum(mk(Kind::V6, q, {{"V0", V0}, {"V1", 3}, {"V2", V2}}));
        double gap = 0.0;
        for (auto& l : sq.levels)
            if ((size_t)l.n < s.levels.size())
                gap = std::max(gap, std::fabs(l.energy - s.levels[l.n].energy));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 5e-3);
}

TEST_CASE("cardano_cubic") {
    bool flag = false;
    auto r1 = cardano_cubic(-6.0, 11.0, -6.0, &flag);
    REQUIRE(r1.size() == 3);
    CHECK(!flag);
    CHECK(r1[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r1[2] == doctest::Approx(3.0).epsilon(1e-12));
    auto r2 = cardano_cubic(0.0, 1.0, 0.0, &flag);
    REQUIRE(r2.size() == 1);
    CHECK(flag); // conjugate pair discarded
    CHECK(std::fabs(r2[0]) < 1e-14);
}

TEST_CASE("V7 cubic: auxiliaries, residual, uniqueness") {
    for (const auto& pt : qdh_test::catalog()) {
        if (pt.spec.kind != Kind::V7) continue;
        double u = pt.spec.unit();
        ShiftedPotential sp = reduce_to_shifted(pt.spec);
        for (size_t n = 0; n < pt.energies.size(); ++n) {
            CubicCoefficients cc = v7_cubic(pt.spec, (int)n);
            // P, Q, D reconstruct the paper identities
            CHECK(std::fabs(cc.P - (3.0 * cc.S - cc.R * cc.R) / 3.0) <=
                  1e-12 * std::max(1.0, std::fabs(cc.P)));
            CHECK(std::fabs(cc.Q - (2.0 * std::pow(cc.R, 3) / 27.0 - cc.R * cc.S / 3.0 +
                                    cc.T)) <= 1e-12 * std::max(1.0, std::fabs(cc.Q)));
            CHECK(std::fabs(cc.D - (std::pow(cc.P / 3.0, 3) + std::pow(cc.Q / 2.0, 2))) <=
                  1e-12 * std::max(1.0, std::fabs(cc.D)));
            // exactly one real root survives the quantization filter
            auto roots = cardano_cubic(cc.R, cc.S, cc.T);
            int admissible = 0;
            for (double root : roots) {
                double E = -root * u;
                bool quant = std::abs(v7_quantization_residual(pt.spec, (int)n, E / u)) <
                             1e-10;
                if (quant && E < sp.threshold) ++admissible;
                // every root actually solves the cubic
                double res = std::pow(root, 3) + cc.R * root * root + cc.S * root + cc.T;
                CHECK(std::fabs(res) <=
                      1e-9 * std::max({1.0, std::fabs(cc.T), std::fabs(root * root * root)}));
            }
            CHECK(admissible == 1);
            // the emitted level is that root
            CHECK(std::abs(v7_quantization_residual(pt.spec, (int)n, pt.energies[n] / u)) <
                  1e-10);
        }
    }
}

TEST_CASE("V8 transcendental roots and windows") {
    for (const auto& pt : qdh_test::catalog()) {
        if (pt.spec.kind != Kind::V8) continue;
        for (double E : pt.energies) {
            V8Condition c = v8_condition(pt.spec, E);
            CHECK(std::abs(c.value) / c.scale < 1e-10);
        }
    }
    auto s2 = mk(Kind::V8, 1, {{"f", 0.25}, {"h1", -5}, {"C", -0.75}});
    // degenerate window is a contract violation
    CHECK_THROWS_AS(spectrum_v8(s2, std::make_pair(0.5, 0.5)), ContractError);
    // window with no sign change -> empty with a diagnostic
    Spectrum nosign = spectrum_v8(s2, std::make_pair(0.5, 0.9));
    CHECK(nosign.levels.empty());
    CHECK(!nosign.diagnostics.empty());
    // window enclosing only the root finds exactly it
    Spectrum one = spectrum_v8(s2, std::make_pair(-1.0, 0.2));
    REQUIRE(one.levels.size() == 1);
    CHECK(one.levels[0].energy == doctest::Approx(-0.33580681831260145).epsilon(1e-10));
}

TEST_CASE("V8 closed sub-case f = 3/4, h1 = 0 agrees with the oracle") {
    auto s = mk(Kind::V8, 1, {{"f", 0.75}, {"h1", 0}, {"C", -0.75}});
    Spectrum sp = spectrum(s);
    ShiftedPotential shp = reduce_to_shifted(s);
    GridProblem gp;
    gp.V = shp.V;
    gp.x_min = 0.1;
    gp.x_max = 40.0;
    gp.n_points = 12000;
    gp.wall_series = true;
    CHECK((int)sp.levels.size() == count_below(gp, shp.threshold - 1e-9));
}

TEST_CASE("spectrum JSON layout") {
    auto s = mk(Kind::V1, 4, {{"nu", 2.5}});
    nlohmann::json j = spectrum_json(s, spectrum(s));
    CHECK(j.at("kind") == "V1");
    CHECK(j.at("q") == 4.0);
    CHECK(j.at("params").at("nu") == 2.5);
    CHECK(j.at("method") == "closed_form");
    CHECK(j.at("n_max") == 0);
    REQUIRE(j.at("levels").size() == 1);
    CHECK(j.at("levels")[0].at("n") == 0);
    CHECK(std::fabs(j.at("levels")[0].at("E").get<double>() - (-0.6771243444677047)) <
          1e-15);
}
