#include "dps/diagram.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <stdexcept>

#include <cmath>
#include <set>

using namespace dps;

namespace {

DiagramSpec make(int ef, int eb, int j)
{
    DiagramSpec s;
    s.external_fermions = ef;
    s.external_bosons = eb;
    s.vertices = j;
    return s;
}

} // namespace

TEST_CASE("internal line counts")
{
    const InternalLines self_e = derive_internal_lines(make(2, 0, 2));
    CHECK(self_e.fermion == 1);
    CHECK(self_e.boson == 1);

    const InternalLines self_p = derive_internal_lines(make(0, 2, 2));
    CHECK(self_p.fermion == 2);
    CHECK(self_p.boson == 0);

    const InternalLines tree = derive_internal_lines(make(2, 1, 1));
    CHECK(tree.fermion == 0);
    CHECK(tree.boson == 0);
}

TEST_CASE("infeasible topologies name the violated identity")
{
    CHECK_THROWS_WITH_AS(derive_internal_lines(make(4, 0, 1)),
                         doctest::Contains("I_F = j - E_F/2 >= 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(derive_internal_lines(make(0, 3, 2)),
                         doctest::Contains("I_B = (j - E_B)/2 >= 0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(derive_internal_lines(make(0, 1, 2)),
                         doctest::Contains("not an integer"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(derive_internal_lines(make(1, 0, 2)),
                         doctest::Contains("even"), std::invalid_argument);
}

TEST_CASE("kappa values")
{
    CHECK(kappa(make(2, 0, 2)) == HalfInt::whole(-2));
    CHECK(kappa(make(0, 2, 2)) == HalfInt::whole(-1));
    CHECK(kappa(make(0, 0, 2)) == HalfInt::whole(1)); // vacuum graph
    // the formula is total: odd E_F gives exact half-integers
    DiagramSpec odd = make(1, 0, 3);
    CHECK(kappa(odd).twice == -1);
    CHECK(to_string(kappa(odd)) == "-1/2");
    CHECK(to_string(kappa(make(2, 0, 2))) == "-2");
}

TEST_CASE("raw counting form equals the closed form for all feasible specs")
{
    for (int j = 1; j <= 12; ++j)
        for (int ef = 0; ef <= 2 * j; ef += 2)
            for (int eb = (j % 2); eb <= j; eb += 2) {
                const DiagramSpec s = make(ef, eb, j);
                // kappa() asserts raw == closed internally; also check the value
                const HalfInt k = kappa(s);
                CHECK(k.twice == 2 * (1 - eb) - 3 * ef);
            }
}

TEST_CASE("kappa_hat and the gap law")
{
    CHECK(kappa_hat(make(2, 0, 2)) == HalfInt::whole(-5));
    CHECK(kappa_hat(make(0, 2, 2)) == HalfInt::whole(-4));
    CHECK((kappa(make(2, 0, 2)) - kappa_hat(make(2, 0, 2))) == HalfInt::whole(3));

    for (int j = 1; j <= 12; ++j)
        for (int ef = 0; ef <= 2 * j; ef += 2)
            for (int eb = (j % 2); eb <= j; eb += 2) {
                const DiagramSpec s = make(ef, eb, j);
                CHECK((kappa(s) - kappa_hat(s)) == HalfInt::whole(3 * (j - 1)));
            }

    // j = 1 tree: zero gap
    CHECK((kappa(make(2, 1, 1)) - kappa_hat(make(2, 1, 1))) == HalfInt::whole(0));
}

TEST_CASE("convergence verdict")
{
    CHECK(converges(make(2, 0, 2)) == Verdict::converges);  // 3 > 1
    CHECK(converges(make(0, 2, 2)) == Verdict::converges);  // 2 > 1
    CHECK(converges(make(0, 1, 3)) == Verdict::vanishes_by_furry);
    CHECK(converges(make(0, 0, 2)) == Verdict::diverges);

    // verdict depends only on the external lines, never on j
    for (int j = 1; j <= 12; ++j) {
        CHECK(converges(make(2, 0, j)) == Verdict::converges);
        CHECK(converges(make(0, 0, j)) == Verdict::diverges);
        CHECK(converges(make(0, 1, j)) == Verdict::vanishes_by_furry);
    }

    // equivalence with kappa < 0 away from the Furry case, on feasible topologies
    for (int ef = 0; ef <= 8; ef += 2)
        for (int eb = 0; eb <= 8; ++eb) {
            if (ef == 0 && eb == 1) continue;
            int j = std::max(ef / 2, eb);
            if ((j - eb) % 2 != 0) ++j;
            if (j < 1) j = 2;
            const bool crit = 3 * ef + 2 * eb > 2;
            const bool neg = kappa(make(ef, eb, j)).twice < 0;
            CHECK(crit == neg);
            CHECK((converges(make(ef, eb, j)) == Verdict::converges) == crit);
        }
}

TEST_CASE("prefactor")
{
    DiagramSpec s = make(2, 0, 2);
    s.loops = 1;
    s.sigma_sign = +1;
    const Prefactor p = prefactor(s);
    CHECK(p.value == doctest::Approx(-4.0 * M_PI / 137.0).epsilon(1e-14));
    CHECK(p.sign == -1);

    DiagramSpec empty = make(0, 0, 1);
    empty.vertices = 0;
    empty.loops = 0;
    CHECK(prefactor(empty).value == 1.0); // empty product

    DiagramSpec quark = make(2, 1, 3);
    quark.charge_num = 1;
    quark.charge_den = 3;
    quark.loops = 0;
    const double e = default_coupling_magnitude();
    CHECK(prefactor(quark).value == doctest::Approx(std::pow(-e / 3.0, 3)).epsilon(1e-14));

    CHECK(default_coupling_magnitude() == doctest::Approx(std::sqrt(4.0 * M_PI / 137.0)));
}

TEST_CASE("exhaustive feasibility enumeration cross-check")
{
    const auto topos = enumerate_feasible(6);

    // brute force over a superset, keeping exactly the integrality and
    // nonnegativity conditions
    std::set<std::array<int, 3>> brute;
    for (int j = 1; j <= 6; ++j)
        for (int ef = 0; ef <= 20; ++ef)
            for (int eb = 0; eb <= 20; ++eb) {
                if (ef % 2 != 0) continue;
                if (2 * j - ef < 0) continue;
                if (j - eb < 0) continue;
                if ((j - eb) % 2 != 0) continue;
                brute.insert({ef, eb, j});
            }

    std::set<std::array<int, 3>> got;
    for (const auto& t : topos) {
        got.insert({t.external_fermions, t.external_bosons, t.vertices});
        CHECK(t.internal.fermion == t.vertices - t.external_fermions / 2);
        CHECK(t.internal.boson == (t.vertices - t.external_bosons) / 2);
    }
    CHECK(got == brute);
}
