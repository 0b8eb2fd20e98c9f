#include "dps/difference.hpp"

#include "dps/basis.hpp"
#include "dps/fitting.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dps;

namespace {

GridFunction xi_grid(int nmax, double k)
{
    GridFunction g(nmax);
    const auto row = eval_xi_row(nmax, k);
    for (int n = 0; n <= nmax; ++n) g.values[static_cast<size_t>(n)] = row[static_cast<size_t>(n)];
    return g;
}

} // namespace

TEST_CASE("grid function tail behavior")
{
    GridFunction g(4);
    g.values[2] = cplx{1.0, 0.0};
    CHECK(g.at(2) == cplx{1.0, 0.0});
    CHECK(g.at(9) == cplx{0.0, 0.0});
    CHECK(g.at(-1) == cplx{0.0, 0.0});
    g.tail = TailBehavior::undefined;
    CHECK_THROWS_AS(g.at(9), std::out_of_range);
    CHECK_THROWS_AS(delta_sharp(GridFunction(1)), std::invalid_argument);
}

TEST_CASE("delta_sharp annihilates xi_n(0)")
{
    const GridFunction out = delta_sharp(xi_grid(40, 0.0));
    for (const auto& v : out.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("delta_sharp eigenrelation at e = 0.3")
{
    const double e = 0.3;
    const GridFunction out = delta_sharp(xi_grid(40, e));
    for (int n = 0; n <= 39; ++n) {
        const cplx want = cplx{0.0, e} * eval_xi(n, e);
        CHECK(std::abs(out.values[static_cast<size_t>(n)] - want) < 1e-12);
    }
}

TEST_CASE("delta_sharp of zero is zero")
{
    const GridFunction out = delta_sharp(GridFunction(10));
    for (const auto& v : out.values) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("eigenrelation holds to 1e-10 relative for e in {0.1, 0.5, 1.0}, n <= 50")
{
    for (double e : {0.1, 0.5, 1.0}) {
        const GridFunction out = delta_sharp(xi_grid(52, e));
        for (int n = 0; n <= 50; ++n) {
            const cplx want = cplx{0.0, e} * eval_xi(n, e);
            CHECK(std::abs(out.values[static_cast<size_t>(n)] - want)
                  <= 1e-10 * std::max(std::abs(want), 1e-300));
        }
    }
}

TEST_CASE("Green's function values")
{
    CHECK(greens_function(0, 0).value == cplx{0.0, 0.0}); // odd integrand, CPV vanishes
    CHECK(greens_function(2, 2).value == cplx{0.0, 0.0});
    CHECK(greens_function(4, 0).value == cplx{0.0, 0.0});
    const auto g10 = greens_function(1, 0);
    CHECK(std::abs(g10.value - cplx{std::sqrt(2.0), 0.0}) < 1e-12);
    CHECK(g10.converged);
    CHECK_THROWS_AS(greens_function(-1, 0), std::invalid_argument);
}

TEST_CASE("defining property: delta_sharp of G(., nhat) is the Kronecker delta")
{
    for (int nhat = 0; nhat <= 10; ++nhat) {
        GridFunction g(14);
        double quad_err = 0.0;
        for (int n = 0; n <= 14; ++n) {
            const auto r = greens_function(n, nhat);
            g.values[static_cast<size_t>(n)] = r.value;
            quad_err = std::max(quad_err, r.error_estimate);
        }
        const GridFunction dg = delta_sharp(g);
        for (int n = 0; n <= 12; ++n) {
            const double want = (n == nhat) ? 1.0 : 0.0;
            CHECK(std::abs(dg.values[static_cast<size_t>(n)] - want)
                  <= 10.0 * std::max(quad_err, 1e-15));
        }
    }
}

TEST_CASE("solve_difference: homogeneous solution")
{
    const SolveResult res = solve_difference(GridFunction(20), cplx{1.0, 0.0});
    for (int n = 0; n <= 20; ++n)
        CHECK(std::abs(res.psi.values[static_cast<size_t>(n)] - eval_xi(n, 0.0)) < 1e-14);
}

TEST_CASE("solve_difference: source xi_n(0) gives the first-order pattern")
{
    const SolveResult res = solve_difference(xi_grid(24, 0.0), cplx{0.0, 0.0});
    for (int n = 0; n <= 24; n += 2) CHECK(res.psi.values[static_cast<size_t>(n)] == cplx{0.0, 0.0});
    for (int n = 1; n <= 24; n += 2) {
        const cplx want = cplx{0.0, -1.0} * eval_xi_derivative0(n);
        CHECK(std::abs(res.psi.values[static_cast<size_t>(n)] - want) < 1e-11);
    }
}

TEST_CASE("solve_difference: Kronecker source inverts to a Kronecker image")
{
    GridFunction phi(16);
    phi.values[3] = cplx{1.0, 0.0};
    const SolveResult res = solve_difference(phi, cplx{0.0, 0.0});
    const GridFunction dg = delta_sharp(res.psi);
    for (int n = 0; n <= 15; ++n) {
        const double want = (n == 3) ? 1.0 : 0.0;
        CHECK(std::abs(dg.values[static_cast<size_t>(n)] - want) < 1e-11);
    }
    CHECK(res.converged);
}

TEST_CASE("linear discrete perturbation series")
{
    const PerturbationSeries s = perturb_linear_discrete(0.1, 2, 16);
    REQUIRE(s.orders.size() == 3);

    // parity pattern is exact, not merely small
    for (int n = 1; n <= 16; n += 2) CHECK(s.orders[0].values[static_cast<size_t>(n)] == cplx{0.0, 0.0});
    for (int n = 0; n <= 16; n += 2) CHECK(s.orders[1].values[static_cast<size_t>(n)] == cplx{0.0, 0.0});
    for (int n = 1; n <= 16; n += 2) CHECK(s.orders[2].values[static_cast<size_t>(n)] == cplx{0.0, 0.0});

    // order one is -i xi'_n(0)
    for (int n = 1; n <= 16; n += 2) {
        const cplx want = cplx{0.0, -1.0} * eval_xi_derivative0(n);
        CHECK(std::abs(s.orders[1].values[static_cast<size_t>(n)] - want) < 1e-11);
    }

    CHECK(s.divergent_flags[0] == false);
    CHECK(s.divergent_flags[1] == false);
    CHECK(s.divergent_flags[2] == true); // the excluded lim k^{-2} xi_n(k) constant
    CHECK(!s.notes[2].empty());

    CHECK_THROWS_AS(perturb_linear_discrete(0.1, 3, 16), std::invalid_argument);
}

TEST_CASE("linear discrete resummation approximates xi_n(e) to O(e^3)")
{
    for (double e : {0.05, 0.1, 0.2}) {
        const PerturbationSeries s = perturb_linear_discrete(e, 2, 12);
        for (int n = 0; n <= 4; ++n) {
            const double diff = std::abs(s.resummed(n) - eval_xi(n, e));
            CHECK(diff <= 5.0 * e * e * e);
        }
    }
}

TEST_CASE("the raw second-order pairing really diverges with the truncation")
{
    // partial sums of sum_nhat xi'_nhat(0) * CPV-integral(k^{-1} xi_0 conj xi_nhat)
    // grow like sqrt(N): the flagged divergent constant, observed numerically
    QuadratureConfig cfg;
    cfg.max_nodes = 2048;
    auto partial = [&](int N) {
        cplx acc{0.0, 0.0};
        for (int nh = 1; nh <= N; nh += 2)
            acc += eval_xi_derivative0(nh) * detail::cpv_xi_pair_over_k(0, nh, cfg).value;
        return std::abs(acc);
    };
    const std::vector<double> Ns{63, 127, 255, 511};
    std::vector<double> vals;
    for (double N : Ns) vals.push_back(partial(static_cast<int>(N)));
    const PowerLawFit fit = fit_power_law(Ns, vals);
    CHECK(fit.valid);
    CHECK(fit.exponent > 0.25); // grows without bound with the truncation
    CHECK(vals.back() > 4.0 * vals.front());
}

TEST_CASE("nonlinear discrete series is finite with the stated parity pattern")
{
    const PerturbationSeries s = perturb_nonlinear_discrete(0.1, 16);
    REQUIRE(s.orders.size() == 3);

    for (int n = 0; n <= 16; n += 2) CHECK(std::abs(s.orders[1].values[static_cast<size_t>(n)]) < 1e-10);
    for (int n = 0; n <= 16; ++n) CHECK(std::abs(s.orders[2].values[static_cast<size_t>(n)]) < 1e-10);

    // psi_1(1) = -i [xi_0(0)]^2 CPV-int = sqrt(2/pi), an exact one-term sum
    CHECK(std::abs(s.orders[1].values[1] - cplx{std::sqrt(2.0 / M_PI), 0.0}) < 1e-12);
    for (int n = 1; n <= 15; n += 2) CHECK(std::isfinite(s.orders[1].values[static_cast<size_t>(n)].real()));
    CHECK(s.divergent_flags[1] == false);
    CHECK(s.divergent_flags[2] == false);

    CHECK_THROWS_AS(perturb_nonlinear_discrete(0.1, 4), std::invalid_argument);
}

TEST_CASE("linear continuous report: L^2 growth of the second order")
{
    const auto rep = perturb_linear_continuous(0.1, {10.0, 100.0, 1000.0});
    CHECK(rep.fit_available);
    CHECK(std::abs(rep.growth.exponent - 2.0) < 0.05);
    CHECK(rep.divergent_term[0] == doctest::Approx(50.0)); // (1/2) L^2 at L = 10

    const auto single = perturb_linear_continuous(0.1, {50.0});
    CHECK(!single.fit_available);

    const auto zero = perturb_linear_continuous(0.0, {10.0, 100.0});
    CHECK(std::abs(zero.order_weights[1]) == 0.0);
    CHECK(std::abs(zero.order_weights[2]) == 0.0);
}

TEST_CASE("nonlinear continuous report: renormalized resummation")
{
    const auto rep = perturb_nonlinear_continuous(0.1, 1.0, 0.5, {10.0, 100.0, 1000.0});
    CHECK(rep.exact_value == doctest::Approx(1.0 / 0.95).epsilon(1e-12));
    CHECK(rep.resummed_value == doctest::Approx(1.0525).epsilon(1e-12));
    CHECK(rep.resummation_error <= 5.0 * 1e-3);
    CHECK(std::abs(rep.growth.exponent - 2.0) < 0.05);

    const auto at_zero = perturb_nonlinear_continuous(0.1, 1.0, 0.0, {10.0, 100.0});
    CHECK(at_zero.exact_value == doctest::Approx(1.0));
    CHECK(std::abs(at_zero.order_weights[1]) == 0.0);
    CHECK(std::abs(at_zero.order_weights[2]) == 0.0);

    CHECK_THROWS_AS(perturb_nonlinear_continuous(1.0, 2.0, 0.6, {10.0}), std::invalid_argument);
}

TEST_CASE("tail warning when the truncated sum is dominated by its last decade")
{
    GridFunction phi(40);
    phi.values[39] = cplx{1.0, 0.0}; // all weight at the end of the range
    const SolveResult res = solve_difference(phi, cplx{0.0, 0.0});
    CHECK(res.tail_warning);

    GridFunction head(40);
    head.values[0] = cplx{1.0, 0.0};
    CHECK(!solve_difference(head, cplx{0.0, 0.0}).tail_warning);
}

TEST_CASE("solver residual for a random smooth source")
{
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    GridFunction phi(20);
    for (auto& v : phi.values) v = cplx{coef(rng), coef(rng)} * 0.3;

    const SolveResult res = solve_difference(phi, cplx{0.7, -0.2});
    const GridFunction dg = delta_sharp(res.psi);
    for (int n = 0; n <= 19; ++n)
        CHECK(std::abs(dg.values[static_cast<size_t>(n)] - phi.values[static_cast<size_t>(n)])
              < 1e-10);
}
