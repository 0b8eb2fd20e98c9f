#include "dps/config.hpp"
#include "dps/fitting.hpp"
#include "dps/quadrature.hpp"
#include "dps/special.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace dps;

TEST_CASE("Gauss-Hermite rules stay exact at the orders the solvers use")
{
    for (int n : {16, 124, 320, 576}) {
        const auto& rule = gauss_hermite(n);
        double w = 0.0, x2 = 0.0, x4 = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            w += rule.weights[i];
            x2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
            x4 += rule.weights[i] * std::pow(rule.nodes[i], 4);
        }
        CHECK(w == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
        CHECK(x2 == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));
        CHECK(x4 == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-12));
    }
    // even-order rules keep the origin free of nodes
    const auto& rule = gauss_hermite(64);
    for (double x : rule.nodes) CHECK(x != 0.0);
}

TEST_CASE("Gauss-Legendre panels")
{
    auto cube = [](double x) { return x * x * x; };
    CHECK(integrate_gl(cube, 0.0, 1.0, 8) == doctest::Approx(0.25).epsilon(1e-14));
    auto osc = [](double x) { return std::sin(3.0 * x); };
    CHECK(integrate_gl_panels(osc, 0.0, M_PI, 8, 16)
          == doctest::Approx((1.0 - std::cos(3.0 * M_PI)) / 3.0).epsilon(1e-12));
}

TEST_CASE("Kummer series and parabolic cylinder basics")
{
    CHECK(kummer_m(0.5, 1.5, 0.0) == 1.0);
    // M(1, 2, x) = (e^x - 1)/x
    CHECK(kummer_m(1.0, 2.0, 0.7) == doctest::Approx((std::exp(0.7) - 1.0) / 0.7).epsilon(1e-13));
    CHECK_THROWS_AS(kummer_m(1.0, 0.0, 0.5), std::invalid_argument);
    CHECK(parabolic_cylinder_d_imag(-2.0, 0.0).imag() == 0.0);
}

TEST_CASE("power-law fit recovers exact exponents")
{
    const std::vector<double> xs{10, 100, 1000};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 * x * x);
    const PowerLawFit fit = fit_power_law(xs, ys);
    CHECK(fit.valid);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(!fit_power_law({10.0}, {1.0}).valid);
}

TEST_CASE("growth-law fit separates log growth from power growth")
{
    const std::vector<double> xs{10, 30, 100, 300, 1000};
    std::vector<double> logy, power;
    for (double x : xs) {
        logy.push_back(7.0 * std::log(x) + 3.0);
        power.push_back(0.5 * x * x + 2.0 * std::log(x));
    }
    const GrowthFit lf = fit_growth_law(xs, logy);
    CHECK(std::abs(lf.degree) < 0.02);
    CHECK(lf.log_coefficient == doctest::Approx(7.0).epsilon(0.01));

    const GrowthFit pf = fit_growth_law(xs, power);
    CHECK(pf.degree == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("config defaults, overrides and rejection")
{
    const RunConfig def = load_config("");
    CHECK(def.quad_tolerance == 1e-10);
    CHECK(def.max_nodes == 512);
    CHECK(def.output_format == "csv");

    CHECK(load_config("/nonexistent/path/xyz.cfg").max_nodes == 512);

    const char* path = "test_config_tmp.cfg";
    {
        std::ofstream f(path);
        f << "# comment line\n\n"
          << "quad_tolerance = 1e-8\n"
          << "max_nodes = 128   # trailing comment\n"
          << "output_format = json\n"
          << "seed = 99\n";
    }
    const RunConfig cfg = load_config(path);
    CHECK(cfg.quad_tolerance == 1e-8);
    CHECK(cfg.max_nodes == 128);
    CHECK(cfg.output_format == "json");
    CHECK(cfg.seed == 99);
    std::remove(path);

    {
        std::ofstream f(path);
        f << "quad_tolerance = 1e-8\nnot_a_key = 3\n";
    }
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("line 2"), ConfigError);
    std::remove(path);

    {
        std::ofstream f(path);
        f << "quad_tolerance = -1\n";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path);

    {
        std::ofstream f(path);
        f << "max_nodes = bananas\n";
    }
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("line 1"), ConfigError);
    std::remove(path);

    RunConfig bad;
    bad.max_nodes = 4;
    CHECK_THROWS_AS(validate(bad), ConfigError);
}
