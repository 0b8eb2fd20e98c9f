#include "dps/greens.hpp"

#include "dps/basis.hpp"
#include "dps/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dps {

namespace {

inline cplx quarter_turn(int n)
{
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// product over axes of Htilde_{n_a}(r w_a) Htilde_{nhat_a}(r w_a)
double hermite_axis_product(const LatticeSite& n, const LatticeSite& n_hat,
                            double r, const std::array<double, 3>& w)
{
    double prod = 1.0;
    for (int a = 0; a < 3; ++a) {
        const int top = std::max(n.n[a], n_hat.n[a]);
        const auto row = detail::hermite_normalized_row(top, r * w[a]);
        prod *= row[n.n[a]] * row[n_hat.n[a]];
    }
    return prod;
}

// angular average over the unit sphere: Gauss-Legendre in cos(theta), uniform
// grid in phi (exact for the trigonometric polynomials that arise here)
template <typename F>
auto sphere_integral(int ntheta, int nphi, F&& f) -> decltype(f(std::array<double, 3>{}))
{
    using R = decltype(f(std::array<double, 3>{}));
    const auto& rule = gauss_legendre(ntheta);
    R total{};
    for (int it = 0; it < ntheta; ++it) {
        const double ct = rule.nodes[it];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        R ring{};
        for (int ip = 0; ip < nphi; ++ip) {
            const double phi = 2.0 * M_PI * ip / nphi;
            ring += f(std::array<double, 3>{st * std::cos(phi), st * std::sin(phi), ct});
        }
        total += rule.weights[it] * (2.0 * M_PI / nphi) * ring;
    }
    return total;
}

int angular_degree(const LatticeSite& n, const LatticeSite& n_hat)
{
    int d = 0;
    for (int a = 0; a < 3; ++a) d += n.n[a] + n_hat.n[a];
    return d;
}

} // namespace

QuadratureResult potential_greens(const LatticeSite& n, const LatticeSite& n_hat,
                                  const QuadratureConfig& cfg)
{
    for (int a = 0; a < 3; ++a)
        if (n.n[a] < 0 || n_hat.n[a] < 0)
            throw std::invalid_argument("potential_greens: lattice components must be >= 0");

    // the 1/(k.k) weight cancels the r^2 Jacobian: radial integrand is even,
    // polynomial times e^{-r^2}, exact under Gauss-Hermite
    const int deg = angular_degree(n, n_hat);
    const int ntheta = std::max(8, deg + 2);
    const int nphi = 2 * deg + 4;

    auto radial = [&](int nodes) {
        const auto& rule = gauss_hermite(nodes);
        return sphere_integral(ntheta, nphi, [&](const std::array<double, 3>& w) {
            double sum = 0.0;
            for (size_t i = 0; i < rule.nodes.size(); ++i)
                sum += rule.weights[i] * hermite_axis_product(n, n_hat, rule.nodes[i], w);
            return 0.5 * sum;
        });
    };

    const int nodes = std::min(std::max(deg + 48, 48), cfg.max_nodes);
    const double coarse = radial(nodes);
    const double fine = radial(nodes + 16);

    int phase = 0;
    for (int a = 0; a < 3; ++a) phase += n.n[a] - n_hat.n[a];

    QuadratureResult res;
    res.method = "spherical+gauss-hermite";
    res.value = quarter_turn(phase) * fine;
    res.error_estimate = std::abs(fine - coarse);
    res.converged = res.error_estimate <= std::max(cfg.tolerance, 1e-12);
    return res;
}

QuadratureResult kg_coincidence_spatial(const LatticeSite& n, double mu,
                                        const QuadratureConfig& cfg)
{
    if (mu < 0.0) throw std::invalid_argument("kg_coincidence_spatial: mu must be >= 0");

    // prod_j H^2/(2^n n!) e^{-k.k} = pi^{3/2} prod_j Htilde^2 e^{-k.k}
    const int deg = angular_degree(n, n);
    const int ntheta = std::max(8, deg + 2);
    const int nphi = 2 * deg + 4;
    const double rmax = 9.0;

    auto value_with = [&](int panels) {
        return sphere_integral(ntheta, nphi, [&](const std::array<double, 3>& w) {
            auto f = [&](double r) {
                return r * r * hermite_axis_product(n, n, r, w) * std::exp(-r * r) * M_PI
                       / std::sqrt(r * r + mu * mu);
            };
            return std::pow(M_PI, 1.5) * integrate_gl_panels(f, 0.0, rmax, panels, 16);
        });
    };

    const double coarse = value_with(10);
    const double fine = value_with(18);

    QuadratureResult res;
    res.method = "spherical+panel-gl";
    res.value = fine;
    res.error_estimate = std::abs(fine - coarse);
    res.converged = res.error_estimate <= std::max(cfg.tolerance * std::abs(fine), 1e-10);
    return res;
}

QuadratureResult dplus_quadrature(const LatticeSite& n, const LatticeSite& n_hat,
                                  double tau, const QuadratureConfig& cfg)
{
    // D_plus = (-i pi/2) integral prod_a xi conj(xi) e^{-i|k| tau} / |k| d3k;
    // the contour weight is pinned by the -i sqrt(pi) coincidence anchor.
    const int deg = angular_degree(n, n_hat);
    const int ntheta = std::max(8, deg + 2);
    const int nphi = 2 * deg + 4;
    const double rmax = 9.0;

    auto value_with = [&](int panels) {
        return sphere_integral(ntheta, nphi, [&](const std::array<double, 3>& w) {
            auto f = [&](double r) -> cplx {
                return r * hermite_axis_product(n, n_hat, r, w) * std::exp(-r * r)
                       * std::exp(cplx{0.0, -r * tau});
            };
            cplx acc{0.0, 0.0};
            const double h = rmax / panels;
            for (int s = 0; s < panels; ++s)
                acc += integrate_gl_c(f, s * h, (s + 1) * h, 16);
            return acc;
        });
    };

    const cplx coarse = value_with(10);
    const cplx fine = value_with(18);

    int phase = 0;
    for (int a = 0; a < 3; ++a) phase += n.n[a] - n_hat.n[a];

    QuadratureResult res;
    res.method = "spherical+panel-gl";
    res.value = cplx{0.0, -0.5 * M_PI} * quarter_turn(phase) * fine;
    res.error_estimate = std::abs(fine - coarse);
    res.converged = res.error_estimate <= std::max(cfg.tolerance, 1e-9);
    return res;
}

QuadratureResult dplus_coincidence(const QuadratureConfig& cfg)
{
    return dplus_quadrature(LatticeSite{}, LatticeSite{}, 0.0, cfg);
}

QuadratureResult dminus_coincidence(const QuadratureConfig& cfg)
{
    QuadratureResult res = dplus_coincidence(cfg);
    res.value = -res.value;
    return res;
}

cplx dplus_series_term(const LatticeSite& n, const LatticeSite& n_hat, double tau)
{
    for (int a = 0; a < 3; ++a)
        if (n.n[a] < 0 || n.n[a] > 2 || n_hat.n[a] < 0 || n_hat.n[a] > 2)
            throw std::domain_error("dplus_series_term: out of regime, components must be <= 2");

    auto factorial = [](int v) {
        double f = 1.0;
        for (int i = 2; i <= v; ++i) f *= i;
        return f;
    };

    // axis coefficient of x^{a_b} in Htilde_{n} Htilde_{nhat}:
    //   pi^{-1/2} sqrt(n! nhat!) (-1)^{j+jh} 2^{a - (n+nhat)/2} / (j! jh! (n-2j)! (nhat-2jh)!)
    struct AxisTerm { int power; double coeff; };
    auto axis_terms = [&](int nb, int nhb) {
        std::vector<AxisTerm> terms;
        const double norm = std::sqrt(factorial(nb) * factorial(nhb)) / std::sqrt(M_PI);
        for (int j = 0; 2 * j <= nb; ++j) {
            for (int jh = 0; 2 * jh <= nhb; ++jh) {
                const int a = nb + nhb - 2 * (j + jh);
                const double c = norm * ((j + jh) % 2 == 0 ? 1.0 : -1.0)
                               * std::pow(2.0, a - 0.5 * (nb + nhb))
                               / (factorial(j) * factorial(jh) * factorial(nb - 2 * j)
                                  * factorial(nhb - 2 * jh));
                terms.push_back({a, c});
            }
        }
        return terms;
    };

    const auto t1 = axis_terms(n.n[0], n_hat.n[0]);
    const auto t2 = axis_terms(n.n[1], n_hat.n[1]);
    const auto t3 = axis_terms(n.n[2], n_hat.n[2]);

    cplx sum{0.0, 0.0};
    for (const auto& a1 : t1) {
        for (const auto& a2 : t2) {
            for (const auto& a3 : t3) {
                if (a1.power % 2 != 0 || a2.power % 2 != 0 || a3.power % 2 != 0)
                    continue; // odd axis parity annihilates the angular moment
                const int asum = a1.power + a2.power + a3.power;
                const int p = asum + 2;
                // spherical moment of w1^a1 w2^a2 w3^a3
                const double ang = 2.0
                    * std::exp(std::lgamma(0.5 * (a1.power + 1)) + std::lgamma(0.5 * (a2.power + 1))
                               + std::lgamma(0.5 * (a3.power + 1)) - std::lgamma(0.5 * (asum + 3)));
                // radial integral r^{p-1} e^{-r^2 - i tau r} dr
                const cplx rad = std::pow(2.0, -0.5 * p) * std::tgamma(static_cast<double>(p))
                                 * std::exp(-tau * tau / 8.0)
                                 * parabolic_cylinder_d_imag(-p, tau / std::sqrt(2.0));
                sum += a1.coeff * a2.coeff * a3.coeff * ang * rad;
            }
        }
    }

    int phase = 0;
    for (int a = 0; a < 3; ++a) phase += n.n[a] - n_hat.n[a];
    return cplx{0.0, -0.5 * M_PI} * quarter_turn(phase) * sum;
}

namespace {

CutoffScan scan_common(double m, std::vector<double> lambdas)
{
    if (m <= 0.0) throw std::invalid_argument("cutoff scan: m must be > 0");
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    if (lambdas.size() < 4)
        throw std::invalid_argument("cutoff scan: need >= 4 distinct cutoffs");
    if (lambdas.front() <= 0.0)
        throw std::invalid_argument("cutoff scan: cutoffs must be positive");
    if (lambdas.back() / lambdas.front() < 100.0)
        throw std::invalid_argument("cutoff scan: cutoffs must span >= 2 decades");
    CutoffScan scan;
    scan.lambdas = std::move(lambdas);
    return scan;
}

// cumulative integral of f over [0, Lambda_i] with log-refined panels
std::vector<double> cumulative_radial(const std::function<double(double)>& f,
                                      const std::vector<double>& lambdas)
{
    std::vector<double> out;
    double acc = 0.0;
    double lo = 0.0;
    for (double hi : lambdas) {
        acc += integrate_gl_panels(f, lo, hi, 24, 16);
        out.push_back(acc);
        lo = hi;
    }
    return out;
}

} // namespace

CutoffScan cutoff_scan_a(double m, std::vector<double> lambdas)
{
    CutoffScan scan = scan_common(m, std::move(lambdas));

    // Euclidean-rotated fermion self-energy scalar, x-integral done exactly:
    //   coefficient of I:       r^3 int_0^1 (r^2 + m^2 x^2)^{-2} dx = F(m/r) / m
    //   coefficient of gamma^4: same minus r / (2 (r^2 + m^2))
    auto F = [](double T) { return 0.5 * T / (1.0 + T * T) + 0.5 * std::atan(T); };
    auto f_unit = [&](double r) {
        return r <= 0.0 ? M_PI / 4.0 / m : F(m / r) / m;
    };
    auto f_gamma = [&](double r) {
        return f_unit(r) - 0.5 * r / (r * r + m * m);
    };

    const double shell = 2.0 * M_PI * M_PI; // 4D solid angle
    scan.values = cumulative_radial(f_unit, scan.lambdas);
    scan.gamma4_values = cumulative_radial(f_gamma, scan.lambdas);
    for (auto& v : scan.values) v *= shell;
    for (auto& v : scan.gamma4_values) v *= shell;

    scan.fit = fit_growth_law(scan.lambdas, scan.values);
    scan.gamma4_fit = fit_growth_law(scan.lambdas, scan.gamma4_values);
    scan.conclusive = scan.fit.valid && scan.fit.residual < 0.05;
    scan.symbolic_tags = {"delta(0)"};
    return scan;
}

CutoffScan cutoff_scan_continuous_photon(double m, std::vector<double> lambdas)
{
    CutoffScan scan = scan_common(m, std::move(lambdas));

    auto f = [&](double r) {
        const double d = r * r + m * m;
        return r * r * r * (r * r + 2.0 * m * m) / (d * d);
    };
    const double shell = 2.0 * M_PI * M_PI;
    scan.values = cumulative_radial(f, scan.lambdas);
    for (auto& v : scan.values) v *= shell;

    scan.fit = fit_growth_law(scan.lambdas, scan.values);
    scan.conclusive = scan.fit.valid && scan.fit.residual < 0.05;
    scan.symbolic_tags = {"[delta(0)]^4"};
    return scan;
}

CutoffScan cutoff_scan_deep(int reduced_axes, double m, std::vector<double> lambdas,
                            int samples, std::uint64_t seed)
{
    if (reduced_axes < 1 || reduced_axes > 3)
        throw std::invalid_argument("cutoff_scan_deep: reduced_axes must be 1, 2 or 3");
    if (samples < 100) throw std::invalid_argument("cutoff_scan_deep: need >= 100 samples");
    CutoffScan scan = scan_common(m, std::move(lambdas));

    const int dim = 4 + reduced_axes; // spatial k (3) + rotated k4 + reduced q axes
    const double delta_reg = 1e-3;    // tube regulator for the |.|^{-1} channels

    // xorshift-based deterministic stream, independent of the platform RNG
    auto next_unit = [state = seed ? seed : 0x9e3779b97f4a7c15ULL]() mutable {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return 2.0 * (static_cast<double>(state >> 11) / 9007199254740992.0) - 1.0;
    };

    // common random numbers across cutoffs: one fixed unit sample set
    std::vector<std::array<double, 7>> unit(static_cast<size_t>(samples));
    for (auto& u : unit)
        for (int d = 0; d < dim; ++d) u[static_cast<size_t>(d)] = next_unit();

    const auto& xrule = gauss_legendre(8);

    for (double lambda : scan.lambdas) {
        double acc = 0.0;
        for (const auto& u : unit) {
            // reduced axes: importance map s = L z|z| flattens |s|^{-1/2}
            double weight = 1.0;
            double ks[3] = {0.0, 0.0, 0.0};
            double qs[3] = {0.0, 0.0, 0.0};
            for (int a = 0; a < reduced_axes; ++a) {
                const double zs = u[static_cast<size_t>(2 * a)];
                const double zt = u[static_cast<size_t>(2 * a + 1)];
                const double s = lambda * zs * std::abs(zs);
                const double t = lambda * zt * std::abs(zt);
                weight *= (2.0 * lambda * std::abs(zs)) * (2.0 * lambda * std::abs(zt)) * 0.5;
                ks[a] = 0.5 * (s + t);
                qs[a] = 0.5 * (s - t);
            }
            // remaining k components uniform in [-lambda, lambda]
            double k4 = 0.0;
            {
                int idx = 2 * reduced_axes;
                for (int a = reduced_axes; a < 3; ++a) {
                    ks[a] = lambda * u[static_cast<size_t>(idx++)];
                    weight *= 2.0 * lambda;
                }
                k4 = lambda * u[static_cast<size_t>(idx++)];
                weight *= 2.0 * lambda;
            }

            double channel = 1.0;
            for (int a = 0; a < reduced_axes; ++a) {
                const double sp = ks[a] + qs[a];
                const double sm = ks[a] - qs[a];
                channel *= 1.0 / std::max(std::abs(sp), delta_reg)
                         + 1.0 / std::max(std::abs(sm), delta_reg)
                         + 2.0 / std::sqrt(std::max(std::abs(sp * sm), delta_reg * delta_reg));
            }

            double xint = 0.0;
            for (size_t ix = 0; ix < xrule.nodes.size(); ++ix) {
                const double x = 0.5 * (xrule.nodes[ix] + 1.0);
                double denom = k4 * k4 + m * m * x * x;
                for (int a = 0; a < 3; ++a) denom += ks[a] * ks[a];
                for (int a = 0; a < reduced_axes; ++a)
                    denom += x * (qs[a] * qs[a] - ks[a] * ks[a]);
                xint += 0.5 * xrule.weights[ix] / (denom * denom);
            }
            acc += weight * channel * xint;
        }
        scan.values.push_back(acc / samples);
    }

    scan.fit = fit_growth_law(scan.lambdas, scan.values);
    scan.conclusive = scan.fit.valid && scan.fit.residual < 0.2;
    scan.symbolic_tags = {"delta(0)", "channel |.|^{-1} tube regulator 1e-3"};
    return scan;
}

} // namespace dps
