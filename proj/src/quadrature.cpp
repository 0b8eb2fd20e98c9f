#include "dps/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace dps {

namespace {

// QL with implicit shifts on a symmetric tridiagonal matrix, rotating a
// companion vector z along (Golub-Welsch). d: diagonal, e: subdiagonal.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z)
{
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.push_back(0.0);
    const double prec = 2.0 * std::numeric_limits<double>::epsilon();

    for (int l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            int m = l;
            while (m < n - 1 && std::abs(e[m]) > prec * (std::abs(d[m]) + std::abs(d[m + 1])))
                ++m;
            if (m == l) break;
            if (iter >= 60) throw std::runtime_error("tridiagonal_ql: no convergence");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

// Golub-Welsch: Hermite weight e^{-x^2} has Jacobi diagonal 0 and
// subdiagonal sqrt(i/2); weights are sqrt(pi) times the squared first
// eigenvector components. Stable at any order used here.
GaussHermiteRule build_gauss_hermite(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");

    std::vector<double> d(static_cast<size_t>(n), 0.0);
    std::vector<double> e(static_cast<size_t>(n) - 1);
    std::vector<double> z(static_cast<size_t>(n), 0.0);
    for (int i = 1; i < n; ++i) e[static_cast<size_t>(i) - 1] = std::sqrt(0.5 * i);
    z[0] = 1.0;
    tridiagonal_ql(d, e, z);

    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[static_cast<size_t>(a)] < d[static_cast<size_t>(b)]; });

    GaussHermiteRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    const double mu0 = std::sqrt(M_PI);
    for (int i = 0; i < n; ++i) {
        rule.nodes[static_cast<size_t>(i)] = d[static_cast<size_t>(idx[static_cast<size_t>(i)])];
        rule.weights[static_cast<size_t>(i)] = mu0 * z[static_cast<size_t>(idx[static_cast<size_t>(i)])]
                                             * z[static_cast<size_t>(idx[static_cast<size_t>(i)])];
    }
    // the rule is symmetric; enforce it exactly
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (rule.nodes[static_cast<size_t>(j)] - rule.nodes[static_cast<size_t>(i)]);
        rule.nodes[static_cast<size_t>(i)] = -x;
        rule.nodes[static_cast<size_t>(j)] = x;
        const double w = 0.5 * (rule.weights[static_cast<size_t>(i)] + rule.weights[static_cast<size_t>(j)]);
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(j)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<size_t>(n) / 2] = 0.0;
    return rule;
}

// Newton iteration on Legendre polynomials (Numerical-Recipes style gauleg).
GaussLegendreRule build_gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    constexpr double kEps = 1e-15;
    GaussLegendreRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= kEps) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

template <typename Rule, Rule (*Builder)(int)>
const Rule& cached_rule(int n)
{
    static std::map<int, Rule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, Builder(n)).first;
    return it->second;
}

} // namespace

const GaussHermiteRule& gauss_hermite(int n)
{
    return cached_rule<GaussHermiteRule, build_gauss_hermite>(n);
}

const GaussLegendreRule& gauss_legendre(int n)
{
    return cached_rule<GaussLegendreRule, build_gauss_legendre>(n);
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n)
{
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return hw * sum;
}

cplx integrate_gl_c(const std::function<cplx(double)>& f, double a, double b, int n)
{
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    cplx sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return hw * sum;
}

double integrate_gl_panels(const std::function<double(double)>& f, double a, double b,
                           int segments, int nodes_per_segment)
{
    double sum = 0.0;
    const double h = (b - a) / segments;
    for (int s = 0; s < segments; ++s)
        sum += integrate_gl(f, a + s * h, a + (s + 1) * h, nodes_per_segment);
    return sum;
}

} // namespace dps
