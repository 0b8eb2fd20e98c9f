#pragma once

// Test-only oracles, kept independent of the library's quadrature and
// recurrence paths: adaptive Simpson on long double, and basis values from
// explicit Hermite coefficients.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplxl = std::complex<long double>;

template <typename F>
auto simpson_rec(F&& f, long double a, long double b, decltype(f(0.0L)) fa,
                 decltype(f(0.0L)) fb, decltype(f(0.0L)) fm, long double tol, int depth)
    -> decltype(f(0.0L))
{
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m);
    const long double rm = 0.5L * (m + b);
    const auto flm = f(lm);
    const auto frm = f(rm);
    const auto whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
    const auto left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const auto right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    const auto delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0L * tol)
        return left + right + delta / 15.0L;
    return simpson_rec(f, a, m, fa, fm, flm, tol * 0.5L, depth - 1)
         + simpson_rec(f, m, b, fm, fb, frm, tol * 0.5L, depth - 1);
}

template <typename F>
auto integrate(F&& f, long double a, long double b, long double tol = 1e-13L, int depth = 32)
    -> decltype(f(0.0L))
{
    const auto fa = f(a);
    const auto fb = f(b);
    const auto fm = f(0.5L * (a + b));
    return simpson_rec(f, a, b, fa, fb, fm, tol, depth);
}

// Hermite polynomial by the explicit coefficient sum, evaluated in long
// double; fine for the small n the oracles need.
inline long double hermite(int n, long double x)
{
    long double sum = 0.0L;
    auto fact = [](int v) {
        long double r = 1.0L;
        for (int i = 2; i <= v; ++i) r *= i;
        return r;
    };
    for (int j = 0; 2 * j <= n; ++j) {
        const long double c = ((j % 2 == 0) ? 1.0L : -1.0L) * fact(n)
                            / (fact(j) * fact(n - 2 * j));
        sum += c * std::pow(2.0L * x, static_cast<long double>(n - 2 * j));
    }
    return sum;
}

// xi_n(k) from the defining formula (explicit Hermite, factorial, Gaussian).
inline cplxl xi(int n, long double k)
{
    long double fact = 1.0L;
    for (int i = 2; i <= n; ++i) fact *= i;
    const long double amp = std::exp(-0.5L * k * k) * hermite(n, k)
                          / (std::pow(static_cast<long double>(M_PI), 0.25L)
                             * std::pow(2.0L, 0.5L * n) * std::sqrt(fact));
    switch (n % 4) {
        case 0: return {amp, 0.0L};
        case 1: return {0.0L, amp};
        case 2: return {-amp, 0.0L};
        default: return {0.0L, -amp};
    }
}

} // namespace oracle
