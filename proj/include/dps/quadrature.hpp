#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace dps {

using cplx = std::complex<double>;

/// Shared return type of every improper / principal-value integral in the
/// library: the value, an error estimate, and whether the estimate met the
/// requested tolerance.
struct QuadratureResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
    std::string method;
};

/// Knobs shared by all quadrature-backed operations.
struct QuadratureConfig {
    double tolerance = 1e-10;
    int max_nodes = 512;       // per 1D rule
    int truncation_nmax = 256; // default cutoff for infinite lattice sums
};

/// Nodes and weights of an N-point Gauss-Hermite rule (weight e^{-x^2}).
/// Results are cached per N; safe for concurrent callers.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussHermiteRule& gauss_hermite(int n);

/// Gauss-Legendre rule on [-1, 1], cached per N.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

/// integral of f over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n = 32);
cplx integrate_gl_c(const std::function<cplx(double)>& f, double a, double b, int n = 32);

/// integral of f over [a, b] split into `segments` equal Gauss-Legendre panels.
double integrate_gl_panels(const std::function<double(double)>& f, double a, double b,
                           int segments, int nodes_per_segment = 16);

} // namespace dps
