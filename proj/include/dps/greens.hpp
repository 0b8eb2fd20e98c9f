#pragma once

#include "dps/fitting.hpp"
#include "dps/quadrature.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dps {

/// Site of the three-dimensional nonnegative-integer lattice.
struct LatticeSite {
    std::array<int, 3> n{0, 0, 0};
};

/// G(n, nhat) = integral (k.k)^{-1} prod_a xi_{n_a}(k_a) conj(xi_{nhat_a}(k_a)) d3k,
/// by spherical angular quadrature times a Gauss-Hermite radial rule (the
/// angular factor leaves a polynomial-times-Gaussian radial integrand).
/// Finite for all sites, including coincident ones.
QuadratureResult potential_greens(const LatticeSite& n, const LatticeSite& n_hat,
                                  const QuadratureConfig& cfg = {});

/// Spatial Klein-Gordon coincidence integral:
/// integral e^{-k.k} prod_j H_{n_j}(k_j)^2 / (2^{n_j} n_j!) W(|k|, mu) d3k
/// with the on-shell contour weight W = pi / sqrt(k.k + mu^2).
QuadratureResult kg_coincidence_spatial(const LatticeSite& n, double mu,
                                        const QuadratureConfig& cfg = {});

/// D_plus(0,0;0,0) by direct numerical integration of the defining integral;
/// matches -i sqrt(pi) within 1e-6 when the contour convention is right.
QuadratureResult dplus_coincidence(const QuadratureConfig& cfg = {});

/// D_minus counterpart (conjugate contour); equals +i sqrt(pi) at coincidence.
QuadratureResult dminus_coincidence(const QuadratureConfig& cfg = {});

/// Closed-form propagator term via finite Hermite-coefficient sums, spherical
/// moments, and parabolic cylinder functions D_{-p}(i tau / sqrt 2).
/// Valid for all components <= 2 (small-index regime).
cplx dplus_series_term(const LatticeSite& n, const LatticeSite& n_hat, double t_minus_that);

/// Direct quadrature of the same defining integral, the cross-check for
/// dplus_series_term at arbitrary small indices.
QuadratureResult dplus_quadrature(const LatticeSite& n, const LatticeSite& n_hat,
                                  double t_minus_that, const QuadratureConfig& cfg = {});

/// Numerical divergence-degree probe: integral estimates I(Lambda) on a grid
/// of cutoff radii with the growth-law fit I = Lambda^degree (a log Lambda + b).
struct CutoffScan {
    std::vector<double> lambdas;
    std::vector<double> values;
    GrowthFit fit;
    bool conclusive = true;
    std::vector<std::string> symbolic_tags; // delta(0) bookkeeping, never floats

    // secondary channel (gamma^4 coefficient), populated by cutoff_scan_a
    std::vector<double> gamma4_values;
    GrowthFit gamma4_fit;
};

/// Fermion self-energy integrand A of the discrete model, Euclidean-rotated
/// and reduced to its scalar coefficient functions; the overall constant
/// numerator factors are normalized out so the log coefficient is m-stable.
/// Signature: degree ~ 0 with a nonzero log coefficient.
CutoffScan cutoff_scan_a(double m, std::vector<double> lambdas);

/// Standard-theory photon self-energy scalar integrand (continuum contrast
/// class): degree ~ 2.
CutoffScan cutoff_scan_continuous_photon(double m, std::vector<double> lambdas);

/// Longer-running Monte Carlo scans of the B/C/D integrands with their
/// |k +/- q|^{-1} and |k^2 - q^2|^{-1/2} channel factors; `reduced_axes`
/// selects B (1), C (2) or D (3). Channel singularities are importance-sampled;
/// the residual |.|^{-1} tube regulator is reported as a tag.
CutoffScan cutoff_scan_deep(int reduced_axes, double m, std::vector<double> lambdas,
                            int samples, std::uint64_t seed);

} // namespace dps
