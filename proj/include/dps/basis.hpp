#pragma once

#include "dps/quadrature.hpp"

#include <vector>

namespace dps {

/// One evaluation of a momentum-space basis function: index, argument, value.
struct BasisValue {
    int n = 0;
    double k = 0.0;
    cplx value{0.0, 0.0};
};

/// xi_n(k) = i^n e^{-k^2/2} H_n(k) / (pi^{1/4} 2^{n/2} sqrt(n!)), evaluated
/// through the normalized three-term recurrence. Exact i^n phase (mod 4),
/// exponent-tracked rescaling so there is no overflow up to n = 10^4, |k| <= 50.
cplx eval_xi(int n, double k);

/// All of xi_0(k) .. xi_nmax(k) in one recurrence sweep.
std::vector<cplx> eval_xi_row(int nmax, double k);

/// Evaluate one basis function on a uniform k-grid; `asymptotic` selects
/// zeta_n instead of xi_n.
std::vector<BasisValue> basis_sweep(int n, double k_min, double k_max, int steps,
                                    bool asymptotic = false);

/// d/dk xi_n at k = 0; equals i sqrt(2n) xi_{n-1}(0).
cplx eval_xi_derivative0(int n);

/// Large-n companion of xi_n: identical for n in {0,1}, otherwise the
/// pi^{-1/2} n^{-1/4} cos/sin(2k sqrt(n)) branches.
cplx eval_zeta(int n, double k);

/// |integral conj(xi_m) xi_n dk - delta_mn| by Gauss-Hermite quadrature.
QuadratureResult orthonormality_defect(int m, int n, const QuadratureConfig& cfg = {});

namespace detail {
/// Orthonormalized Hermite polynomial values Htilde_0..Htilde_nmax at x,
/// where xi_n(k) = i^n Htilde_n(k) e^{-k^2/2}. Used by quadratures that
/// supply the Gaussian through the weight.
std::vector<double> hermite_normalized_row(int nmax, double x);
} // namespace detail

} // namespace dps
