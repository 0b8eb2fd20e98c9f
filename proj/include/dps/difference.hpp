#pragma once

#include "dps/fitting.hpp"
#include "dps/quadrature.hpp"

#include <string>
#include <vector>

namespace dps {

/// State on the discrete lattice: a finite stored prefix over n = 0..nmax
/// plus declared behavior beyond.
enum class TailBehavior { zero, undefined };

struct GridFunction {
    std::vector<cplx> values;
    TailBehavior tail = TailBehavior::zero;

    GridFunction() = default;
    explicit GridFunction(int nmax, TailBehavior t = TailBehavior::zero)
        : values(static_cast<size_t>(nmax) + 1, cplx{0.0, 0.0}), tail(t) {}

    int nmax() const { return static_cast<int>(values.size()) - 1; }
    cplx at(int n) const;
};

/// Delta^# psi(n) = (1/sqrt(2)) [ sqrt(n+1) psi(n+1) - sqrt(n) psi(n-1) ],
/// defined on 0..nmax-1 (the n = 0 case has the sqrt(n) term annihilated).
GridFunction delta_sharp(const GridFunction& psi);

/// G(n, n_hat) = (1/i) C.P.V. integral k^{-1} xi_n(k) conj(xi_n_hat(k)) dk.
/// The even part of the integrand about k = 0 pairs with 1/k to exactly zero;
/// only the odd part is quadratured, so the pole never enters floating point.
QuadratureResult greens_function(int n, int n_hat, const QuadratureConfig& cfg = {});

struct SolveResult {
    GridFunction psi;
    bool converged = true;
    double max_quadrature_error = 0.0;
    bool tail_warning = false; // last decade of the n_hat sum contributed > 1e-6 relative
};

/// General solution psi(n) = alpha xi_n(0) - i sum_nhat phi(nhat) CPV-integral,
/// truncated at phi's stored prefix.
SolveResult solve_difference(const GridFunction& phi, cplx alpha, const QuadratureConfig& cfg = {});

enum class ExpansionVariable { powers_of_ie, powers_of_e };

struct PerturbationSeries {
    std::vector<GridFunction> orders;
    double coupling = 0.0;
    ExpansionVariable expansion = ExpansionVariable::powers_of_ie;
    std::vector<bool> divergent_flags;
    std::vector<std::string> notes;
    bool converged = true;
    bool tail_warning = false;

    /// sum_j w^j orders[j](n) with w = ie or e per `expansion`.
    cplx resummed(int n) const;
};

/// Orders 0..order of the discrete linear model Delta^# psi = ie psi.
/// order <= 2; the second order excludes (and flags) the divergent constant
/// lim_{k->0} k^{-2} xi_n(k), keeping the renormalized finite part.
PerturbationSeries perturb_linear_discrete(double e, int order, int nmax,
                                           const QuadratureConfig& cfg = {});

/// Orders 0..2 of the discrete nonlinear model Delta^# psi = e psi^2.
/// All orders are finite; no flags are raised.
PerturbationSeries perturb_nonlinear_discrete(double e, int nmax,
                                              const QuadratureConfig& cfg = {});

/// Cutoff-scan report for the continuous toy models, where the second-order
/// Green's-function solution carries an L^2 term.
struct ContinuousDivergenceReport {
    std::string model;
    std::vector<double> L_values;
    std::vector<double> divergent_term; // value of the cutoff term at each L
    PowerLawFit growth;                 // exponent ~ 2 when >= 2 cutoffs given
    bool fit_available = false;

    std::vector<cplx> order_weights; // expansion weight per order at the given e

    // nonlinear model only: renormalized resummation against the exact solution
    double exact_value = 0.0;
    double resummed_value = 0.0;
    double resummation_error = 0.0;
};

/// psi' = ie psi solved perturbatively on the line: psi_1 = alpha x is finite,
/// psi_2 carries (alpha/2) L^2. alpha = 1.
ContinuousDivergenceReport perturb_linear_continuous(double e, const std::vector<double>& L_values);

/// psi' = e psi^2 on the line: orders alpha, alpha^2 x, alpha^3 x^2 plus the
/// divergent -alpha^3 L^2 term; renormalized resummation vs alpha/(1 - e alpha x).
ContinuousDivergenceReport perturb_nonlinear_continuous(double e, double alpha, double x,
                                                        const std::vector<double>& L_values);

namespace detail {
/// CPV integral k^{-1} xi_n(k) conj(xi_n_hat(k)) dk (zero by parity for
/// n + n_hat even). Shared by the Green's function and the solvers.
QuadratureResult cpv_xi_pair_over_k(int n, int n_hat, const QuadratureConfig& cfg);
} // namespace detail

} // namespace dps
