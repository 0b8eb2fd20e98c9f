#include "dps/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace dps {

namespace {

constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
constexpr double kPiHalfInv = 0.5641895835477563;     // pi^{-1/2}

inline cplx quarter_turn(int n)
{
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// Real Hermite-function recurrence h_{n+1} = k sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1},
// h_0 = pi^{-1/4} e^{-k^2/2}. The Gaussian is carried as a log-scale so large |k|
// never overflows: values are (mantissa, log_scale) pairs until the final exp.
struct ScaledSweep {
    double prev = 0.0;
    double curr = kPiQuarterInv;
    double log_scale;
    int n = 0;

    explicit ScaledSweep(double k) : log_scale(-0.5 * k * k), k_(k) {}

    void advance()
    {
        const double next = k_ * std::sqrt(2.0 / (n + 1)) * curr
                          - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
        prev = curr;
        curr = next;
        ++n;
        const double mag = std::max(std::abs(prev), std::abs(curr));
        if (mag > 1e120) {
            prev *= 1e-120;
            curr *= 1e-120;
            log_scale += 120.0 * std::log(10.0);
        }
    }

    double value() const
    {
        if (log_scale < -745.0) return 0.0; // underflows to zero gracefully
        return curr * std::exp(log_scale);
    }

private:
    double k_;
};

} // namespace

cplx eval_xi(int n, double k)
{
    if (n < 0) throw std::invalid_argument("eval_xi: n must be >= 0");
    ScaledSweep sweep(k);
    for (int i = 0; i < n; ++i) sweep.advance();
    return quarter_turn(n) * sweep.value();
}

std::vector<cplx> eval_xi_row(int nmax, double k)
{
    if (nmax < 0) throw std::invalid_argument("eval_xi_row: nmax must be >= 0");
    std::vector<cplx> row(nmax + 1);
    ScaledSweep sweep(k);
    row[0] = quarter_turn(0) * sweep.value();
    for (int i = 1; i <= nmax; ++i) {
        sweep.advance();
        row[i] = quarter_turn(i) * sweep.value();
    }
    return row;
}

std::vector<BasisValue> basis_sweep(int n, double k_min, double k_max, int steps, bool asymptotic)
{
    if (steps < 1 || k_max < k_min)
        throw std::invalid_argument("basis_sweep: need steps >= 1 and k_max >= k_min");
    std::vector<BasisValue> out;
    out.reserve(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double k = (steps == 1) ? k_min : k_min + (k_max - k_min) * i / (steps - 1);
        out.push_back({n, k, asymptotic ? eval_zeta(n, k) : eval_xi(n, k)});
    }
    return out;
}

cplx eval_xi_derivative0(int n)
{
    if (n < 0) throw std::invalid_argument("eval_xi_derivative0: n must be >= 0");
    // h_n'(k) = sqrt(2n) h_{n-1}(k) - k h_n(k), so at k = 0:
    if (n == 0) return {0.0, 0.0};
    return cplx{0.0, 1.0} * std::sqrt(2.0 * n) * eval_xi(n - 1, 0.0);
}

cplx eval_zeta(int n, double k)
{
    if (n < 0) throw std::invalid_argument("eval_zeta: n must be >= 0");
    if (n <= 1) return eval_xi(n, k);
    const double amp = kPiHalfInv * std::pow(static_cast<double>(n), -0.25);
    const double phase = 2.0 * k * std::sqrt(static_cast<double>(n));
    if (n % 2 == 0) return {amp * std::cos(phase), 0.0};
    return {0.0, amp * std::sin(phase)};
}

std::vector<double> detail::hermite_normalized_row(int nmax, double x)
{
    std::vector<double> row(nmax + 1);
    double prev = 0.0;
    double curr = kPiQuarterInv;
    row[0] = curr;
    for (int i = 1; i <= nmax; ++i) {
        const double next = x * std::sqrt(2.0 / i) * curr
                          - std::sqrt((i - 1.0) / i) * prev;
        prev = curr;
        curr = next;
        row[i] = curr;
    }
    return row;
}

QuadratureResult orthonormality_defect(int m, int n, const QuadratureConfig& cfg)
{
    if (m < 0 || n < 0) throw std::invalid_argument("orthonormality_defect: indices must be >= 0");

    // integral conj(xi_m) xi_n dk = i^{n-m} integral Htilde_m Htilde_n e^{-k^2} dk.
    // The integrand is polynomial x Gaussian, so Gauss-Hermite is exact with
    // margin at 2 max(m,n) + 64 nodes; the error estimate compares node counts.
    auto inner = [&](int nodes) {
        const auto& rule = gauss_hermite(nodes);
        double sum = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const auto row = detail::hermite_normalized_row(std::max(m, n), rule.nodes[i]);
            sum += rule.weights[i] * row[m] * row[n];
        }
        return sum;
    };

    const int nodes = std::min(std::max(2 * std::max(m, n) + 64, 16), cfg.max_nodes);
    const double coarse = inner(nodes);
    const double fine = inner(nodes + 16);

    QuadratureResult res;
    res.method = "gauss-hermite";
    const double kron = (m == n) ? 1.0 : 0.0;
    res.value = std::abs(fine - kron);
    res.error_estimate = std::abs(fine - coarse);
    res.converged = res.error_estimate <= std::max(cfg.tolerance, 1e-14);
    return res;
}

} // namespace dps
