#include "dps/oscillatory.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace dps {

namespace {

constexpr double kAvgTol = 1e-10;

// Iterated averaging of the partial sums of an alternating series.
// Returns the accelerated limit plus a convergence verdict.
struct EulerResult {
    double value = 0.0;
    bool converged = false;
    double error = 0.0;
};

EulerResult euler_average(const std::vector<double>& terms)
{
    EulerResult out;
    if (terms.empty()) { out.converged = true; return out; }

    std::vector<double> row(terms.size());
    double s = 0.0;
    for (size_t i = 0; i < terms.size(); ++i) {
        s += terms[i];
        row[i] = s;
    }

    double prev = row.back();
    out.value = prev;
    while (row.size() > 1) {
        for (size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
        const double diag = row.back();
        out.error = std::abs(diag - prev);
        out.value = diag;
        if (out.error < kAvgTol) { out.converged = true; break; }
        prev = diag;
    }
    return out;
}

// integral over [a,b] of p(x) x^{-beta}; `singular_at_zero` flattens the
// x^{-beta} endpoint with the substitution x = b u^{1/(1-beta)}.
double segment_integral(const std::function<double(double)>& p, double a, double b,
                        double beta, bool singular_at_zero)
{
    if (singular_at_zero) {
        const double expo = 1.0 / (1.0 - beta);
        auto g = [&](double u) {
            const double x = b * std::pow(u, expo);
            return p(x) * std::pow(b, 1.0 - beta) * expo;
        };
        return integrate_gl(g, 0.0, 1.0, 48);
    }
    auto g = [&](double x) { return p(x) * std::pow(x, -beta); };
    return integrate_gl(g, a, b, 32);
}

// Segment-sum integral_a^inf p(x) x^{-beta} dx where p has sign segments of
// length `period` with boundaries at offset + j*period. a = 0 is allowed when
// offset > 0 or the first boundary coincides with 0.
SegmentRun run_segments(const std::function<double(double)>& p, double a, double beta,
                        double period, double first_boundary_after, int max_segments)
{
    SegmentRun run;

    // boundary grid: first_boundary_after, first_boundary_after + period, ...
    double b0 = first_boundary_after;
    while (b0 <= a) b0 += period;

    // prefix piece [a, b0]; singular only when it starts at x = 0
    run.prefix = segment_integral(p, a, b0, beta, a == 0.0);

    std::vector<double> terms;
    bool alternates = true;
    double lo = b0;
    for (int n = 0; n < max_segments; ++n) {
        const double hi = lo + period;
        const double c = segment_integral(p, lo, hi, beta, false);
        run.segments.push_back({lo, hi, c});
        if (!terms.empty() && c * terms.back() > 0.0) alternates = false;
        terms.push_back(c);
        lo = hi;

        if (n >= 23 && (n - 23) % 24 == 0) {
            const EulerResult acc = euler_average(terms);
            if (acc.converged) {
                run.accumulated = run.prefix + acc.value;
                run.converged = true;
                run.error_estimate = acc.error;
                run.alternation_verified = alternates;
                return run;
            }
        }
    }
    const EulerResult acc = euler_average(terms);
    run.accumulated = run.prefix + acc.value;
    run.converged = acc.converged;
    run.error_estimate = acc.error;
    run.alternation_verified = alternates;
    return run;
}

} // namespace

SegmentSum segment_sum_sin(double k, double beta, int max_segments)
{
    if (k == 0.0) throw std::invalid_argument("segment_sum_sin: k must be nonzero");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("segment_sum_sin: beta in (0,1)");

    const double ak = std::abs(k);
    const double period = M_PI / ak;
    auto p = [ak](double x) { return std::sin(ak * x); };
    SegmentSum out;
    out.primary = run_segments(p, 0.0, beta, period, period, max_segments);

    const double sign = (k > 0.0) ? 1.0 : -1.0;
    out.accumulated = sign * out.primary.accumulated;
    out.alternation_verified = out.primary.alternation_verified;
    out.converged = out.primary.converged;
    out.error_estimate = out.primary.error_estimate;
    return out;
}

SegmentSum segment_sum_exp(double k, double beta, int max_segments)
{
    if (k == 0.0) throw std::invalid_argument("segment_sum_exp: k must be nonzero");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("segment_sum_exp: beta in (0,1)");

    const double ak = std::abs(k);
    const double period = M_PI / ak;
    auto pcos = [ak](double x) { return std::cos(ak * x); };
    auto psin = [ak](double x) { return std::sin(ak * x); };

    SegmentSum out;
    // cos(|k|x) changes sign at (n + 1/2) pi / |k|
    out.primary = run_segments(pcos, 0.0, beta, period, 0.5 * period, max_segments);
    out.secondary = run_segments(psin, 0.0, beta, period, period, max_segments);

    const double sign = (k > 0.0) ? 1.0 : -1.0;
    out.accumulated = cplx{out.primary.accumulated, sign * out.secondary->accumulated};
    out.alternation_verified = out.primary.alternation_verified && out.secondary->alternation_verified;
    out.converged = out.primary.converged && out.secondary->converged;
    out.error_estimate = out.primary.error_estimate + out.secondary->error_estimate;
    out.spike_note = "-2 cos((1-beta) pi/2) Gamma(-beta) |k|^beta delta(k)";
    return out;
}

QuadratureResult tail_integral(double k, double N, int max_segments)
{
    if (k == 0.0) throw std::invalid_argument("tail_integral: k must be nonzero");
    if (N < 1.0) throw std::invalid_argument("tail_integral: N must be >= 1");

    // x = 2 sqrt(y): integral_N^inf y^{-3/4} e^{i 2 k sqrt(y)} dy
    //             = sqrt(2) integral_{2 sqrt(N)}^inf x^{-1/2} e^{i k x} dx
    const double a = 2.0 * std::sqrt(N);
    const double ak = std::abs(k);
    const double period = M_PI / ak;
    auto pcos = [ak](double x) { return std::cos(ak * x); };
    auto psin = [ak](double x) { return std::sin(ak * x); };

    const SegmentRun rc = run_segments(pcos, a, 0.5, period, 0.5 * period, max_segments);
    const SegmentRun rs = run_segments(psin, a, 0.5, period, period, max_segments);

    const double sign = (k > 0.0) ? 1.0 : -1.0;
    QuadratureResult res;
    res.method = "segment-sum";
    res.value = std::sqrt(2.0) * cplx{rc.accumulated, sign * rs.accumulated};
    res.error_estimate = std::sqrt(2.0) * (rc.error_estimate + rs.error_estimate);
    res.converged = rc.converged && rs.converged;
    return res;
}

TailAsymptotic tail_asymptotic(double k, double N)
{
    if (k == 0.0) throw std::invalid_argument("tail_asymptotic: k must be nonzero");
    if (std::abs(k) * std::sqrt(N) < 5.0)
        throw std::domain_error("tail_asymptotic: out of regime, need |k| sqrt(N) >= 5");

    const double sign = (k > 0.0) ? 1.0 : -1.0;
    TailAsymptotic out;
    out.smooth = cplx{0.0, sign * std::pow(N, -0.25) / std::abs(k)};
    out.spike_weight = std::pow(N, -0.75) / std::abs(k);
    return out;
}

std::vector<double> mean_value_thetas(const SegmentRun& run, double k, double beta)
{
    // |c_n| = 2 pi^{-beta} |k|^{beta-1} (n + Theta_n)^{-beta}, where segment n
    // spans [n pi/|k|, (n+1) pi/|k|]; n is recovered from the interval itself.
    const double scale = 2.0 * std::pow(M_PI, -beta) * std::pow(std::abs(k), beta - 1.0);
    std::vector<double> thetas;
    thetas.reserve(run.segments.size());
    for (const Segment& seg : run.segments) {
        const double n = std::round(seg.a * std::abs(k) / M_PI);
        const double c = std::abs(seg.integral);
        if (c == 0.0) { thetas.push_back(-1.0); continue; }
        const double pos = std::pow(scale / c, 1.0 / beta);
        thetas.push_back(pos - n);
    }
    return thetas;
}

} // namespace dps
