#pragma once

#include "dps/quadrature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dps {

/// One sign-segment of an oscillatory integrand: the interval and its
/// partial integral c_n.
struct Segment {
    double a = 0.0;
    double b = 0.0;
    double integral = 0.0;
};

/// A single alternating-segment summation run over a real integrand.
struct SegmentRun {
    std::vector<Segment> segments;
    double prefix = 0.0;     // contribution before the first full sign-segment
    double accumulated = 0.0;
    bool alternation_verified = false;
    bool converged = false;
    double error_estimate = 0.0;
};

/// Result of a segment-summed oscillatory integral. `primary` carries the
/// sin-type run; `secondary` is the cos-type run when the integrand is
/// complex (e^{ikx}). Delta spikes that a fixed-k quadrature cannot see are
/// reported symbolically in `spike_note`, never folded into `accumulated`.
struct SegmentSum {
    SegmentRun primary;
    std::optional<SegmentRun> secondary;
    cplx accumulated{0.0, 0.0};
    bool alternation_verified = false;
    bool converged = false;
    double error_estimate = 0.0;
    std::string spike_note;
};

/// integral_0^inf sin(kx) x^{-beta} dx for k != 0, 0 < beta < 1, summed over
/// the sign segments [n pi/|k|, (n+1) pi/|k|] with iterated-averaging (Euler)
/// acceleration. Converges to sgn(k) Gamma(1-beta) sin((1-beta) pi/2) / |k|^{1-beta}.
SegmentSum segment_sum_sin(double k, double beta, int max_segments = 400);

/// integral_0^inf e^{ikx} x^{-beta} dx, smooth part only:
/// Gamma(1-beta)/|k|^{1-beta} exp(i sgn(k)(1-beta) pi/2). The
/// Gamma(-beta)|k|^beta delta(k) spike is reported symbolically.
SegmentSum segment_sum_exp(double k, double beta, int max_segments = 400);

/// integral_N^inf y^{-3/4} e^{i 2 k sqrt(y)} dy via the substitution x = 2 sqrt(y)
/// and segment summation. k != 0, N >= 1.
QuadratureResult tail_integral(double k, double N, int max_segments = 400);

/// Compressed asymptotic form of tail_integral for |k| sqrt(N) >= 5:
/// smooth part i sgn(k) N^{-1/4} |k|^{-1}, spike weight N^{-3/4} |k|^{-1}
/// (a symbolic delta(k), never a float multiplied in).
struct TailAsymptotic {
    cplx smooth{0.0, 0.0};
    double spike_weight = 0.0;
};

TailAsymptotic tail_asymptotic(double k, double N);

/// Solve |c_n| = 2 pi^{-beta} |k|^{beta-1} (n + Theta_n)^{-beta} for each full
/// sign-segment of a sin run anchored at x = 0; mean-value placement requires
/// every Theta_n to land in (0,1).
std::vector<double> mean_value_thetas(const SegmentRun& run, double k, double beta);

} // namespace dps
