#pragma once

#include "dps/quadrature.hpp"

#include <array>
#include <string>
#include <vector>

namespace dps {

/// The four Bragg-like channels of the vertex distribution, in fixed order:
/// p+q+k, q+k-p, q-k+p, q-k-p.
std::array<double, 4> vertex_channels(double p, double q, double k);

/// Sign carried by the i sgn(channel) smooth term of each channel.
constexpr std::array<int, 4> kChannelSigns{+1, -1, -1, +1};

/// A vertex distribution evaluated at one point (p, q, k): weighted Dirac
/// spikes on the channel forms plus a smooth part. Spike coefficients carry a
/// |channel|^abs_power modulation symbolically (0.5 for d#, -1 for sigma_N);
/// they are never folded into the smooth value.
struct DistributionValue {
    struct Spike {
        int channel = 0;
        double channel_value = 0.0;
        cplx coefficient{0.0, 0.0};
        double abs_power = 0.0;
    };

    std::array<double, 4> channels{};
    std::vector<Spike> spikes;
    std::array<cplx, 4> smooth_parts{};
    cplx smooth{0.0, 0.0};

    // symbolic decomposition of each smooth channel term as
    // (even + odd sgn(c)) |c|^smooth_power; needed by the product rules
    std::array<cplx, 4> smooth_even{};
    std::array<cplx, 4> smooth_odd{};
    double smooth_power = 0.0;

    bool singular = false; // evaluation point within the guard band of a spike manifold
    std::vector<int> singular_channels;
};

/// Symbolic product a * conj(b) following the annihilation device:
/// |c| [delta(c)]^2 = 0, ratio-weighted deltas vanish off their support, and
/// sgn(c) delta(c) drops as odd. Same-channel spike x smooth crosses survive
/// as plain delta terms; everything dropped is listed in `annihilated`.
struct DistributionProduct {
    cplx smooth{0.0, 0.0};
    std::vector<DistributionValue::Spike> retained_spikes;
    std::vector<std::string> annihilated;
};

DistributionProduct multiply_conj(const DistributionValue& a, const DistributionValue& b);

/// Partial sum sum_{n=0}^{N} xi_n(p) xi_n(q) xi_n(k), one recurrence sweep.
cplx delta_sharp_partial(double p, double q, double k, int N);

/// Factorized three-dimensional partial sum (product over axes).
cplx delta3_sharp_partial(const std::array<double, 3>& p, const std::array<double, 3>& q,
                          const std::array<double, 3>& k, const std::array<int, 3>& N);

/// Asymptotically closed form of the vertex distribution: four sqrt|c| delta(c)
/// spikes plus four [1 +/- i sgn(c)] / sqrt|c| smooth terms, scaled by 1/(2 pi).
DistributionValue d_sharp(double p, double q, double k);

/// Four-channel tail form sigma_N: (2 sqrt(pi))^{-3} N^{-1/4} sum_c |c|^{-1}
/// [ N^{-1/2} delta(c) + i sgn(c) ].
DistributionValue sigma_n(double p, double q, double k, int N);

/// Smooth part of the three-axis tail product, one sigma_N factor per axis
/// with its own truncation; vanishes in the triple limit N -> infinity.
cplx sigma_3n_smooth(const std::array<double, 3>& p, const std::array<double, 3>& q,
                     const std::array<double, 3>& k, const std::array<int, 3>& N);

/// integral conj(xi_m(k)) delta_sharp_partial(p, q, k, N) dk by Gauss-Hermite
/// quadrature; equals xi_m(p) xi_m(q) whenever N >= m.
QuadratureResult pair_with_test_function(int m, double p, double q, int N,
                                         const QuadratureConfig& cfg = {});

/// Both sides of the distinctness comparison: the pairing value against
/// xi_m(p+q), the value 2 pi delta(p+q+k) would produce.
struct DistinctnessReport {
    cplx paired{0.0, 0.0};
    cplx dirac_value{0.0, 0.0};
    double gap = 0.0;
    QuadratureResult quadrature;
};

DistinctnessReport dirac_distinctness(int m, double p, double q, int N,
                                           const QuadratureConfig& cfg = {});

/// Exact tails sum_{n=N+1}^{M} of the xi and zeta triple products, reported
/// against sigma_N's smooth part. An asymptotic-envelope claim, not a
/// convergence claim; the note says so.
struct TailComparison {
    cplx xi_tail{0.0, 0.0};
    cplx zeta_tail{0.0, 0.0};
    cplx sigma_smooth{0.0, 0.0};
    double xi_envelope_ratio = 0.0;
    double zeta_envelope_ratio = 0.0;
    std::string note;
};

TailComparison tail_partial_vs_sigma(double p, double q, double k, int N, int M);

} // namespace dps
