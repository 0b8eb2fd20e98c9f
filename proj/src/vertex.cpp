#include "dps/vertex.hpp"

#include "dps/basis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dps {

namespace {

constexpr double kSpikeGuard = 1e-9;
constexpr double kTwoPiInv = 0.15915494309189535; // 1/(2 pi)

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

void flag_singular(DistributionValue& v)
{
    for (int j = 0; j < 4; ++j) {
        if (std::abs(v.channels[j]) < kSpikeGuard) {
            v.singular = true;
            v.singular_channels.push_back(j);
        }
    }
    if (v.singular) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        v.smooth = cplx{nan, nan};
    }
}

} // namespace

std::array<double, 4> vertex_channels(double p, double q, double k)
{
    return {p + q + k, q + k - p, q - k + p, q - k - p};
}

cplx delta_sharp_partial(double p, double q, double k, int N)
{
    if (N < 0) throw std::invalid_argument("delta_sharp_partial: N must be >= 0");
    const auto rp = eval_xi_row(N, p);
    const auto rq = eval_xi_row(N, q);
    const auto rk = eval_xi_row(N, k);
    cplx sum{0.0, 0.0};
    for (int n = 0; n <= N; ++n)
        sum += rp[static_cast<size_t>(n)] * rq[static_cast<size_t>(n)] * rk[static_cast<size_t>(n)];
    return sum;
}

cplx delta3_sharp_partial(const std::array<double, 3>& p, const std::array<double, 3>& q,
                          const std::array<double, 3>& k, const std::array<int, 3>& N)
{
    cplx prod{1.0, 0.0};
    for (int axis = 0; axis < 3; ++axis)
        prod *= delta_sharp_partial(p[axis], q[axis], k[axis], N[axis]);
    return prod;
}

DistributionValue d_sharp(double p, double q, double k)
{
    DistributionValue v;
    v.channels = vertex_channels(p, q, k);
    v.smooth_power = -0.5;
    for (int j = 0; j < 4; ++j) {
        const double c = v.channels[j];
        v.spikes.push_back({j, c, cplx{kTwoPiInv, 0.0}, 0.5});
        v.smooth_even[j] = cplx{kTwoPiInv * 0.25, 0.0};
        v.smooth_odd[j] = cplx{0.0, kTwoPiInv * 0.25 * kChannelSigns[j]};
        v.smooth_parts[j] = (v.smooth_even[j] + v.smooth_odd[j] * sgn(c)) / std::sqrt(std::abs(c));
        v.smooth += v.smooth_parts[j];
    }
    flag_singular(v);
    return v;
}

DistributionValue sigma_n(double p, double q, double k, int N)
{
    if (N < 1) throw std::invalid_argument("sigma_n: N must be >= 1");
    DistributionValue v;
    v.channels = vertex_channels(p, q, k);
    v.smooth_power = -1.0;
    const double pre = std::pow(2.0 * std::sqrt(M_PI), -3.0) * std::pow(static_cast<double>(N), -0.25);
    const double spike_scale = std::pow(static_cast<double>(N), -0.5);
    for (int j = 0; j < 4; ++j) {
        const double c = v.channels[j];
        v.spikes.push_back({j, c, cplx{pre * spike_scale, 0.0}, -1.0});
        v.smooth_even[j] = cplx{0.0, 0.0};
        v.smooth_odd[j] = cplx{0.0, pre * kChannelSigns[j]};
        v.smooth_parts[j] = v.smooth_odd[j] * sgn(c) / std::abs(c);
        v.smooth += v.smooth_parts[j];
    }
    flag_singular(v);
    return v;
}

cplx sigma_3n_smooth(const std::array<double, 3>& p, const std::array<double, 3>& q,
                     const std::array<double, 3>& k, const std::array<int, 3>& N)
{
    cplx prod{1.0, 0.0};
    for (int axis = 0; axis < 3; ++axis) {
        const DistributionValue v = sigma_n(p[static_cast<size_t>(axis)],
                                            q[static_cast<size_t>(axis)],
                                            k[static_cast<size_t>(axis)],
                                            N[static_cast<size_t>(axis)]);
        if (v.singular)
            throw std::invalid_argument("sigma_3n_smooth: axis point lies on a spike manifold");
        prod *= v.smooth;
    }
    return prod;
}

DistributionProduct multiply_conj(const DistributionValue& a, const DistributionValue& b)
{
    DistributionProduct out;

    if (!a.singular && !b.singular) out.smooth = a.smooth * std::conj(b.smooth);

    // spike x spike: both groups vanish under the device
    for (const auto& sa : a.spikes) {
        for (const auto& sb : b.spikes) {
            if (sa.channel == sb.channel)
                out.annihilated.push_back("|c| [delta(c)]^2 -> 0");
            else
                out.annihilated.push_back("delta(c_i) delta(c_j) -> 0 (disjoint support)");
        }
    }

    // spike x smooth: the even component of the same channel survives when
    // the |c| modulations cancel; sgn(c) delta(c) drops as odd; cross-channel
    // ratio terms vanish off the support.
    auto cross = [&out](const DistributionValue::Spike& s, const DistributionValue& other,
                        bool conj_other) {
        for (int j = 0; j < 4; ++j) {
            if (j != s.channel) {
                out.annihilated.push_back("delta(c_i) x smooth(c_j) ratio term -> 0 off support");
                continue;
            }
            cplx even = other.smooth_even[j];
            if (conj_other) even = std::conj(even);
            if (even != cplx{0.0, 0.0}) {
                const double net = s.abs_power + other.smooth_power;
                out.retained_spikes.push_back({s.channel, s.channel_value,
                                               s.coefficient * even, net});
            }
            if (other.smooth_odd[j] != cplx{0.0, 0.0})
                out.annihilated.push_back("sgn(c) delta(c) cross term dropped (odd)");
        }
    };
    for (const auto& sa : a.spikes) cross(sa, b, true);
    for (const auto& sb : b.spikes) cross(sb, a, false);

    return out;
}

QuadratureResult pair_with_test_function(int m, double p, double q, int N,
                                         const QuadratureConfig& cfg)
{
    if (m < 0 || N < 0) throw std::invalid_argument("pair_with_test_function: m, N >= 0");
    // m > N is allowed: the basis term is absent from the partial sum and the
    // pairing integrates to zero by orthonormality.

    // conj(xi_m(k)) xi_n(k) = i^{n-m} Htilde_m Htilde_n e^{-k^2}: the Gaussian
    // is exactly the Gauss-Hermite weight, the rest is polynomial.
    const auto rp = eval_xi_row(N, p);
    const auto rq = eval_xi_row(N, q);

    auto inner = [&](int nodes) {
        const auto& rule = gauss_hermite(nodes);
        cplx sum{0.0, 0.0};
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const auto row = detail::hermite_normalized_row(std::max(m, N), rule.nodes[i]);
            cplx partial{0.0, 0.0};
            cplx phase{1.0, 0.0};
            const cplx rot{0.0, 1.0};
            for (int n = 0; n <= N; ++n) {
                partial += rp[static_cast<size_t>(n)] * rq[static_cast<size_t>(n)] * phase * row[n];
                phase *= rot;
            }
            // conj(i^m)
            cplx conj_m{1.0, 0.0};
            for (int t = 0; t < (m % 4); ++t) conj_m *= cplx{0.0, -1.0};
            sum += rule.weights[i] * conj_m * row[m] * partial;
        }
        return sum;
    };

    int nodes = std::min(std::max(m + N + 32, 32), cfg.max_nodes);
    if (nodes % 2 != 0) ++nodes;
    const cplx coarse = inner(nodes);
    const cplx fine = inner(nodes + 16);

    QuadratureResult res;
    res.method = "gauss-hermite";
    res.value = fine;
    res.error_estimate = std::abs(fine - coarse);
    res.converged = res.error_estimate <= std::max(cfg.tolerance, 1e-13);
    return res;
}

DistinctnessReport dirac_distinctness(int m, double p, double q, int N,
                                           const QuadratureConfig& cfg)
{
    DistinctnessReport rep;
    rep.quadrature = pair_with_test_function(m, p, q, N, cfg);
    rep.paired = rep.quadrature.value;
    rep.dirac_value = eval_xi(m, p + q);
    rep.gap = std::abs(rep.paired - rep.dirac_value);
    return rep;
}

TailComparison tail_partial_vs_sigma(double p, double q, double k, int N, int M)
{
    if (N < 1 || M < N) throw std::invalid_argument("tail_partial_vs_sigma: need M >= N >= 1");

    TailComparison cmp;
    cmp.note = "asymptotic envelope comparison (not a convergence claim)";

    const DistributionValue sig = sigma_n(p, q, k, N);
    if (sig.singular)
        throw std::invalid_argument("tail_partial_vs_sigma: point lies on a spike manifold");
    cmp.sigma_smooth = sig.smooth;

    if (M == N) return cmp; // empty tail

    const auto rp = eval_xi_row(M, p);
    const auto rq = eval_xi_row(M, q);
    const auto rk = eval_xi_row(M, k);
    for (int n = N + 1; n <= M; ++n) {
        cmp.xi_tail += rp[static_cast<size_t>(n)] * rq[static_cast<size_t>(n)] * rk[static_cast<size_t>(n)];
        cmp.zeta_tail += eval_zeta(n, p) * eval_zeta(n, q) * eval_zeta(n, k);
    }
    const double denom = std::abs(cmp.sigma_smooth);
    if (denom > 0.0) {
        cmp.xi_envelope_ratio = std::abs(cmp.xi_tail) / denom;
        cmp.zeta_envelope_ratio = std::abs(cmp.zeta_tail) / denom;
    }
    return cmp;
}

} // namespace dps
