#pragma once

#include <string>
#include <vector>

namespace dps {

/// Exact half-integer arithmetic carried as twice the value, so kappa stays
/// exact even for odd external-fermion counts.
struct HalfInt {
    long long twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(long long twice_value) : twice(twice_value) {}
    static constexpr HalfInt whole(long long v) { return HalfInt{2 * v}; }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr double to_double() const { return 0.5 * static_cast<double>(twice); }

    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
};

std::string to_string(HalfInt h);

/// Line/vertex bookkeeping of a trilinear-interaction graph. The loop count
/// is caller-supplied: only line counts are specified, not graph structure.
struct DiagramSpec {
    int external_fermions = 0; // E_F, must be even for feasibility
    int external_bosons = 0;   // E_B
    int vertices = 1;          // j
    int loops = 0;             // l
    int sigma_sign = +1;       // permutation sign of the final fermions
    long long charge_num = -1; // q as a rational: -1 (electron), +/-1/3 (quarks)
    long long charge_den = 1;
};

struct InternalLines {
    int fermion = 0; // I_F
    int boson = 0;   // I_B
};

/// I_F = j - E_F/2 and I_B = (j - E_B)/2; rejects infeasible topologies with
/// the violated identity named in the exception message.
InternalLines derive_internal_lines(const DiagramSpec& spec);

/// Degree of ultraviolet divergence from the momentum-power count,
/// kappa = 3(I_B+I_F) + (I_B+I_F-j+1) - I_F - 2I_B - 3j; both this raw form
/// and the closed form 1 - E_B - (3/2) E_F are computed and checked equal.
HalfInt kappa(const DiagramSpec& spec);

/// Companion degree from the delta-function products alone,
/// kappa_hat = 4(I_B+I_F-j+1) - I_F - 2I_B - 3j = 4 - 3j - E_B - (3/2) E_F.
HalfInt kappa_hat(const DiagramSpec& spec);

enum class Verdict { converges, diverges, vanishes_by_furry };

std::string to_string(Verdict v);

/// converges iff (3/2) E_F + E_B > 1; a single external boson with no
/// external fermions vanishes by Furry's theorem.
Verdict converges(const DiagramSpec& spec);

/// Multiplicative factor kappa_j = (-1)^l sgn(sigma) (-q |e|)^j; |e| defaults
/// to sqrt(4 pi / 137).
struct Prefactor {
    double value = 1.0;
    int sign = +1;
    double magnitude = 1.0;
};

double default_coupling_magnitude();
Prefactor prefactor(const DiagramSpec& spec, double e_magnitude = default_coupling_magnitude());

/// All feasible (E_F, E_B, j) with j <= max_vertices.
struct FeasibleTopology {
    int external_fermions;
    int external_bosons;
    int vertices;
    InternalLines internal;
};

std::vector<FeasibleTopology> enumerate_feasible(int max_vertices);

} // namespace dps
