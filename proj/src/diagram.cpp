#include "dps/diagram.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dps {

std::string to_string(HalfInt h)
{
    if (h.is_integer()) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

std::string to_string(Verdict v)
{
    switch (v) {
        case Verdict::converges: return "converges";
        case Verdict::diverges: return "diverges";
        default: return "vanishes_by_furry";
    }
}

InternalLines derive_internal_lines(const DiagramSpec& spec)
{
    if (spec.external_fermions < 0 || spec.external_bosons < 0 || spec.vertices < 1)
        throw std::invalid_argument("diagram: E_F, E_B >= 0 and j >= 1 required");
    if (spec.external_fermions % 2 != 0)
        throw std::invalid_argument("diagram: E_F must be even (fermion lines pair in/out)");

    const int twice_if = 2 * spec.vertices - spec.external_fermions;
    if (twice_if < 0)
        throw std::invalid_argument("diagram: infeasible, I_F = j - E_F/2 >= 0 violated");
    const int ib_num = spec.vertices - spec.external_bosons;
    if (ib_num < 0)
        throw std::invalid_argument("diagram: infeasible, I_B = (j - E_B)/2 >= 0 violated");
    if (ib_num % 2 != 0)
        throw std::invalid_argument("diagram: infeasible, (j - E_B)/2 not an integer");

    InternalLines lines{twice_if / 2, ib_num / 2};
    // cross-check j = I_F + E_F/2 = 2 I_B + E_B
    assert(spec.vertices == lines.fermion + spec.external_fermions / 2);
    assert(spec.vertices == 2 * lines.boson + spec.external_bosons);
    return lines;
}

namespace {

// raw counting form, kept separate so kappa() can assert the two routes agree
HalfInt kappa_raw(const DiagramSpec& spec)
{
    const InternalLines l = derive_internal_lines(spec);
    const long long lines = l.boson + l.fermion;
    const long long v = 3 * lines + (lines - spec.vertices + 1) - l.fermion - 2 * l.boson
                      - 3 * spec.vertices;
    return HalfInt::whole(v);
}

} // namespace

HalfInt kappa(const DiagramSpec& spec)
{
    // closed form 1 - E_B - (3/2) E_F, exact in half-integers
    const HalfInt closed{2 * (1 - spec.external_bosons) - 3 * spec.external_fermions};
    if (spec.external_fermions % 2 == 0 && !(kappa_raw(spec) == closed))
        throw std::logic_error("kappa: raw counting disagrees with closed form");
    return closed;
}

HalfInt kappa_hat(const DiagramSpec& spec)
{
    if (spec.external_fermions % 2 == 0) derive_internal_lines(spec); // feasibility gate
    const HalfInt value{2 * (4 - 3 * spec.vertices - spec.external_bosons)
                        - 3 * spec.external_fermions};
    const HalfInt gap = kappa(spec) - value;
    if (!(gap == HalfInt::whole(3 * (spec.vertices - 1))))
        throw std::logic_error("kappa_hat: gap law kappa - kappa_hat = 3(j-1) violated");
    return value;
}

Verdict converges(const DiagramSpec& spec)
{
    if (spec.external_fermions == 0 && spec.external_bosons == 1)
        return Verdict::vanishes_by_furry;
    // (3/2) E_F + E_B > 1, i.e. 3 E_F + 2 E_B > 2
    if (3 * spec.external_fermions + 2 * spec.external_bosons > 2) return Verdict::converges;
    return Verdict::diverges;
}

double default_coupling_magnitude()
{
    return std::sqrt(4.0 * M_PI / 137.0);
}

Prefactor prefactor(const DiagramSpec& spec, double e_magnitude)
{
    Prefactor out;
    const double base = -static_cast<double>(spec.charge_num) / static_cast<double>(spec.charge_den)
                      * e_magnitude;
    double value = (spec.loops % 2 == 0 ? 1.0 : -1.0) * (spec.sigma_sign >= 0 ? 1.0 : -1.0);
    for (int i = 0; i < spec.vertices; ++i) value *= base;
    out.value = value;
    out.sign = (value >= 0.0) ? +1 : -1;
    out.magnitude = std::abs(value);
    return out;
}

std::vector<FeasibleTopology> enumerate_feasible(int max_vertices)
{
    std::vector<FeasibleTopology> out;
    for (int j = 1; j <= max_vertices; ++j) {
        for (int ef = 0; ef <= 2 * j; ef += 2) {
            for (int eb = 0; eb <= j; ++eb) {
                DiagramSpec spec;
                spec.external_fermions = ef;
                spec.external_bosons = eb;
                spec.vertices = j;
                try {
                    const InternalLines lines = derive_internal_lines(spec);
                    out.push_back({ef, eb, j, lines});
                } catch (const std::invalid_argument&) {
                    // infeasible combination, skip
                }
            }
        }
    }
    return out;
}

} // namespace dps
