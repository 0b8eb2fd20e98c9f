#include "dps/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dps {

namespace {

// LSQ fit y = a*t + b; returns (a, b, rms residual).
struct LinFit { double a, b, rms; };

LinFit linear_fit(const std::vector<double>& ts, const std::vector<double>& ys)
{
    const size_t n = ts.size();
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < n; ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double denom = n * stt - st * st;
    LinFit f{0.0, sy / n, 0.0};
    if (denom != 0.0) {
        f.a = (n * sty - st * sy) / denom;
        f.b = (sy - f.a * st) / n;
    }
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (f.a * ts[i] + f.b);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

} // namespace

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_power_law: size mismatch");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && std::abs(ys[i]) > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(std::abs(ys[i])));
        }
    }
    PowerLawFit fit;
    if (lx.size() < 2) return fit;
    const LinFit f = linear_fit(lx, ly);
    fit.exponent = f.a;
    fit.log_prefactor = f.b;
    fit.residual = f.rms;
    fit.valid = true;
    return fit;
}

GrowthFit fit_growth_law(const std::vector<double>& xs, const std::vector<double>& ys)
{
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_growth_law: size mismatch");
    GrowthFit fit;
    if (xs.size() < 3) return fit;

    double yscale = 0.0;
    for (double y : ys) yscale = std::max(yscale, std::abs(y));
    if (yscale == 0.0) return fit;

    auto eval = [&](double d) {
        std::vector<double> ts(xs.size()), scaled(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) {
            ts[i] = std::log(xs[i]);
            scaled[i] = ys[i] / std::pow(xs[i], d);
        }
        const LinFit f = linear_fit(ts, scaled);
        double ss = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            const double model = std::pow(xs[i], d) * (f.a * ts[i] + f.b);
            const double r = (ys[i] - model) / yscale;
            ss += r * r;
        }
        return std::pair<double, LinFit>{std::sqrt(ss / xs.size()), f};
    };

    // coarse scan then golden-section refinement on the degree
    double best_d = 0.0;
    double best_r = std::numeric_limits<double>::max();
    for (double d = -1.0; d <= 4.0001; d += 0.25) {
        const double r = eval(d).first;
        if (r < best_r) { best_r = r; best_d = d; }
    }
    double lo = best_d - 0.25, hi = best_d + 0.25;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = eval(x1).first, f2 = eval(x2).first;
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = eval(x1).first;
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = eval(x2).first;
        }
        if (hi - lo < 1e-10) break;
    }
    const double d = 0.5 * (lo + hi);
    const auto [r, lf] = eval(d);
    fit.degree = d;
    fit.log_coefficient = lf.a;
    fit.constant = lf.b;
    fit.residual = r;
    fit.valid = true;
    return fit;
}

} // namespace dps
