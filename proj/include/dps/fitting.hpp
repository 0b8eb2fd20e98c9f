#pragma once

#include <vector>

namespace dps {

/// Least-squares slope/intercept of log|y| against log x.
struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double residual = 0.0; // rms residual in log space
    bool valid = false;    // needs >= 2 usable points
};

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

/// Growth-law fit I(x) = x^degree (a log x + b), the nested model that
/// discriminates pure-log growth (degree 0, a != 0) from power growth.
/// degree is optimized by golden-section on the relative rms residual.
struct GrowthFit {
    double degree = 0.0;
    double log_coefficient = 0.0; // a
    double constant = 0.0;        // b
    double residual = 0.0;        // relative rms at the optimum
    bool valid = false;
};

GrowthFit fit_growth_law(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace dps
