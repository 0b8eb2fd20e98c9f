#include "dps/special.hpp"

#include <cmath>
#include <stdexcept>

namespace dps {

double kummer_m(double a, double b, double x)
{
    if (b <= 0.0 && b == std::floor(b))
        throw std::invalid_argument("kummer_m: b is a nonpositive integer");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 500; ++k) {
        term *= (a + k) / (b + k) * x / (k + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

std::complex<double> parabolic_cylinder_d_imag(double nu, double y)
{
    // D_nu(z) = 2^{nu/2} e^{-z^2/4} [ sqrt(pi)/Gamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
    //          - sqrt(2 pi) z / Gamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ]
    // with z = i y: z^2/2 = -y^2/2 and e^{-z^2/4} = e^{y^2/4}.
    const double x = -0.5 * y * y;
    const double sqrt_pi = std::sqrt(M_PI);
    const double g1 = std::tgamma(0.5 * (1.0 - nu));
    const double even = sqrt_pi / g1 * kummer_m(-0.5 * nu, 0.5, x);

    double odd = 0.0;
    const double half_neg_nu = -0.5 * nu;
    // 1/Gamma(-nu/2) vanishes at the poles nu = 0, -2, -4, ...
    if (!(half_neg_nu <= 0.0 && half_neg_nu == std::floor(half_neg_nu))) {
        odd = std::sqrt(2.0 * M_PI) / std::tgamma(half_neg_nu) * kummer_m(0.5 * (1.0 - nu), 1.5, x);
    }

    const double scale = std::pow(2.0, 0.5 * nu) * std::exp(0.25 * y * y);
    return scale * (std::complex<double>{even, 0.0} - std::complex<double>{0.0, y} * odd);
}

} // namespace dps
