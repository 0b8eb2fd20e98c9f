#pragma once

#include <complex>

namespace dps {

/// Kummer confluent hypergeometric M(a, b, x) by its power series.
/// Adequate for the small |x| this library needs (|x| <~ 10).
double kummer_m(double a, double b, double x);

/// Parabolic cylinder function D_nu(i y) for real y and real order nu,
/// via the confluent-hypergeometric representation. Small-argument regime.
std::complex<double> parabolic_cylinder_d_imag(double nu, double y);

} // namespace dps
