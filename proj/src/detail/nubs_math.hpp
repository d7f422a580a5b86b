#ifndef NUBS_DETAIL_MATH_HPP
#define NUBS_DETAIL_MATH_HPP

#include <cmath>
#include <string>

namespace nubs::detail {

/// log(2*cosh(x)) without overflow: |x| + log1p(exp(-2|x|)).
inline double log_2cosh(double x) {
    const double ax = std::fabs(x);
    return ax + std::log1p(std::exp(-2.0 * ax));
}

/// Positive root w of w - 1/w = alpha*z, i.e. (t/beta)^nu on the latent
/// scale. The negative-z branch uses the conjugate form to avoid
/// cancellation.
inline double latent_w(double alpha, double z) {
    const double az = alpha * z;
    const double root = std::hypot(az, 2.0);  // sqrt(az^2 + 4)
    return az >= 0.0 ? 0.5 * (az + root) : 2.0 / (root - az);
}

double require_positive_t(double t, const char* who);

}  // namespace nubs::detail

#endif
