#ifndef NUBS_CLASSIC_BS_HPP
#define NUBS_CLASSIC_BS_HPP

#include <cmath>
#include <stdexcept>

#include "nubs/normal.hpp"

// Reference implementation of the classic two-parameter Birnbaum-Saunders
// distribution, coded directly from the square-root form. Kept independent
// of the nu-parameterized code so the nu = 1/2 reduction can be
// cross-checked against it.

namespace nubs::classic {

inline double cdf(double t, double alpha, double beta) {
    if (!(t > 0.0)) throw std::domain_error("classic::cdf: t must be positive");
    const double s = std::sqrt(t / beta);
    const double r = std::sqrt(beta / t);
    return std_normal_cdf((s - r) / alpha);
}

inline double pdf(double t, double alpha, double beta) {
    if (!(t > 0.0)) throw std::domain_error("classic::pdf: t must be positive");
    const double rb = std::sqrt(beta / t);
    const double bracket = rb + rb * rb * rb;  // (beta/t)^{1/2} + (beta/t)^{3/2}
    const double q = t / beta + beta / t - 2.0;
    constexpr double kSqrt2Pi = 2.5066282746310005024;
    return bracket / (2.0 * kSqrt2Pi * alpha * beta) *
           std::exp(-q / (2.0 * alpha * alpha));
}

}  // namespace nubs::classic

#endif
