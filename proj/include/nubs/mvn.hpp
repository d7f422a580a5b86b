#ifndef NUBS_MVN_HPP
#define NUBS_MVN_HPP

#include <cstdint>
#include <span>

#include "nubs/correlation.hpp"

namespace nubs {

/// Monte Carlo estimate with its standard error.
struct McEstimate {
    double estimate;
    double std_error;
};

/// Density of the standard normal vector with correlation matrix gamma:
/// (2*pi)^{-p/2} |Gamma|^{-1/2} exp(-u^T Gamma^{-1} u / 2), evaluated
/// through the triangular factor.
double mvn_pdf(std::span<const double> u, const CorrelationMatrix& gamma);

/// Monte Carlo estimate of Phi_m(u; Gamma) from n_draws factor-transformed
/// standard-normal vectors, with the binomial standard error. Deterministic
/// given the seed. Requires n_draws >= 1000; coordinates of u may be
/// +-infinity.
McEstimate mvn_cdf_mc(std::span<const double> u, const CorrelationMatrix& gamma,
                      std::int64_t n_draws, std::uint64_t seed);

}  // namespace nubs

#endif
