#ifndef NUBS_NORMAL_HPP
#define NUBS_NORMAL_HPP

// Standard-normal kernels: univariate pdf/cdf/quantile and the bivariate
// cdf with correlation. Everything else in the library composes with these.

namespace nubs {

/// Density of N(0,1) at z.
double std_normal_pdf(double z);

/// Distribution function of N(0,1). Absolute error below 1e-15
/// (delegates to erfc). Accepts +-infinity and returns the limit value.
double std_normal_cdf(double z);

/// Inverse of std_normal_cdf on (0,1). Acklam's rational approximation
/// refined by one Halley step; |Phi(result) - p| stays below 1e-14 away
/// from the extreme tails. Throws std::domain_error unless 0 < p < 1.
double std_normal_quantile(double p);

/// P(Z1 <= u, Z2 <= v) for standard bivariate normal with correlation rho.
/// Gauss-Legendre reduction over the correlation parameter (Drezner & Genz
/// 1990, as revised in Genz 2004); absolute error below 1e-14.
/// u and v may be +-infinity. Throws std::domain_error when |rho| >= 1.
double biv_normal_cdf(double u, double v, double rho);

}  // namespace nubs

#endif
