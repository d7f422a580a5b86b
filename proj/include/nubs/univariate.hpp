#ifndef NUBS_UNIVARIATE_HPP
#define NUBS_UNIVARIATE_HPP

#include <cstdint>
#include <vector>

namespace nubs {

/// Parameters of the three-parameter nu-BS lifetime distribution
///   F(t) = Phi( [ (t/beta)^nu - (beta/t)^nu ] / alpha ),  t > 0.
/// alpha is shape, beta is scale (F(beta) = 1/2 exactly), nu bends both.
/// All three must be strictly positive; nu = 1/2 recovers the classic
/// two-parameter Birnbaum-Saunders distribution.
struct NuBsParams {
    double alpha;
    double beta;
    double nu;

    NuBsParams(double alpha_, double beta_, double nu_);
};

/// Value of the monotone latent-scale map xi(t) = (t/beta)^nu - (beta/t)^nu.
/// Strictly increasing in t; zero exactly at t = beta.
struct XiTransform {
    double value;
};

/// xi evaluated in log space (2*sinh(nu*log(t/beta))), stable for extreme
/// t/beta ratios. Throws std::domain_error for t <= 0.
XiTransform xi(double t, const NuBsParams& params);

/// F(t) = Phi(xi(t)/alpha).
double cdf(double t, const NuBsParams& params);

/// 1 - F(t) computed as Phi(-xi(t)/alpha); no cancellation in the tail.
double survival(double t, const NuBsParams& params);

/// Density and log-density. log_pdf stays finite for (t/beta)^nu up to
/// about e^300 in either direction.
double pdf(double t, const NuBsParams& params);
double log_pdf(double t, const NuBsParams& params);

/// Closed-form quantile: with z = Phi^{-1}(p) and w the positive root of
/// w - 1/w = alpha*z, returns beta * w^{1/nu}.
/// Throws std::domain_error unless 0 < p < 1.
double quantile(double p, const NuBsParams& params);

/// n iid draws by pushing standard-normal variates through the inverse
/// latent map. Deterministic given seed; every draw is positive.
std::vector<double> sample(const NuBsParams& params, std::int64_t n, std::uint64_t seed);

/// E[T^k] by Gauss-Hermite quadrature over the latent normal. Evaluates at
/// n_nodes and 2*n_nodes and returns the finer result; throws
/// std::runtime_error when the doubling changes the value by more than
/// 1e-6 relative. Requires k >= 1 and n_nodes >= 32.
double raw_moment(int k, const NuBsParams& params, int n_nodes = 64);

/// Parameters of 1/T: (alpha, 1/beta, nu). The third parameter is
/// unchanged -- xi(1/t; alpha, 1/beta, nu) = -xi(t; alpha, beta, nu), so the
/// reciprocal stays in the family with the same nu.
NuBsParams reciprocal_params(const NuBsParams& params);

/// pdf(t) / survival(t), on the complementary-cdf path. Throws
/// std::overflow_error when the survival function underflows to zero.
double hazard(double t, const NuBsParams& params);

}  // namespace nubs

#endif
