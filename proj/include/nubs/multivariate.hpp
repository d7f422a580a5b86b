#ifndef NUBS_MULTIVARIATE_HPP
#define NUBS_MULTIVARIATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "nubs/correlation.hpp"
#include "nubs/mvn.hpp"
#include "nubs/univariate.hpp"

namespace nubs {

/// Dense row-major sample matrix (rows = draws, cols = coordinates).
struct SampleMatrix {
    std::int64_t rows = 0;
    int cols = 0;
    std::vector<double> data;

    double operator()(std::int64_t r, int c) const {
        return data[static_cast<std::size_t>(r) * cols + c];
    }
    double& operator()(std::int64_t r, int c) {
        return data[static_cast<std::size_t>(r) * cols + c];
    }
};

/// Bivariate nu-BS parameters: one triple per margin plus the latent
/// normal correlation rho, |rho| < 1.
struct BivNuBsParams {
    NuBsParams p1;
    NuBsParams p2;
    double rho;

    BivNuBsParams(NuBsParams p1_, NuBsParams p2_, double rho_);
};

/// m-variate nu-BS parameters: per-coordinate alpha and beta, one shared
/// nu, and a positive definite latent correlation matrix.
struct MultiNuBsParams {
    std::vector<double> alphas;
    std::vector<double> betas;
    double nu;
    CorrelationMatrix gamma;

    MultiNuBsParams(std::vector<double> alphas_, std::vector<double> betas_, double nu_,
                    CorrelationMatrix gamma_);

    int dim() const { return gamma.dim(); }
};

/// Joint cdf Phi_2(xi_1/alpha_1, xi_2/alpha_2; rho).
double biv_cdf(double t1, double t2, const BivNuBsParams& params);

/// Joint density and log-density, evaluated in log space.
double biv_pdf(double t1, double t2, const BivNuBsParams& params);
double biv_log_pdf(double t1, double t2, const BivNuBsParams& params);

/// Marginal density of coordinate `which` (1 or 2); the margin is the
/// univariate nu-BS with that coordinate's triple, independent of rho.
double biv_marginal_pdf(int which, double t, const BivNuBsParams& params);

/// n correlated draws via the 2x2 latent factor. Deterministic given seed.
SampleMatrix biv_sample(const BivNuBsParams& params, std::int64_t n, std::uint64_t seed);

enum class ReciprocalMode { Both, First, Second };

/// Parameters of the coordinate-wise reciprocal. Inverting both
/// coordinates keeps rho; inverting exactly one negates the corresponding
/// latent normal and therefore flips the sign of rho.
BivNuBsParams biv_reciprocal_params(ReciprocalMode mode, const BivNuBsParams& params);

/// Joint m-variate density: mvn_pdf of (xi_i/alpha_i) times the product of
/// per-coordinate Jacobians nu/(alpha_i beta_i) [(t/b)^{nu-1}+(b/t)^{nu+1}].
double multi_pdf(std::span<const double> t, const MultiNuBsParams& params);
double multi_log_pdf(std::span<const double> t, const MultiNuBsParams& params);

/// Monte Carlo joint cdf; delegates to mvn_cdf_mc on the latent scale.
McEstimate multi_cdf(std::span<const double> t, const MultiNuBsParams& params,
                     std::int64_t n_draws, std::uint64_t seed);

/// n draws via Cholesky factor of gamma plus the inverse latent map.
SampleMatrix multi_sample(const MultiNuBsParams& params, std::int64_t n, std::uint64_t seed);

}  // namespace nubs

#endif
