#ifndef NUBS_ESTIMATION_HPP
#define NUBS_ESTIMATION_HPP

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "nubs/multivariate.hpp"
#include "nubs/univariate.hpp"

namespace nubs {

enum class InitStrategy { MomentBased, Grid, UserSupplied };

/// Knobs for the likelihood maximizers. The defaults implement the
/// documented policy: beta starts at the sample median (F(beta) = 1/2
/// exactly), nu multi-starts over a coarse grid, alpha comes from its
/// closed form given (beta, nu).
struct OptimizerConfig {
    int max_iterations = 2000;    // simplex iterations per start
    double rel_tolerance = 1e-10; // relative objective-change stop
    int restarts = 2;             // simplex rebuilds per start point
    InitStrategy init_strategy = InitStrategy::Grid;
    std::optional<NuBsParams> user_init;         // used when UserSupplied (univariate)
    std::optional<BivNuBsParams> user_init_biv;  // used when UserSupplied (bivariate)
    std::optional<double> fixed_nu;              // freeze nu (classic BS at 0.5)
};

/// Outcome of a maximum-likelihood fit. score_residuals holds the
/// log-parameter gradient of the log-likelihood divided by n, one entry
/// per free parameter; convergence requires the maximum residual below
/// 1e-4 (univariate) or 1e-3 (bivariate).
struct FitResult {
    std::variant<NuBsParams, BivNuBsParams> params = NuBsParams(1.0, 1.0, 0.5);
    double log_likelihood = 0.0;
    bool converged = false;
    int n_iterations = 0;
    std::vector<double> score_residuals;
    std::optional<std::vector<double>> std_errors;
    double aic = 0.0;
    double bic = 0.0;
    int n_obs = 0;
    int n_free_params = 0;

    const NuBsParams& uni() const { return std::get<NuBsParams>(params); }
    const BivNuBsParams& biv() const { return std::get<BivNuBsParams>(params); }
};

/// Log-likelihood of iid data under the univariate model (the sum of
/// log_pdf). Returns -infinity if any datum is nonpositive.
double uni_log_likelihood(std::span<const double> data, const NuBsParams& params);

/// The three score components (d/d alpha, d/d beta, d/d nu) of
/// uni_log_likelihood, derived from the log-likelihood itself.
std::array<double, 3> uni_score(std::span<const double> data, const NuBsParams& params);

/// Stationary-point alpha given (beta, nu):
/// alpha^2 = (1/n) sum [(t/b)^{2nu} + (b/t)^{2nu} - 2]. Zeroes the alpha
/// score exactly.
double uni_alpha_closed_form(std::span<const double> data, double beta, double nu);

/// Maximum-likelihood fit of the univariate model. The search runs over
/// (log beta, log nu) with alpha profiled out by its closed form, followed
/// by a damped Newton polish on the score equations. Optimization failures
/// are reported through converged=false, never thrown.
FitResult fit_univariate(std::span<const double> data, const OptimizerConfig& config = {});

/// Log-likelihood of paired data under the bivariate model. Returns
/// -infinity if any entry is nonpositive.
double biv_log_likelihood(const SampleMatrix& data, const BivNuBsParams& params);

/// Seven-parameter bivariate fit. Initialized from per-margin univariate
/// fits plus a latent-scale moment estimate of rho; optimized in
/// unconstrained coordinates (log alpha_j, log beta_j, log nu_j, atanh rho).
FitResult fit_bivariate(const SampleMatrix& data, const OptimizerConfig& config = {});

/// Standard errors from the observed information: square roots of the
/// diagonal of the inverse central-difference Hessian of the negative
/// log-likelihood at the optimum (relative step 1e-4, applied in the
/// unconstrained coordinates and mapped back). Requires fit.converged;
/// throws NotPositiveDefinite when the Hessian fails positive
/// definiteness, signalling a boundary or saddle solution.
std::vector<double> std_errors(const FitResult& fit, std::span<const double> data);
std::vector<double> std_errors(const FitResult& fit, const SampleMatrix& data);

/// Side-by-side fit of the classic model (nu frozen at 1/2) and the free-nu
/// model, with the likelihood-ratio statistic 2 * (l_free - l_classic).
struct ModelComparison {
    FitResult classic;  // nu == 0.5, 2 free parameters
    FitResult free;     // 3 free parameters
    double lr_statistic = 0.0;
};

ModelComparison compare_models(std::span<const double> data,
                               const OptimizerConfig& config = {});

}  // namespace nubs

#endif
