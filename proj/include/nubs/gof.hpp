#ifndef NUBS_GOF_HPP
#define NUBS_GOF_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nubs/univariate.hpp"

namespace nubs {

/// One-sample Kolmogorov-Smirnov report. The raw statistic D_n and the
/// scaled statistic sqrt(n) * D_n are both exposed; the asymptotic p-value
/// refers to the scaled statistic. p_bootstrap, when present, comes from a
/// parametric bootstrap that refits each replicate (Lilliefors-style),
/// correcting for the parameters having been estimated from the data.
struct GofReport {
    double d_statistic = 0.0;
    double scaled_statistic = 0.0;
    double p_asymptotic = 0.0;
    std::optional<double> p_bootstrap;
    int n_obs = 0;
    int n_boot = 0;
    int n_boot_skipped = 0;  // replicates dropped because the refit failed
};

/// D_n = max_i max( i/n - F(t_(i)), F(t_(i)) - (i-1)/n ).
/// cdf_eval must be nondecreasing with values in [0,1].
/// Throws std::invalid_argument on empty data.
double ks_statistic(std::span<const double> data,
                    const std::function<double(double)>& cdf_eval);

/// Asymptotic survival function of the scaled KS statistic,
/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), evaluated to
/// absolute error below 1e-10 (a theta-function form is used for small
/// lambda). Q(0) = 1 by the limit.
double kolmogorov_pvalue(double scaled_statistic);

/// KS test of `data` against the fitted model `params`. n_boot > 0 adds a
/// parametric bootstrap p-value with per-replicate derived seeds;
/// n_boot = 0 disables it. Deterministic given seed.
GofReport gof_test(std::span<const double> data, const NuBsParams& params, int n_boot,
                   std::uint64_t seed);

}  // namespace nubs

#endif
