#include "nubs/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nubs/estimation.hpp"
#include "nubs/rng.hpp"

namespace nubs {

double ks_statistic(std::span<const double> data,
                    const std::function<double(double)>& cdf_eval) {
    if (data.empty()) throw std::invalid_argument("ks_statistic: empty data");
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf_eval(sorted[i]);
        d = std::max(d, (i + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double kolmogorov_pvalue(double scaled_statistic) {
    if (scaled_statistic < 0.0)
        throw std::invalid_argument("kolmogorov_pvalue: statistic must be nonnegative");
    const double lam = scaled_statistic;
    if (lam == 0.0) return 1.0;

    if (lam < 1.0) {
        // Jacobi-theta dual form of the cdf; converges fast for small lambda.
        constexpr double kPiSq8 = 1.2337005501361698274;  // pi^2 / 8
        constexpr double kSqrt2Pi = 2.5066282746310005024;
        const double x = kPiSq8 / (lam * lam);
        double s = 0.0;
        for (int k = 1; k < 64; ++k) {
            const double term = std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * x);
            s += term;
            if (term < 1e-18 * (s + 1e-300)) break;
        }
        const double cdf = kSqrt2Pi / lam * s;
        return std::min(1.0, std::max(0.0, 1.0 - cdf));
    }

    double s = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 64; ++k) {
        const double term = std::exp(-2.0 * k * k * lam * lam);
        s += sign * term;
        sign = -sign;
        if (term < 1e-14) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * s));
}

GofReport gof_test(std::span<const double> data, const NuBsParams& params, int n_boot,
                   std::uint64_t seed) {
    if (data.empty()) throw std::invalid_argument("gof_test: empty data");
    if (n_boot < 0) throw std::invalid_argument("gof_test: n_boot must be nonnegative");

    GofReport rep;
    rep.n_obs = static_cast<int>(data.size());
    rep.n_boot = n_boot;
    rep.d_statistic = ks_statistic(data, [&](double t) { return cdf(t, params); });
    rep.scaled_statistic = std::sqrt(static_cast<double>(rep.n_obs)) * rep.d_statistic;
    rep.p_asymptotic = kolmogorov_pvalue(rep.scaled_statistic);

    if (n_boot > 0) {
        // Per-replicate seeds are drawn up front so the result does not
        // depend on replicate completion order.
        NormalRng seeder(seed);
        std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n_boot));
        for (auto& s : seeds) s = seeder.next_u64();

        // Replicates are refit starting from the tested parameters; the
        // simulated truth is the natural basin for the refit.
        OptimizerConfig boot_cfg;
        boot_cfg.init_strategy = InitStrategy::UserSupplied;
        boot_cfg.user_init = params;
        boot_cfg.restarts = 1;
        boot_cfg.max_iterations = 800;

        int exceed = 0;
        int ok = 0;
        for (int b = 0; b < n_boot; ++b) {
            const std::vector<double> sim = sample(params, rep.n_obs, seeds[b]);
            FitResult refit;
            try {
                refit = fit_univariate(sim, boot_cfg);
            } catch (const std::exception&) {
                ++rep.n_boot_skipped;
                continue;
            }
            if (!refit.converged) {
                ++rep.n_boot_skipped;
                continue;
            }
            const NuBsParams star = refit.uni();
            const double d_star =
                ks_statistic(sim, [&](double t) { return cdf(t, star); });
            if (d_star >= rep.d_statistic) ++exceed;
            ++ok;
        }
        if (ok > 0) rep.p_bootstrap = static_cast<double>(exceed) / ok;
    }
    return rep;
}

}  // namespace nubs
