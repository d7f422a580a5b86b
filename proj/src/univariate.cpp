#include "nubs/univariate.hpp"

#include <cmath>
#include <stdexcept>

#include "nubs/gauss_hermite.hpp"
#include "nubs/normal.hpp"
#include "nubs/rng.hpp"
#include "src/detail/nubs_math.hpp"

namespace nubs {

NuBsParams::NuBsParams(double alpha_, double beta_, double nu_)
    : alpha(alpha_), beta(beta_), nu(nu_) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("NuBsParams: alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("NuBsParams: beta must be positive");
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("NuBsParams: nu must be positive");
}

namespace detail {

double require_positive_t(double t, const char* who) {
    if (!(t > 0.0))
        throw std::domain_error(std::string(who) + ": t must be positive");
    return t;
}

}  // namespace detail

XiTransform xi(double t, const NuBsParams& params) {
    detail::require_positive_t(t, "xi");
    const double x = params.nu * std::log(t / params.beta);
    return XiTransform{2.0 * std::sinh(x)};
}

double cdf(double t, const NuBsParams& params) {
    return std_normal_cdf(xi(t, params).value / params.alpha);
}

double survival(double t, const NuBsParams& params) {
    return std_normal_cdf(-xi(t, params).value / params.alpha);
}

double log_pdf(double t, const NuBsParams& params) {
    detail::require_positive_t(t, "log_pdf");
    constexpr double kHalfLog2Pi = 0.91893853320467274178;
    const double x = params.nu * std::log(t / params.beta);
    const double sinh_x = std::sinh(x);
    // f(t) = (2 nu cosh(x) / (alpha t)) * phi(2 sinh(x)/alpha)
    return std::log(params.nu) - std::log(params.alpha) - std::log(t) +
           detail::log_2cosh(x) - 2.0 * sinh_x * sinh_x / (params.alpha * params.alpha) -
           kHalfLog2Pi;
}

double pdf(double t, const NuBsParams& params) { return std::exp(log_pdf(t, params)); }

double quantile(double p, const NuBsParams& params) {
    const double z = std_normal_quantile(p);  // rejects p outside (0,1)
    const double w = detail::latent_w(params.alpha, z);
    return params.beta * std::exp(std::log(w) / params.nu);
}

std::vector<double> sample(const NuBsParams& params, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample: n must be positive");
    NormalRng rng(seed);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& t : out) {
        const double w = detail::latent_w(params.alpha, rng.normal());
        t = params.beta * std::exp(std::log(w) / params.nu);
    }
    return out;
}

double raw_moment(int k, const NuBsParams& params, int n_nodes) {
    if (k < 1) throw std::invalid_argument("raw_moment: k must be >= 1");
    if (n_nodes < 32) throw std::invalid_argument("raw_moment: n_nodes must be >= 32");

    const double log_beta = std::log(params.beta);
    const auto evaluate = [&](int nn) {
        const GaussHermiteRule rule = gauss_hermite(nn);
        constexpr double kSqrt2 = 1.4142135623730950488;
        constexpr double kInvSqrtPi = 0.56418958354775628695;
        double acc = 0.0;
        for (int i = 0; i < nn; ++i) {
            const double z = kSqrt2 * rule.nodes[i];
            const double w = detail::latent_w(params.alpha, z);
            acc += rule.weights[i] * std::exp(k * (log_beta + std::log(w) / params.nu));
        }
        return kInvSqrtPi * acc;
    };

    const double coarse = evaluate(n_nodes);
    const double fine = evaluate(2 * n_nodes);
    if (std::fabs(fine - coarse) > 1e-6 * std::max(std::fabs(fine), 1e-300))
        throw std::runtime_error("raw_moment: quadrature not converged; increase n_nodes");
    return fine;
}

NuBsParams reciprocal_params(const NuBsParams& params) {
    return NuBsParams(params.alpha, 1.0 / params.beta, params.nu);
}

double hazard(double t, const NuBsParams& params) {
    const double z = xi(t, params).value / params.alpha;
    const double surv = std_normal_cdf(-z);
    if (surv <= 0.0)
        throw std::overflow_error("hazard: survival function underflowed");
    return std::exp(log_pdf(t, params) - std::log(surv));
}

}  // namespace nubs
