#include "nubs/multivariate.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "nubs/normal.hpp"
#include "nubs/rng.hpp"
#include "src/detail/nubs_math.hpp"

namespace nubs {

BivNuBsParams::BivNuBsParams(NuBsParams p1_, NuBsParams p2_, double rho_)
    : p1(p1_), p2(p2_), rho(rho_) {
    if (!(std::fabs(rho) < 1.0))
        throw std::invalid_argument("BivNuBsParams: |rho| must be < 1");
}

MultiNuBsParams::MultiNuBsParams(std::vector<double> alphas_, std::vector<double> betas_,
                                 double nu_, CorrelationMatrix gamma_)
    : alphas(std::move(alphas_)), betas(std::move(betas_)), nu(nu_), gamma(std::move(gamma_)) {
    const auto m = static_cast<std::size_t>(gamma.dim());
    if (alphas.size() != m || betas.size() != m)
        throw std::invalid_argument("MultiNuBsParams: alpha/beta length must match gamma dim");
    for (double a : alphas)
        if (!(a > 0.0)) throw std::invalid_argument("MultiNuBsParams: alphas must be positive");
    for (double b : betas)
        if (!(b > 0.0)) throw std::invalid_argument("MultiNuBsParams: betas must be positive");
    if (!(nu > 0.0)) throw std::invalid_argument("MultiNuBsParams: nu must be positive");
}

double biv_cdf(double t1, double t2, const BivNuBsParams& params) {
    const double u = xi(t1, params.p1).value / params.p1.alpha;
    const double v = xi(t2, params.p2).value / params.p2.alpha;
    return biv_normal_cdf(u, v, params.rho);
}

double biv_log_pdf(double t1, double t2, const BivNuBsParams& params) {
    detail::require_positive_t(t1, "biv_log_pdf");
    detail::require_positive_t(t2, "biv_log_pdf");
    const double x1 = params.p1.nu * std::log(t1 / params.p1.beta);
    const double x2 = params.p2.nu * std::log(t2 / params.p2.beta);
    const double u1 = 2.0 * std::sinh(x1) / params.p1.alpha;
    const double u2 = 2.0 * std::sinh(x2) / params.p2.alpha;
    const double om = 1.0 - params.rho * params.rho;
    constexpr double kLog2Pi = 1.8378770664093454836;
    // log phi_2(u1, u2; rho)
    const double log_kernel =
        -kLog2Pi - 0.5 * std::log(om) -
        (u1 * u1 - 2.0 * params.rho * u1 * u2 + u2 * u2) / (2.0 * om);
    // log Jacobians: d(xi_j/alpha_j)/dt_j = (nu_j / (alpha_j t_j)) 2 cosh(x_j)
    const double log_jac1 = std::log(params.p1.nu) - std::log(params.p1.alpha) -
                            std::log(t1) + detail::log_2cosh(x1);
    const double log_jac2 = std::log(params.p2.nu) - std::log(params.p2.alpha) -
                            std::log(t2) + detail::log_2cosh(x2);
    return log_kernel + log_jac1 + log_jac2;
}

double biv_pdf(double t1, double t2, const BivNuBsParams& params) {
    return std::exp(biv_log_pdf(t1, t2, params));
}

double biv_marginal_pdf(int which, double t, const BivNuBsParams& params) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("biv_marginal_pdf: which must be 1 or 2");
    return pdf(t, which == 1 ? params.p1 : params.p2);
}

SampleMatrix biv_sample(const BivNuBsParams& params, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("biv_sample: n must be positive");
    NormalRng rng(seed);
    const double cross = std::sqrt(1.0 - params.rho * params.rho);
    SampleMatrix out;
    out.rows = n;
    out.cols = 2;
    out.data.resize(static_cast<std::size_t>(n) * 2);
    for (std::int64_t i = 0; i < n; ++i) {
        const double z1 = rng.normal();
        const double z2 = params.rho * z1 + cross * rng.normal();
        const double w1 = detail::latent_w(params.p1.alpha, z1);
        const double w2 = detail::latent_w(params.p2.alpha, z2);
        out(i, 0) = params.p1.beta * std::exp(std::log(w1) / params.p1.nu);
        out(i, 1) = params.p2.beta * std::exp(std::log(w2) / params.p2.nu);
    }
    return out;
}

BivNuBsParams biv_reciprocal_params(ReciprocalMode mode, const BivNuBsParams& params) {
    switch (mode) {
        case ReciprocalMode::Both:
            return BivNuBsParams(reciprocal_params(params.p1), reciprocal_params(params.p2),
                                 params.rho);
        case ReciprocalMode::First:
            return BivNuBsParams(reciprocal_params(params.p1), params.p2, -params.rho);
        case ReciprocalMode::Second:
            return BivNuBsParams(params.p1, reciprocal_params(params.p2), -params.rho);
    }
    throw std::logic_error("biv_reciprocal_params: bad mode");
}

double multi_log_pdf(std::span<const double> t, const MultiNuBsParams& params) {
    const int m = params.dim();
    if (static_cast<int>(t.size()) != m)
        throw std::invalid_argument("multi_pdf: dimension mismatch");
    std::vector<double> u(m);
    double log_jac = 0.0;
    for (int i = 0; i < m; ++i) {
        detail::require_positive_t(t[i], "multi_pdf");
        const double x = params.nu * std::log(t[i] / params.betas[i]);
        u[i] = 2.0 * std::sinh(x) / params.alphas[i];
        log_jac += std::log(params.nu) - std::log(params.alphas[i]) - std::log(t[i]) +
                   detail::log_2cosh(x);
    }
    const CholeskyFactor chol = CholeskyFactor::compute(params.gamma);
    const std::vector<double> y = chol.forward_solve(u);
    double quad = 0.0;
    for (double v : y) quad += v * v;
    constexpr double kLog2Pi = 1.8378770664093454836;
    return -0.5 * (m * kLog2Pi + chol.log_det() + quad) + log_jac;
}

double multi_pdf(std::span<const double> t, const MultiNuBsParams& params) {
    return std::exp(multi_log_pdf(t, params));
}

McEstimate multi_cdf(std::span<const double> t, const MultiNuBsParams& params,
                     std::int64_t n_draws, std::uint64_t seed) {
    const int m = params.dim();
    if (static_cast<int>(t.size()) != m)
        throw std::invalid_argument("multi_cdf: dimension mismatch");
    std::vector<double> u(m);
    for (int i = 0; i < m; ++i) {
        detail::require_positive_t(t[i], "multi_cdf");
        u[i] = 2.0 * std::sinh(params.nu * std::log(t[i] / params.betas[i])) / params.alphas[i];
    }
    return mvn_cdf_mc(u, params.gamma, n_draws, seed);
}

SampleMatrix multi_sample(const MultiNuBsParams& params, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("multi_sample: n must be positive");
    const int m = params.dim();
    const CholeskyFactor chol = CholeskyFactor::compute(params.gamma);
    NormalRng rng(seed);
    SampleMatrix out;
    out.rows = n;
    out.cols = m;
    out.data.resize(static_cast<std::size_t>(n) * m);
    std::vector<double> z(m);
    for (std::int64_t i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) z[j] = rng.normal();
        for (int j = 0; j < m; ++j) {
            double x = 0.0;
            for (int k = 0; k <= j; ++k) x += chol(j, k) * z[k];
            const double w = detail::latent_w(params.alphas[j], x);
            out(i, j) = params.betas[j] * std::exp(std::log(w) / params.nu);
        }
    }
    return out;
}

}  // namespace nubs
