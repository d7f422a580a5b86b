#include "nubs/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "src/detail/nubs_math.hpp"
#include "src/detail/optimize.hpp"

namespace nubs {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct UniData {
    std::vector<double> t;
    std::vector<double> log_t;
    double sum_log_t = 0.0;
    int n = 0;
};

UniData prepare(std::span<const double> data) {
    UniData d;
    d.n = static_cast<int>(data.size());
    d.t.assign(data.begin(), data.end());
    d.log_t.resize(d.t.size());
    for (std::size_t i = 0; i < d.t.size(); ++i) {
        d.log_t[i] = std::log(d.t[i]);
        d.sum_log_t += d.log_t[i];
    }
    return d;
}

// Log-likelihood pieces as functions of (beta, nu): for each datum,
// x_i = nu * (log t_i - log beta).
struct XiSums {
    double sum_sinh_sq = 0.0;    // sum sinh^2(x_i)
    double sum_log_2cosh = 0.0;  // sum log(2 cosh(x_i))
    double sum_sinh_2x = 0.0;    // sum sinh(2 x_i)
    double sum_tanh = 0.0;       // sum tanh(x_i)
    double sum_r_tanh = 0.0;     // sum r_i tanh(x_i)
    double sum_r_sinh_2x = 0.0;  // sum r_i sinh(2 x_i)
};

XiSums xi_sums(const UniData& d, double log_beta, double nu, bool with_derivatives) {
    XiSums s;
    for (int i = 0; i < d.n; ++i) {
        const double r = d.log_t[i] - log_beta;
        const double x = nu * r;
        const double sh = std::sinh(x);
        s.sum_sinh_sq += sh * sh;
        s.sum_log_2cosh += detail::log_2cosh(x);
        if (with_derivatives) {
            const double th = std::tanh(x);
            const double s2 = std::sinh(2.0 * x);
            s.sum_sinh_2x += s2;
            s.sum_tanh += th;
            s.sum_r_tanh += r * th;
            s.sum_r_sinh_2x += r * s2;
        }
    }
    return s;
}

double log_likelihood_from_sums(const UniData& d, const XiSums& s, double alpha, double nu) {
    return d.n * (std::log(nu) - std::log(alpha) - kHalfLog2Pi) - d.sum_log_t +
           s.sum_log_2cosh - 2.0 * s.sum_sinh_sq / (alpha * alpha);
}

// Profile log-likelihood: alpha replaced by its closed form given (beta, nu).
double profile_loglik(const UniData& d, double log_beta, double nu) {
    const XiSums s = xi_sums(d, log_beta, nu, false);
    const double mean_4sq = 4.0 * s.sum_sinh_sq / d.n;
    if (!(mean_4sq > 0.0) || !std::isfinite(mean_4sq)) return kNegInf;
    const double alpha = std::sqrt(mean_4sq);
    return log_likelihood_from_sums(d, s, alpha, nu);
}

std::array<double, 3> score_impl(const UniData& d, double alpha, double beta, double nu) {
    const XiSums s = xi_sums(d, std::log(beta), nu, true);
    const double a2 = alpha * alpha;
    const double d_alpha = -d.n / alpha + 4.0 * s.sum_sinh_sq / (a2 * alpha);
    const double d_beta = (nu / beta) * (2.0 * s.sum_sinh_2x / a2 - s.sum_tanh);
    const double d_nu = d.n / nu + s.sum_r_tanh - 2.0 * s.sum_r_sinh_2x / a2;
    return {d_alpha, d_beta, d_nu};
}

void validate_positive(std::span<const double> data, const char* who) {
    for (double v : data)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": data must be strictly positive");
}

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    double hi = v[n / 2];
    if (n % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
        hi = 0.5 * (hi + v[n / 2 - 1]);
    }
    return hi;
}

}  // namespace

double uni_log_likelihood(std::span<const double> data, const NuBsParams& params) {
    for (double v : data)
        if (!(v > 0.0)) return kNegInf;
    const UniData d = prepare(data);
    const XiSums s = xi_sums(d, std::log(params.beta), params.nu, false);
    return log_likelihood_from_sums(d, s, params.alpha, params.nu);
}

std::array<double, 3> uni_score(std::span<const double> data, const NuBsParams& params) {
    validate_positive(data, "uni_score");
    const UniData d = prepare(data);
    return score_impl(d, params.alpha, params.beta, params.nu);
}

double uni_alpha_closed_form(std::span<const double> data, double beta, double nu) {
    validate_positive(data, "uni_alpha_closed_form");
    if (!(beta > 0.0) || !(nu > 0.0))
        throw std::invalid_argument("uni_alpha_closed_form: beta and nu must be positive");
    const UniData d = prepare(data);
    const XiSums s = xi_sums(d, std::log(beta), nu, false);
    return 2.0 * std::sqrt(s.sum_sinh_sq / d.n);
}

namespace {

// Damped Newton iteration on the profile score equations in
// (log beta, log nu). Keeps whichever point has the best profile
// likelihood; used as a polish step after the simplex search.
struct PolishResult {
    std::vector<double> u;
    double pl;
    int iterations = 0;
};

PolishResult polish_profile(const UniData& d, std::vector<double> u, double pl,
                            bool nu_free) {
    const int dim = nu_free ? 2 : 1;
    auto residual = [&](const std::vector<double>& uu) {
        const double nu = nu_free ? std::exp(uu[1]) : std::exp(u[1]);
        const XiSums s = xi_sums(d, uu[0], nu, true);
        const double a2 = 4.0 * s.sum_sinh_sq / d.n;
        std::vector<double> g(dim);
        g[0] = nu * (2.0 * s.sum_sinh_2x / a2 - s.sum_tanh);  // beta * d/d beta
        if (nu_free)
            g[1] = nu * (d.n / nu + s.sum_r_tanh - 2.0 * s.sum_r_sinh_2x / a2);
        return g;
    };

    PolishResult best{u, pl, 0};
    for (int it = 0; it < 40; ++it) {
        std::vector<double> g = residual(u);
        double gmax = 0.0;
        for (double v : g) gmax = std::max(gmax, std::fabs(v));
        if (!std::isfinite(gmax) || gmax <= 1e-11 * d.n) break;

        // Finite-difference Jacobian of the residual.
        const double h = 1e-7;
        std::vector<double> jac(static_cast<std::size_t>(dim) * dim);
        for (int j = 0; j < dim; ++j) {
            std::vector<double> up = u, um = u;
            up[j] += h;
            um[j] -= h;
            const std::vector<double> gp = residual(up);
            const std::vector<double> gm = residual(um);
            for (int i = 0; i < dim; ++i)
                jac[static_cast<std::size_t>(i) * dim + j] = (gp[i] - gm[i]) / (2.0 * h);
        }
        std::vector<double> rhs(dim);
        for (int i = 0; i < dim; ++i) rhs[i] = -g[i];
        std::vector<double> step;
        if (!detail::solve_dense(jac, rhs, step)) break;

        double scale = 1.0;
        bool accepted = false;
        for (int half = 0; half < 12; ++half, scale *= 0.5) {
            std::vector<double> cand = u;
            for (int i = 0; i < dim; ++i) cand[i] += scale * step[i];
            const double nu_c = nu_free ? std::exp(cand[1]) : std::exp(u[1]);
            const double pl_c = profile_loglik(d, cand[0], nu_c);
            if (std::isfinite(pl_c) && pl_c >= best.pl - 1e-13 * std::fabs(best.pl)) {
                if (nu_free)
                    u = cand;
                else
                    u[0] = cand[0];
                if (pl_c > best.pl) {
                    best.u = u;
                    best.pl = pl_c;
                }
                accepted = true;
                break;
            }
        }
        best.iterations = it + 1;
        if (!accepted) break;
    }
    return best;
}

FitResult assemble_uni_result(const UniData& d, std::span<const double> data, double log_beta,
                              double nu, double pl, int iterations, bool tol_reached,
                              bool nu_fixed) {
    const double beta = std::exp(log_beta);
    const double alpha = uni_alpha_closed_form(data, beta, nu);

    FitResult fit;
    fit.params = NuBsParams(alpha, beta, nu);
    fit.log_likelihood = pl;
    fit.n_iterations = iterations;
    fit.n_obs = d.n;
    fit.n_free_params = nu_fixed ? 2 : 3;

    const std::array<double, 3> sc = score_impl(d, alpha, beta, nu);
    fit.score_residuals = {alpha * sc[0] / d.n, beta * sc[1] / d.n};
    if (!nu_fixed) fit.score_residuals.push_back(nu * sc[2] / d.n);

    double rmax = 0.0;
    for (double r : fit.score_residuals) rmax = std::max(rmax, std::fabs(r));
    fit.converged = tol_reached && std::isfinite(pl) && rmax <= 1e-4;

    fit.aic = 2.0 * fit.n_free_params - 2.0 * pl;
    fit.bic = fit.n_free_params * std::log(static_cast<double>(d.n)) - 2.0 * pl;

    if (fit.converged) {
        try {
            fit.std_errors = std_errors(fit, data);
        } catch (const NotPositiveDefinite&) {
            fit.std_errors = std::nullopt;
        }
    }
    return fit;
}

}  // namespace

FitResult fit_univariate(std::span<const double> data, const OptimizerConfig& config) {
    if (data.size() < 4)
        throw std::invalid_argument("fit_univariate: need at least 4 observations");
    validate_positive(data, "fit_univariate");
    if (!(config.rel_tolerance > 0.0) || config.restarts < 1)
        throw std::invalid_argument("fit_univariate: invalid optimizer config");

    const UniData d = prepare(data);
    const double log_med = std::log(median_of(d.t));
    const bool nu_fixed = config.fixed_nu.has_value();
    if (nu_fixed && !(*config.fixed_nu > 0.0))
        throw std::invalid_argument("fit_univariate: fixed_nu must be positive");

    // Start points: (log beta, log nu).
    std::vector<std::array<double, 2>> starts;
    if (config.init_strategy == InitStrategy::UserSupplied) {
        if (!config.user_init)
            throw std::invalid_argument("fit_univariate: user_init required");
        starts.push_back({std::log(config.user_init->beta),
                          std::log(nu_fixed ? *config.fixed_nu : config.user_init->nu)});
    } else if (nu_fixed) {
        const double lv = std::log(*config.fixed_nu);
        starts.push_back({log_med - 0.3, lv});
        starts.push_back({log_med, lv});
        starts.push_back({log_med + 0.3, lv});
    } else if (config.init_strategy == InitStrategy::MomentBased) {
        starts.push_back({log_med, std::log(0.5)});
    } else {
        for (double nu0 : {0.25, 0.5, 1.0, 2.0, 4.0})
            starts.push_back({log_med, std::log(nu0)});
    }

    const int dim = nu_fixed ? 1 : 2;
    int total_iter = 0;
    bool tol_reached = false;
    std::vector<double> best_u;
    double best_pl = kNegInf;
    double fixed_log_nu = nu_fixed ? std::log(*config.fixed_nu) : 0.0;

    const detail::Objective nll = [&](const std::vector<double>& u) {
        const double lb = u[0];
        const double nu = nu_fixed ? *config.fixed_nu : std::exp(u[1]);
        const double pl = profile_loglik(d, lb, nu);
        return std::isfinite(pl) ? -pl : 1e300;
    };

    for (const auto& start : starts) {
        std::vector<double> u0(dim);
        u0[0] = start[0];
        if (!nu_fixed) u0[1] = start[1];
        double step = 0.25;
        detail::NmResult run;
        for (int rs = 0; rs < config.restarts; ++rs) {
            run = detail::nelder_mead(nll, u0, step, config.rel_tolerance,
                                      config.max_iterations);
            total_iter += run.iterations;
            u0 = run.x;
            step *= 0.25;
        }
        if (-run.f > best_pl) {
            best_pl = -run.f;
            best_u = run.x;
            tol_reached = run.tol_reached;
        }
    }

    std::vector<double> u_full = {best_u[0], nu_fixed ? fixed_log_nu : best_u[1]};
    PolishResult polished = polish_profile(d, u_full, best_pl, !nu_fixed);
    total_iter += polished.iterations;

    return assemble_uni_result(d, data, polished.u[0],
                               nu_fixed ? *config.fixed_nu : std::exp(polished.u[1]),
                               polished.pl, total_iter, tol_reached, nu_fixed);
}

double biv_log_likelihood(const SampleMatrix& data, const BivNuBsParams& params) {
    if (data.cols != 2)
        throw std::invalid_argument("biv_log_likelihood: data must have two columns");
    for (double v : data.data)
        if (!(v > 0.0)) return kNegInf;
    double acc = 0.0;
    for (std::int64_t i = 0; i < data.rows; ++i)
        acc += biv_log_pdf(data(i, 0), data(i, 1), params);
    return acc;
}

namespace {

BivNuBsParams biv_from_u(const std::vector<double>& u) {
    return BivNuBsParams(NuBsParams(std::exp(u[0]), std::exp(u[1]), std::exp(u[2])),
                         NuBsParams(std::exp(u[3]), std::exp(u[4]), std::exp(u[5])),
                         std::tanh(u[6]));
}

std::vector<double> biv_to_u(const BivNuBsParams& p) {
    return {std::log(p.p1.alpha), std::log(p.p1.beta), std::log(p.p1.nu),
            std::log(p.p2.alpha), std::log(p.p2.beta), std::log(p.p2.nu),
            std::atanh(p.rho)};
}

}  // namespace

FitResult fit_bivariate(const SampleMatrix& data, const OptimizerConfig& config) {
    if (data.cols != 2)
        throw std::invalid_argument("fit_bivariate: data must have two columns");
    if (data.rows < 10)
        throw std::invalid_argument("fit_bivariate: need at least 10 pairs");
    validate_positive(data.data, "fit_bivariate");

    const auto n = data.rows;
    std::vector<double> col1(n), col2(n);
    for (std::int64_t i = 0; i < n; ++i) {
        col1[i] = data(i, 0);
        col2[i] = data(i, 1);
    }

    std::vector<double> u0;
    if (config.init_strategy == InitStrategy::UserSupplied) {
        if (!config.user_init_biv)
            throw std::invalid_argument("fit_bivariate: user_init_biv required");
        u0 = biv_to_u(*config.user_init_biv);
    } else {
        OptimizerConfig margin_cfg = config;
        margin_cfg.init_strategy = InitStrategy::Grid;
        margin_cfg.user_init.reset();
        const FitResult m1 = fit_univariate(col1, margin_cfg);
        const FitResult m2 = fit_univariate(col2, margin_cfg);
        // Latent-scale moment estimate of rho from the fitted margins.
        double sz1 = 0, sz2 = 0, sz11 = 0, sz22 = 0, sz12 = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            const double z1 = xi(col1[i], m1.uni()).value / m1.uni().alpha;
            const double z2 = xi(col2[i], m2.uni()).value / m2.uni().alpha;
            sz1 += z1;
            sz2 += z2;
            sz11 += z1 * z1;
            sz22 += z2 * z2;
            sz12 += z1 * z2;
        }
        const double c11 = sz11 / n - (sz1 / n) * (sz1 / n);
        const double c22 = sz22 / n - (sz2 / n) * (sz2 / n);
        const double c12 = sz12 / n - (sz1 / n) * (sz2 / n);
        double rho0 = c12 / std::sqrt(c11 * c22);
        rho0 = std::clamp(rho0, -0.98, 0.98);
        u0 = biv_to_u(BivNuBsParams(m1.uni(), m2.uni(), rho0));
    }

    const detail::Objective nll = [&](const std::vector<double>& u) {
        for (double v : u)
            if (!std::isfinite(v) || std::fabs(v) > 300.0) return 1e300;
        const double ll = biv_log_likelihood(data, biv_from_u(u));
        return std::isfinite(ll) ? -ll : 1e300;
    };

    int total_iter = 0;
    double step = 0.2;
    detail::NmResult run;
    std::vector<double> u = u0;
    for (int rs = 0; rs < config.restarts; ++rs) {
        run = detail::nelder_mead(nll, u, step, config.rel_tolerance, config.max_iterations);
        total_iter += run.iterations;
        u = run.x;
        step *= 0.25;
    }
    double best_ll = -run.f;

    // Damped Newton polish with finite-difference derivatives.
    for (int it = 0; it < 15; ++it) {
        const std::vector<double> g = detail::fd_gradient(nll, u, 3e-5);
        double gmax = 0.0;
        for (double v : g) gmax = std::max(gmax, std::fabs(v));
        if (gmax <= 1e-7 * n) break;
        const std::vector<double> h = detail::fd_hessian(nll, u, 1e-4);
        std::vector<double> rhs(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = -g[i];
        std::vector<double> stepv;
        if (!detail::solve_spd(h, rhs, stepv)) break;
        bool accepted = false;
        double scale = 1.0;
        for (int half = 0; half < 10; ++half, scale *= 0.5) {
            std::vector<double> cand = u;
            for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += scale * stepv[i];
            const double ll = -nll(cand);
            if (ll > best_ll) {
                u = cand;
                best_ll = ll;
                accepted = true;
                break;
            }
        }
        ++total_iter;
        if (!accepted) break;
    }

    FitResult fit;
    fit.params = biv_from_u(u);
    fit.log_likelihood = best_ll;
    fit.n_iterations = total_iter;
    fit.n_obs = static_cast<int>(n);
    fit.n_free_params = 7;

    const std::vector<double> g = detail::fd_gradient(nll, u, 3e-5);
    fit.score_residuals.resize(g.size());
    double rmax = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        fit.score_residuals[i] = -g[i] / static_cast<double>(n);
        rmax = std::max(rmax, std::fabs(fit.score_residuals[i]));
    }
    fit.converged = run.tol_reached && std::isfinite(best_ll) && rmax <= 1e-3;

    fit.aic = 2.0 * fit.n_free_params - 2.0 * best_ll;
    fit.bic = fit.n_free_params * std::log(static_cast<double>(n)) - 2.0 * best_ll;

    if (fit.converged) {
        try {
            fit.std_errors = std_errors(fit, data);
        } catch (const NotPositiveDefinite&) {
            fit.std_errors = std::nullopt;
        }
    }
    return fit;
}

namespace {

std::vector<double> std_errors_from_hessian(const detail::Objective& nll,
                                            const std::vector<double>& u,
                                            const std::vector<double>& dtheta_du) {
    const std::vector<double> hess = detail::fd_hessian(nll, u, 1e-4);
    std::vector<double> diag(u.size());
    if (!detail::spd_inverse_diagonal(hess, diag))
        throw NotPositiveDefinite(
            "std_errors: observed information is not positive definite "
            "(boundary or saddle solution)");
    std::vector<double> se(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(diag[i] > 0.0))
            throw NotPositiveDefinite("std_errors: nonpositive variance estimate");
        se[i] = std::sqrt(diag[i]) * dtheta_du[i];
    }
    return se;
}

}  // namespace

std::vector<double> std_errors(const FitResult& fit, std::span<const double> data) {
    if (!fit.converged)
        throw std::invalid_argument("std_errors: fit did not converge");
    const NuBsParams p = fit.uni();
    const bool nu_fixed = fit.n_free_params == 2;

    const detail::Objective nll = [&, p](const std::vector<double>& u) {
        const NuBsParams q(std::exp(u[0]), std::exp(u[1]), nu_fixed ? p.nu : std::exp(u[2]));
        const double ll = uni_log_likelihood(data, q);
        return std::isfinite(ll) ? -ll : 1e300;
    };
    std::vector<double> u = {std::log(p.alpha), std::log(p.beta)};
    std::vector<double> scale = {p.alpha, p.beta};
    if (!nu_fixed) {
        u.push_back(std::log(p.nu));
        scale.push_back(p.nu);
    }
    return std_errors_from_hessian(nll, u, scale);
}

std::vector<double> std_errors(const FitResult& fit, const SampleMatrix& data) {
    if (!fit.converged)
        throw std::invalid_argument("std_errors: fit did not converge");
    const BivNuBsParams p = fit.biv();

    const detail::Objective nll = [&](const std::vector<double>& u) {
        const double ll = biv_log_likelihood(data, biv_from_u(u));
        return std::isfinite(ll) ? -ll : 1e300;
    };
    const std::vector<double> u = biv_to_u(p);
    const std::vector<double> scale = {p.p1.alpha, p.p1.beta, p.p1.nu,
                                       p.p2.alpha, p.p2.beta, p.p2.nu,
                                       1.0 - p.rho * p.rho};
    return std_errors_from_hessian(nll, u, scale);
}

ModelComparison compare_models(std::span<const double> data, const OptimizerConfig& config) {
    OptimizerConfig classic_cfg = config;
    classic_cfg.fixed_nu = 0.5;
    OptimizerConfig free_cfg = config;
    free_cfg.fixed_nu.reset();

    ModelComparison cmp{fit_univariate(data, classic_cfg), fit_univariate(data, free_cfg), 0.0};
    cmp.lr_statistic = 2.0 * (cmp.free.log_likelihood - cmp.classic.log_likelihood);
    return cmp;
}

}  // namespace nubs
