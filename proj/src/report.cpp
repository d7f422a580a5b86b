#include "nubs/report.hpp"

#include <cstdio>

namespace nubs::report {

Json params_json(const NuBsParams& p) {
    Json j;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["nu"] = p.nu;
    return j;
}

Json params_json(const BivNuBsParams& p) {
    Json j;
    j["alpha1"] = p.p1.alpha;
    j["beta1"] = p.p1.beta;
    j["nu1"] = p.p1.nu;
    j["alpha2"] = p.p2.alpha;
    j["beta2"] = p.p2.beta;
    j["nu2"] = p.p2.nu;
    j["rho"] = p.rho;
    return j;
}

Json fit_json(const FitResult& fit) {
    Json j;
    if (std::holds_alternative<NuBsParams>(fit.params))
        j["params"] = params_json(fit.uni());
    else
        j["params"] = params_json(fit.biv());
    j["log_likelihood"] = fit.log_likelihood;
    j["converged"] = fit.converged;
    j["n_iterations"] = fit.n_iterations;
    j["score_residuals"] = fit.score_residuals;
    if (fit.std_errors)
        j["std_errors"] = *fit.std_errors;
    else
        j["std_errors"] = nullptr;
    j["aic"] = fit.aic;
    j["bic"] = fit.bic;
    j["n_obs"] = fit.n_obs;
    j["n_free_params"] = fit.n_free_params;
    return j;
}

Json gof_json(const GofReport& rep) {
    Json j;
    j["d_statistic"] = rep.d_statistic;
    j["scaled_statistic"] = rep.scaled_statistic;
    j["p_asymptotic"] = rep.p_asymptotic;
    if (rep.p_bootstrap)
        j["p_bootstrap"] = *rep.p_bootstrap;
    else
        j["p_bootstrap"] = nullptr;
    j["n_obs"] = rep.n_obs;
    j["n_boot"] = rep.n_boot;
    j["n_boot_skipped"] = rep.n_boot_skipped;
    return j;
}

Json comparison_json(const ModelComparison& cmp) {
    Json j;
    j["classic"] = fit_json(cmp.classic);
    j["free"] = fit_json(cmp.free);
    j["lr_statistic"] = cmp.lr_statistic;
    j["aic_prefers"] = cmp.free.aic < cmp.classic.aic ? "free" : "classic";
    j["bic_prefers"] = cmp.free.bic < cmp.classic.bic ? "free" : "classic";
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace nubs::report
