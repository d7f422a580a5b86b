// nubs: command-line front end for the nu-Birnbaum-Saunders library.
//
// Subcommands: fit, eval, sample, gof, moments, fit2, simulate2, compare.
// Reports go to stdout as ordered JSON with a fixed field layout;
// diagnostics go to stderr. Exit codes: 0 success, 1 usage error,
// 2 numeric failure (non-convergence or an evaluation error).

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nubs/dataset.hpp"
#include "nubs/estimation.hpp"
#include "nubs/gof.hpp"
#include "nubs/report.hpp"
#include "nubs/version.hpp"

namespace {

using nubs::report::Json;

constexpr const char* kSeedEnvVar = "NUBS_SEED";

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv(kSeedEnvVar)) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError(std::string(kSeedEnvVar) +
                                       " must be an unsigned integer");
        }
    }
    return 0;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

Json new_report(const std::string& command) {
    Json j;
    j["command"] = command;
    j["tool_version"] = NUBS_VERSION;
    return j;
}

void emit(Json& j, const Timer& timer) {
    j["timing_ms"] = timer.elapsed_ms();
    std::cout << nubs::report::dump(j);
}

nubs::Dataset resolve_data(const std::string& path, bool table1, const std::string& cmd) {
    if (table1 && !path.empty())
        throw CLI::ValidationError(cmd + ": --data and --table1 are mutually exclusive");
    if (table1) return nubs::embedded_table1();
    if (path.empty()) throw CLI::ValidationError(cmd + ": provide --data PATH or --table1");
    return nubs::load_dataset(path);
}

std::vector<double> parse_tuple(const std::string& text, std::size_t count,
                                const std::string& flag) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            values.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag + ": bad number '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.size() != count)
        throw CLI::ValidationError(flag + ": expected " + std::to_string(count) +
                                   " comma-separated values");
    return values;
}

int run(int argc, char** argv) {
    CLI::App app{"nu-Birnbaum-Saunders lifetime distributions: evaluation, sampling, "
                 "maximum-likelihood fitting and goodness-of-fit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", NUBS_VERSION);
    app.footer("Default seed comes from --seed, then the " + std::string(kSeedEnvVar) +
               " environment variable, then 0.");

    // ---- fit ----------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "univariate maximum-likelihood fit");
    std::string fit_data;
    bool fit_table1 = false;
    std::optional<double> fit_fix_nu;
    std::optional<std::uint64_t> fit_seed;
    fit_cmd->add_option("--data", fit_data, "path to a dataset file");
    fit_cmd->add_flag("--table1", fit_table1, "use the embedded fatigue dataset");
    fit_cmd->add_option("--fix-nu", fit_fix_nu, "freeze nu (0.5 gives the classic model)");
    fit_cmd->add_option("--seed", fit_seed, "seed recorded in the report");

    // ---- eval ---------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "evaluate pdf/cdf/quantile/hazard");
    double ev_alpha = 0, ev_beta = 0, ev_nu = 0;
    std::optional<double> ev_at;
    std::optional<double> ev_quantile;
    bool ev_pdf = false, ev_cdf = false, ev_hazard = false;
    eval_cmd->add_option("--alpha", ev_alpha, "shape")->required();
    eval_cmd->add_option("--beta", ev_beta, "scale")->required();
    eval_cmd->add_option("--nu", ev_nu, "exponent")->required();
    eval_cmd->add_option("--at", ev_at, "evaluation point t > 0");
    eval_cmd->add_flag("--pdf", ev_pdf, "density at --at");
    eval_cmd->add_flag("--cdf", ev_cdf, "distribution function at --at");
    eval_cmd->add_option("--quantile", ev_quantile, "quantile at probability P");
    eval_cmd->add_flag("--hazard", ev_hazard, "hazard rate at --at");

    // ---- sample -------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "draw iid values, one per line");
    double sm_alpha = 0, sm_beta = 0, sm_nu = 0;
    std::int64_t sm_n = 0;
    std::optional<std::uint64_t> sm_seed;
    sample_cmd->add_option("--alpha", sm_alpha)->required();
    sample_cmd->add_option("--beta", sm_beta)->required();
    sample_cmd->add_option("--nu", sm_nu)->required();
    sample_cmd->add_option("-n,--n", sm_n, "number of draws")->required();
    sample_cmd->add_option("--seed", sm_seed, "RNG seed");

    // ---- gof ----------------------------------------------------------
    auto* gof_cmd = app.add_subcommand("gof", "Kolmogorov-Smirnov goodness-of-fit");
    std::string gof_data;
    bool gof_table1 = false;
    std::string gof_params;
    bool gof_fit = false;
    int gof_boot = 999;
    std::optional<std::uint64_t> gof_seed;
    gof_cmd->add_option("--data", gof_data, "path to a dataset file");
    gof_cmd->add_flag("--table1", gof_table1, "use the embedded fatigue dataset");
    gof_cmd->add_option("--params", gof_params, "alpha,beta,nu tested as given");
    gof_cmd->add_flag("--fit", gof_fit, "fit the model first, then test the fit");
    gof_cmd->add_option("--boot", gof_boot, "parametric bootstrap replicates (0 disables)");
    gof_cmd->add_option("--seed", gof_seed, "RNG seed for the bootstrap");

    // ---- moments ------------------------------------------------------
    auto* mom_cmd = app.add_subcommand("moments", "raw moment E[T^k]");
    double mo_alpha = 0, mo_beta = 0, mo_nu = 0;
    int mo_k = 1;
    int mo_nodes = 64;
    mom_cmd->add_option("--alpha", mo_alpha)->required();
    mom_cmd->add_option("--beta", mo_beta)->required();
    mom_cmd->add_option("--nu", mo_nu)->required();
    mom_cmd->add_option("-k,--k", mo_k, "moment order")->required();
    mom_cmd->add_option("--nodes", mo_nodes, "Gauss-Hermite nodes");

    // ---- fit2 ---------------------------------------------------------
    auto* fit2_cmd = app.add_subcommand("fit2", "bivariate maximum-likelihood fit");
    std::string fit2_data;
    std::optional<std::uint64_t> fit2_seed;
    fit2_cmd->add_option("--data", fit2_data, "two-column dataset file")->required();
    fit2_cmd->add_option("--seed", fit2_seed, "seed recorded in the report");

    // ---- simulate2 ----------------------------------------------------
    auto* sim2_cmd = app.add_subcommand("simulate2", "draw bivariate pairs, two per line");
    std::string sim2_params;
    std::int64_t sim2_n = 0;
    std::optional<std::uint64_t> sim2_seed;
    sim2_cmd->add_option("--params", sim2_params,
                         "alpha1,beta1,nu1,alpha2,beta2,nu2,rho")
        ->required();
    sim2_cmd->add_option("-n,--n", sim2_n, "number of pairs")->required();
    sim2_cmd->add_option("--seed", sim2_seed, "RNG seed");

    // ---- compare ------------------------------------------------------
    auto* cmp_cmd = app.add_subcommand("compare", "classic (nu=1/2) vs free-nu model");
    std::string cmp_data;
    bool cmp_table1 = false;
    cmp_cmd->add_option("--data", cmp_data, "path to a dataset file");
    cmp_cmd->add_flag("--table1", cmp_table1, "use the embedded fatigue dataset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    Timer timer;

    if (fit_cmd->parsed()) {
        const nubs::Dataset ds = resolve_data(fit_data, fit_table1, "fit");
        const std::uint64_t seed = resolve_seed(fit_seed);
        nubs::OptimizerConfig cfg;
        cfg.fixed_nu = fit_fix_nu;
        const nubs::FitResult fit = nubs::fit_univariate(ds.values, cfg);
        Json j = new_report("fit");
        j["seed"] = seed;
        j["dataset"] = ds.name;
        j["params_out"] = nubs::report::params_json(fit.uni());
        j["fit"] = nubs::report::fit_json(fit);
        emit(j, timer);
        return fit.converged ? 0 : 2;
    }

    if (eval_cmd->parsed()) {
        const int modes = (ev_pdf ? 1 : 0) + (ev_cdf ? 1 : 0) + (ev_quantile ? 1 : 0) +
                          (ev_hazard ? 1 : 0);
        if (modes != 1)
            throw CLI::ValidationError(
                "eval: choose exactly one of --pdf, --cdf, --quantile, --hazard");
        if (!ev_quantile && !ev_at)
            throw CLI::ValidationError("eval: --at is required for --pdf/--cdf/--hazard");
        const nubs::NuBsParams params(ev_alpha, ev_beta, ev_nu);
        Json j = new_report("eval");
        j["params_in"] = nubs::report::params_json(params);
        std::string mode;
        double result = 0.0;
        if (ev_pdf) mode = "pdf", result = nubs::pdf(*ev_at, params);
        if (ev_cdf) mode = "cdf", result = nubs::cdf(*ev_at, params);
        if (ev_hazard) mode = "hazard", result = nubs::hazard(*ev_at, params);
        if (ev_quantile) mode = "quantile", result = nubs::quantile(*ev_quantile, params);
        j["mode"] = mode;
        if (ev_at) j["at"] = *ev_at;
        if (ev_quantile) j["p"] = *ev_quantile;
        j["result"] = result;
        emit(j, timer);
        return 0;
    }

    if (sample_cmd->parsed()) {
        const nubs::NuBsParams params(sm_alpha, sm_beta, sm_nu);
        const std::uint64_t seed = resolve_seed(sm_seed);
        for (double v : nubs::sample(params, sm_n, seed))
            std::cout << nubs::report::format_value(v) << "\n";
        return 0;
    }

    if (gof_cmd->parsed()) {
        const nubs::Dataset ds = resolve_data(gof_data, gof_table1, "gof");
        const std::uint64_t seed = resolve_seed(gof_seed);
        if (gof_fit == !gof_params.empty())
            throw CLI::ValidationError("gof: provide exactly one of --params or --fit");
        Json j = new_report("gof");
        j["seed"] = seed;
        j["dataset"] = ds.name;
        bool fit_ok = true;
        std::optional<nubs::NuBsParams> tested;
        if (gof_fit) {
            const nubs::FitResult fit = nubs::fit_univariate(ds.values);
            fit_ok = fit.converged;
            tested = fit.uni();
            j["fit"] = nubs::report::fit_json(fit);
        } else {
            const std::vector<double> v = parse_tuple(gof_params, 3, "--params");
            tested = nubs::NuBsParams(v[0], v[1], v[2]);
        }
        j["params_in"] = nubs::report::params_json(*tested);
        const nubs::GofReport rep = nubs::gof_test(ds.values, *tested, gof_boot, seed);
        j["gof"] = nubs::report::gof_json(rep);
        emit(j, timer);
        return fit_ok ? 0 : 2;
    }

    if (mom_cmd->parsed()) {
        const nubs::NuBsParams params(mo_alpha, mo_beta, mo_nu);
        Json j = new_report("moments");
        j["params_in"] = nubs::report::params_json(params);
        j["k"] = mo_k;
        j["n_nodes"] = mo_nodes;
        j["result"] = nubs::raw_moment(mo_k, params, mo_nodes);
        emit(j, timer);
        return 0;
    }

    if (fit2_cmd->parsed()) {
        const nubs::Dataset ds = nubs::load_dataset(fit2_data);
        if (ds.values.size() % 2 != 0)
            throw CLI::ValidationError("fit2: dataset must contain an even value count "
                                       "(two columns)");
        nubs::SampleMatrix m;
        m.rows = static_cast<std::int64_t>(ds.values.size() / 2);
        m.cols = 2;
        m.data = ds.values;
        const std::uint64_t seed = resolve_seed(fit2_seed);
        const nubs::FitResult fit = nubs::fit_bivariate(m);
        Json j = new_report("fit2");
        j["seed"] = seed;
        j["dataset"] = ds.name;
        j["params_out"] = nubs::report::params_json(fit.biv());
        j["fit"] = nubs::report::fit_json(fit);
        emit(j, timer);
        return fit.converged ? 0 : 2;
    }

    if (sim2_cmd->parsed()) {
        const std::vector<double> v = parse_tuple(sim2_params, 7, "--params");
        const nubs::BivNuBsParams params(nubs::NuBsParams(v[0], v[1], v[2]),
                                         nubs::NuBsParams(v[3], v[4], v[5]), v[6]);
        const std::uint64_t seed = resolve_seed(sim2_seed);
        const nubs::SampleMatrix m = nubs::biv_sample(params, sim2_n, seed);
        for (std::int64_t i = 0; i < m.rows; ++i)
            std::cout << nubs::report::format_value(m(i, 0)) << " "
                      << nubs::report::format_value(m(i, 1)) << "\n";
        return 0;
    }

    if (cmp_cmd->parsed()) {
        const nubs::Dataset ds = resolve_data(cmp_data, cmp_table1, "compare");
        const nubs::ModelComparison cmp = nubs::compare_models(ds.values);
        Json j = new_report("compare");
        j["dataset"] = ds.name;
        j["comparison"] = nubs::report::comparison_json(cmp);
        emit(j, timer);
        return (cmp.classic.converged && cmp.free.converged) ? 0 : 2;
    }

    return 1;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11_PARSE handles parse errors inside run(); this catches
        // validation errors thrown after parsing.
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const nubs::DatasetError& e) {
        std::cerr << "dataset error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    }
}
