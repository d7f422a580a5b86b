#include "nubs/mvn.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nubs/rng.hpp"

namespace nubs {

double mvn_pdf(std::span<const double> u, const CorrelationMatrix& gamma) {
    const int p = gamma.dim();
    if (static_cast<int>(u.size()) != p)
        throw std::invalid_argument("mvn_pdf: dimension mismatch");
    const CholeskyFactor chol = CholeskyFactor::compute(gamma);
    const std::vector<double> y = chol.forward_solve(u);
    double quad = 0.0;
    for (double v : y) quad += v * v;
    constexpr double kLog2Pi = 1.8378770664093454836;
    return std::exp(-0.5 * (p * kLog2Pi + chol.log_det() + quad));
}

McEstimate mvn_cdf_mc(std::span<const double> u, const CorrelationMatrix& gamma,
                      std::int64_t n_draws, std::uint64_t seed) {
    const int p = gamma.dim();
    if (static_cast<int>(u.size()) != p)
        throw std::invalid_argument("mvn_cdf_mc: dimension mismatch");
    if (n_draws < 1000)
        throw std::invalid_argument("mvn_cdf_mc: n_draws must be at least 1000");
    const CholeskyFactor chol = CholeskyFactor::compute(gamma);

    NormalRng rng(seed);
    std::vector<double> z(p);
    std::int64_t hits = 0;
    for (std::int64_t d = 0; d < n_draws; ++d) {
        for (int i = 0; i < p; ++i) z[i] = rng.normal();
        bool inside = true;
        for (int i = 0; i < p && inside; ++i) {
            double x = 0.0;
            for (int j = 0; j <= i; ++j) x += chol(i, j) * z[j];
            inside = x <= u[i];
        }
        if (inside) ++hits;
    }
    const double n = static_cast<double>(n_draws);
    const double est = static_cast<double>(hits) / n;
    return {est, std::sqrt(est * (1.0 - est) / n)};
}

}  // namespace nubs
