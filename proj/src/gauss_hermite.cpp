#include "nubs/gauss_hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nubs {

namespace {

// Implicit-shift QL iteration for a symmetric tridiagonal matrix,
// accumulating only the first row of the eigenvector matrix (IMTQL2 as
// adapted for Gauss rules by Golub & Welsch). d = diagonal, e =
// subdiagonal; on return d holds eigenvalues and z the first components.
void imtqlx(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e[n - 1] = 0.0;
    const double prec = 2.22e-16;

    for (int l = 0; l < n; ++l) {
        int iterations = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= prec * dd) break;
            }
            if (m == l) break;
            if (++iterations > 60)
                throw std::runtime_error("gauss_hermite: QL iteration failed");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[order[i]];
        zs[i] = z[order[i]];
    }
    d = std::move(ds);
    z = std::move(zs);
}

}  // namespace

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");

    // Jacobi matrix of the Hermite weight exp(-x^2): zero diagonal,
    // off-diagonal sqrt(k/2); nodes are its eigenvalues and the weights
    // come from the squared first eigenvector components times mu0.
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);
    for (int k = 1; k < n; ++k) e[k - 1] = std::sqrt(0.5 * k);
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;

    imtqlx(d, e, z);

    constexpr double kSqrtPi = 1.7724538509055160273;
    GaussHermiteRule rule;
    rule.nodes = std::move(d);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) rule.weights[i] = kSqrtPi * z[i] * z[i];
    return rule;
}

}  // namespace nubs
