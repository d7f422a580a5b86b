#include "src/detail/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nubs::detail {

NmResult nelder_mead(const Objective& f, const std::vector<double>& x0, double step,
                     double ftol_rel, int max_iter) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / n;        // expansion
    const double gamma = 0.75 - 0.5 / n;      // contraction
    const double delta = 1.0 - 1.0 / n;       // shrink

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<int> order(n + 1);
    NmResult res;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0];
        const int worst = order[n];
        const int second_worst = order[n - 1];

        const double spread = std::fabs(fv[worst] - fv[best]);
        if (spread <= ftol_rel * (std::fabs(fv[best]) + std::fabs(fv[worst]) + 1e-300)) {
            res.tol_reached = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= n;

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j)
                p[j] = centroid[j] + coef * (centroid[j] - pts[worst][j]);
            return p;
        };

        std::vector<double> xr = blend(alpha);
        const double fr = f(xr);
        if (fr < fv[order[0]]) {
            std::vector<double> xe = blend(alpha * beta);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = std::move(xe);
                fv[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            pts[worst] = std::move(xr);
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            std::vector<double> xc = blend(outside ? alpha * gamma : -gamma);
            const double fc = f(xc);
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = std::move(xc);
                fv[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int j = 0; j < n; ++j)
                        pts[i][j] = pts[best][j] + delta * (pts[i][j] - pts[best][j]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }

    const auto it = std::min_element(fv.begin(), fv.end());
    res.x = pts[static_cast<std::size_t>(it - fv.begin())];
    res.f = *it;
    res.iterations = iter;
    return res;
}

std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x, double h) {
    const int n = static_cast<int>(x.size());
    std::vector<double> g(n);
    std::vector<double> p = x;
    for (int i = 0; i < n; ++i) {
        p[i] = x[i] + h;
        const double fp = f(p);
        p[i] = x[i] - h;
        const double fm = f(p);
        p[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

std::vector<double> fd_hessian(const Objective& f, const std::vector<double>& x, double h) {
    const int n = static_cast<int>(x.size());
    std::vector<double> hess(static_cast<std::size_t>(n) * n, 0.0);
    const double f0 = f(x);
    std::vector<double> p = x;
    for (int i = 0; i < n; ++i) {
        p[i] = x[i] + h;
        const double fp = f(p);
        p[i] = x[i] - h;
        const double fm = f(p);
        p[i] = x[i];
        hess[static_cast<std::size_t>(i) * n + i] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            p[i] = x[i] + h;
            p[j] = x[j] + h;
            const double fpp = f(p);
            p[j] = x[j] - h;
            const double fpm = f(p);
            p[i] = x[i] - h;
            p[j] = x[j] + h;
            const double fmp = f(p);
            p[j] = x[j] - h;
            const double fmm = f(p);
            p[i] = x[i];
            p[j] = x[j];
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            hess[static_cast<std::size_t>(i) * n + j] = v;
            hess[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    return hess;
}

namespace {

bool cholesky_in_place(std::vector<double>& a, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= a[static_cast<std::size_t>(i) * n + k] * a[static_cast<std::size_t>(j) * n + k];
            if (i == j) {
                if (!(s > 0.0)) return false;
                a[static_cast<std::size_t>(i) * n + j] = std::sqrt(s);
            } else {
                a[static_cast<std::size_t>(i) * n + j] = s / a[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
    return true;
}

void chol_solve(const std::vector<double>& l, int n, const std::vector<double>& b,
                std::vector<double>& x) {
    x.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int j = 0; j < i; ++j) s -= l[static_cast<std::size_t>(i) * n + j] * x[j];
        x[i] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= l[static_cast<std::size_t>(j) * n + i] * x[j];
        x[i] = s / l[static_cast<std::size_t>(i) * n + i];
    }
}

}  // namespace

bool solve_spd(std::vector<double> a, const std::vector<double>& b, std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    if (!cholesky_in_place(a, n)) return false;
    chol_solve(a, n, b, x);
    return true;
}

bool spd_inverse_diagonal(std::vector<double> a, std::vector<double>& diag) {
    const int n = static_cast<int>(diag.size());
    if (!cholesky_in_place(a, n)) return false;
    std::vector<double> e(n, 0.0);
    std::vector<double> col;
    for (int k = 0; k < n; ++k) {
        e.assign(n, 0.0);
        e[k] = 1.0;
        chol_solve(a, n, e, col);
        diag[k] = col[k];
    }
    return true;
}

bool solve_dense(std::vector<double> a, std::vector<double> b, std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[static_cast<std::size_t>(r) * n + col]) >
                std::fabs(a[static_cast<std::size_t>(piv) * n + col]))
                piv = r;
        if (std::fabs(a[static_cast<std::size_t>(piv) * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<std::size_t>(piv) * n + c],
                          a[static_cast<std::size_t>(col) * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double m = a[static_cast<std::size_t>(r) * n + col] /
                             a[static_cast<std::size_t>(col) * n + col];
            if (m == 0.0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<std::size_t>(r) * n + c] -= m * a[static_cast<std::size_t>(col) * n + c];
            b[r] -= m * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[static_cast<std::size_t>(r) * n + c] * x[c];
        x[r] = s / a[static_cast<std::size_t>(r) * n + r];
    }
    return true;
}

}  // namespace nubs::detail
