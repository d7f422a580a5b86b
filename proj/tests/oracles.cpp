#include "tests/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace oracles {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = simpson(f, a, fa, b, fb, m, fm);
    return adaptive(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                   double ay, double by, double tol) {
    const auto inner = [&](double y) {
        return integrate([&](double x) { return f(x, y); }, ax, bx, tol * 1e-3);
    };
    return integrate(inner, ay, by, tol);
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double ks_critical_value(std::size_t n, double alpha) {
    if (n < 35) throw std::invalid_argument("ks_critical_value: needs n >= 35");
    return std::sqrt(-std::log(alpha / 2.0) / (2.0 * static_cast<double>(n)));
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, (i + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

namespace {

long double classic_profile_ll(std::span<const double> data, long double beta) {
    const long double n = static_cast<long double>(data.size());
    long double q_sum = 0.0L;
    for (double t : data) q_sum += t / beta + beta / t - 2.0L;
    const long double a2 = q_sum / n;
    long double ll = 0.0L;
    const long double sqrt2pi = 2.5066282746310005024L;
    for (double t : data) {
        const long double rb = sqrtl(beta / t);
        ll += logl((rb + rb * rb * rb) / (2.0L * sqrtl(a2) * beta * sqrt2pi)) -
              (t / beta + beta / t - 2.0L) / (2.0L * a2);
    }
    return ll;
}

}  // namespace

ClassicFit classic_bs_mle(std::span<const double> data) {
    long double lo = *std::min_element(data.begin(), data.end());
    long double hi = *std::max_element(data.begin(), data.end());
    const long double gr = 0.6180339887498948482L;
    long double x1 = hi - gr * (hi - lo);
    long double x2 = lo + gr * (hi - lo);
    long double f1 = classic_profile_ll(data, x1);
    long double f2 = classic_profile_ll(data, x2);
    for (int it = 0; it < 300 && (hi - lo) > 1e-13L * hi; ++it) {
        if (f1 < f2) {  // maximizing
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = classic_profile_ll(data, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = classic_profile_ll(data, x1);
        }
    }
    const long double beta = 0.5L * (lo + hi);
    long double q_sum = 0.0L;
    for (double t : data) q_sum += t / beta + beta / t - 2.0L;
    const long double alpha = sqrtl(q_sum / static_cast<long double>(data.size()));
    return {static_cast<double>(alpha), static_cast<double>(beta),
            static_cast<double>(classic_profile_ll(data, beta))};
}

long double uni_loglik_display(std::span<const double> data, long double alpha,
                               long double beta, long double nu) {
    const long double n = static_cast<long double>(data.size());
    const long double log2pi = 1.8378770664093454836L;
    long double sum_q = 0.0L;
    long double sum_logbr = 0.0L;
    for (double td : data) {
        const long double ratio = td / beta;
        sum_q += powl(ratio, 2.0L * nu) + powl(ratio, -2.0L * nu) - 2.0L;
        sum_logbr += logl(powl(ratio, nu - 1.0L) + powl(ratio, -(nu + 1.0L)));
    }
    return n * logl(nu) - n * logl(alpha) - n * logl(beta) - 0.5L * n * log2pi -
           sum_q / (2.0L * alpha * alpha) + sum_logbr;
}

long double biv_loglik_display(std::span<const double> pairs, long double a1, long double b1,
                               long double n1, long double a2, long double b2, long double n2,
                               long double rho) {
    const std::size_t n = pairs.size() / 2;
    const long double nn = static_cast<long double>(n);
    const long double log2pi = 1.8378770664093454836L;
    long double sum_br1 = 0.0L, sum_br2 = 0.0L, sum_quad = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double r1 = pairs[2 * i] / b1;
        const long double r2 = pairs[2 * i + 1] / b2;
        sum_br1 += logl(powl(r1, n1 - 1.0L) + powl(1.0L / r1, n1 + 1.0L));
        sum_br2 += logl(powl(r2, n2 - 1.0L) + powl(1.0L / r2, n2 + 1.0L));
        const long double u1 = (powl(r1, n1) - powl(1.0L / r1, n1)) / a1;
        const long double u2 = (powl(r2, n2) - powl(1.0L / r2, n2)) / a2;
        sum_quad += u1 * u1 + u2 * u2 - 2.0L * rho * u1 * u2;
    }
    return nn * logl(n1) + nn * logl(n2) - nn * logl(a1) - nn * logl(a2) - nn * logl(b1) -
           nn * logl(b2) - nn * log2pi - 0.5L * nn * logl(1.0L - rho * rho) + sum_br1 +
           sum_br2 - sum_quad / (2.0L * (1.0L - rho * rho));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    const double cxx = sxx / n - (sx / n) * (sx / n);
    const double cyy = syy / n - (sy / n) * (sy / n);
    const double cxy = sxy / n - (sx / n) * (sy / n);
    return cxy / std::sqrt(cxx * cyy);
}

CliResult run_command(const std::string& command) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("run_command: popen failed");
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, out};
}

}  // namespace oracles
