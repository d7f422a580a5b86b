#include "nubs/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nubs {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kInvSqrt2 = 0.7071067811865475244;

}  // namespace

double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double std_normal_cdf(double z) {
    if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("std_normal_quantile: p must lie in (0,1)");

    // Acklam (2003) rational approximation, three regions.
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the erfc-based cdf. Skipped in the far tails
    // where exp(x^2/2) would overflow; there the cdf is flat enough that the
    // raw approximation already meets the round-trip contract.
    if (0.5 * x * x < 700.0) {
        const double e = std_normal_cdf(x) - p;
        const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

namespace {

// Gauss-Legendre half-rules used by the Drezner-Genz reduction.
const double kGlX6[3] = {-0.9324695142031522, -0.6612093864662647, -0.2386191860831970};
const double kGlW6[3] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
const double kGlX12[6] = {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
                          -0.5873179542866171, -0.3678314989981802, -0.1252334085114692};
const double kGlW12[6] = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
                          0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
const double kGlX20[10] = {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
                           -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
                           -0.5108670019508271, -0.3737060887154196, -0.2277858511416451,
                           -0.0765265211334973};
const double kGlW20[10] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
                           0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                           0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
                           0.1527533871307259};

// Upper-quadrant probability P(X > dh, Y > dk) for standard bivariate
// normal with correlation r, |r| < 1. Port of the BVND algorithm of
// Drezner & Genz; the |r| >= 0.925 branch integrates the complement of a
// Taylor expansion around r = 1 for numerical stability.
double bvn_upper(double dh, double dk, double r) {
    constexpr double kTwoPi = 6.283185307179586477;
    const double* x;
    const double* w;
    int lg;
    const double ar = std::fabs(r);
    if (ar < 0.3) {
        x = kGlX6, w = kGlW6, lg = 3;
    } else if (ar < 0.75) {
        x = kGlX12, w = kGlW12, lg = 6;
    } else {
        x = kGlX20, w = kGlW20, lg = 10;
    }

    double h = dh;
    double k = dk;
    double hk = h * k;
    double bvn = 0.0;

    if (ar < 0.925) {
        if (ar > 0.0) {
            const double hs = 0.5 * (h * h + k * k);
            const double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    const double sn = std::sin(asr * (is * x[i] + 1.0) * 0.5);
                    bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn *= asr / (2.0 * kTwoPi);
        }
        bvn += std_normal_cdf(-h) * std_normal_cdf(-k);
    } else {
        if (r < 0.0) {
            k = -k;
            hk = -hk;
        }
        const double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        const double bs = (h - k) * (h - k);
        const double cc = (4.0 - hk) / 8.0;
        const double dd = (12.0 - hk) / 16.0;
        double asr = -0.5 * (bs / as + hk);
        if (asr > -100.0)
            bvn = a * std::exp(asr) *
                  (1.0 - cc * (bs - as) * (1.0 - dd * bs / 5.0) / 3.0 + cc * dd * as * as / 5.0);
        if (-hk < 100.0) {
            const double bb = std::sqrt(bs);
            bvn -= std::exp(-0.5 * hk) * kSqrt2Pi * std_normal_cdf(-bb / a) * bb *
                   (1.0 - cc * bs * (1.0 - dd * bs / 5.0) / 3.0);
        }
        a *= 0.5;
        for (int i = 0; i < lg; ++i) {
            for (int is = -1; is <= 1; is += 2) {
                const double xs = a * (is * x[i] + 1.0) * a * (is * x[i] + 1.0);
                const double rs = std::sqrt(1.0 - xs);
                asr = -0.5 * (bs / xs + hk);
                if (asr > -100.0)
                    bvn += a * w[i] * std::exp(asr) *
                           (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                            (1.0 + cc * xs * (1.0 + dd * xs)));
            }
        }
        bvn = -bvn / kTwoPi;
        if (r > 0.0) {
            bvn += std_normal_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) bvn += std_normal_cdf(k) - std_normal_cdf(h);
        }
    }
    return bvn;
}

}  // namespace

double biv_normal_cdf(double u, double v, double rho) {
    if (!(std::fabs(rho) < 1.0))
        throw std::domain_error("biv_normal_cdf: |rho| must be < 1");
    if (std::isnan(u) || std::isnan(v))
        throw std::domain_error("biv_normal_cdf: NaN argument");
    if (std::isinf(u) || std::isinf(v)) {
        if ((std::isinf(u) && u < 0.0) || (std::isinf(v) && v < 0.0)) return 0.0;
        if (std::isinf(u) && std::isinf(v)) return 1.0;
        return std::isinf(u) ? std_normal_cdf(v) : std_normal_cdf(u);
    }
    const double p = bvn_upper(-u, -v, rho);
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace nubs
