#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "nubs/multivariate.hpp"
#include "nubs/normal.hpp"
#include "nubs/univariate.hpp"
#include "tests/oracles.hpp"

using namespace nubs;

namespace {

BivNuBsParams make_biv(double a1, double b1, double n1, double a2, double b2, double n2,
                       double rho) {
    return BivNuBsParams(NuBsParams(a1, b1, n1), NuBsParams(a2, b2, n2), rho);
}

// Latent normal score of a coordinate, used to recover correlations.
double latent_z(double t, const NuBsParams& p) { return xi(t, p).value / p.alpha; }

}  // namespace

TEST_CASE("BivNuBsParams validation") {
    CHECK_THROWS_AS(make_biv(1, 1, 0.5, 1, 1, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_biv(1, 1, 0.5, 1, 1, 0.5, -1.5), std::invalid_argument);
    CHECK_NOTHROW(make_biv(1, 1, 0.5, 1, 1, 0.5, 0.999));
}

TEST_CASE("biv_cdf") {
    SUBCASE("independence at the medians") {
        const auto p = make_biv(0.7, 2.0, 0.5, 1.1, 3.0, 0.8, 0.0);
        CHECK(biv_cdf(2.0, 3.0, p) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("rho = 0 factorizes on a grid") {
        const auto p = make_biv(0.5, 1.0, 0.5, 0.9, 2.0, 1.2, 0.0);
        for (int i = 1; i <= 10; ++i) {
            for (int j = 1; j <= 10; ++j) {
                const double t1 = 0.3 * i;
                const double t2 = 0.55 * j;
                const double product = cdf(t1, p.p1) * cdf(t2, p.p2);
                CHECK(std::fabs(biv_cdf(t1, t2, p) - product) <= 1e-9);
            }
        }
    }
    SUBCASE("marginalizes as the second coordinate grows") {
        const auto p = make_biv(0.5, 1.0, 0.5, 0.9, 2.0, 1.2, 0.65);
        for (double t1 = 0.4; t1 <= 3.0; t1 += 0.4)
            CHECK(std::fabs(biv_cdf(t1, 1e6 * p.p2.beta, p) - cdf(t1, p.p1)) <= 1e-7);
    }
    SUBCASE("rejects nonpositive coordinates") {
        const auto p = make_biv(1, 1, 0.5, 1, 1, 0.5, 0.0);
        CHECK_THROWS_AS(biv_cdf(-1.0, 1.0, p), std::domain_error);
        CHECK_THROWS_AS(biv_cdf(1.0, 0.0, p), std::domain_error);
    }
    SUBCASE("2-increasing on random rectangles") {
        const auto p = make_biv(0.6, 1.0, 0.7, 0.8, 1.5, 0.4, 0.55);
        std::mt19937 gen(5);
        std::uniform_real_distribution<double> unif(0.2, 6.0);
        for (int i = 0; i < 1000; ++i) {
            double a1 = unif(gen), b1 = unif(gen);
            double a2 = unif(gen), b2 = unif(gen);
            if (a1 > b1) std::swap(a1, b1);
            if (a2 > b2) std::swap(a2, b2);
            const double mass = biv_cdf(b1, b2, p) - biv_cdf(a1, b2, p) -
                                biv_cdf(b1, a2, p) + biv_cdf(a1, a2, p);
            CHECK(mass >= -1e-12);
        }
    }
}

TEST_CASE("biv_pdf") {
    SUBCASE("closed form at the medians") {
        const auto p = make_biv(0.7, 2.0, 0.6, 1.1, 3.0, 1.4, 0.5);
        const double expected = 4.0 * 0.6 * 1.4 /
                                (2.0 * M_PI * 0.7 * 1.1 * 2.0 * 3.0 * std::sqrt(1.0 - 0.25));
        CHECK(biv_pdf(2.0, 3.0, p) == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("rho = 0 factorizes") {
        const auto p = make_biv(0.5, 1.0, 0.5, 0.9, 2.0, 1.2, 0.0);
        std::mt19937 gen(9);
        std::uniform_real_distribution<double> unif(0.1, 8.0);
        for (int i = 0; i < 100; ++i) {
            const double t1 = unif(gen), t2 = unif(gen);
            const double product = pdf(t1, p.p1) * pdf(t2, p.p2);
            CHECK(biv_pdf(t1, t2, p) == doctest::Approx(product).epsilon(1e-12));
        }
    }
    SUBCASE("normalizes to one over the 12-set grid") {
        for (double rho : {-0.5, 0.0, 0.5}) {
            for (double n1 : {0.5, 1.0}) {
                for (double n2 : {0.5, 1.0}) {
                    const auto p = make_biv(0.8, 1.0, n1, 0.6, 1.5, n2, rho);
                    const double s1 = std::asinh(8.5 * p.p1.alpha / 2.0) / n1;
                    const double s2 = std::asinh(8.5 * p.p2.alpha / 2.0) / n2;
                    const double total = oracles::integrate2d(
                        [&](double u1, double u2) {
                            const double t1 = p.p1.beta * std::exp(u1);
                            const double t2 = p.p2.beta * std::exp(u2);
                            return biv_pdf(t1, t2, p) * t1 * t2;
                        },
                        -s1, s1, -s2, s2, 1e-8);
                    CHECK(std::fabs(total - 1.0) <= 1e-6);
                }
            }
        }
    }
    SUBCASE("log form matches and stays finite in deep tails") {
        const auto p = make_biv(0.5, 1.0, 0.5, 0.9, 2.0, 1.2, 0.4);
        CHECK(std::exp(biv_log_pdf(1.7, 2.9, p)) ==
              doctest::Approx(biv_pdf(1.7, 2.9, p)).epsilon(1e-15));
        CHECK(std::isfinite(biv_log_pdf(std::exp(200.0), 2.0, p)));
    }
}

TEST_CASE("biv_marginal_pdf") {
    const auto p = make_biv(0.8, 1.2, 0.7, 0.5, 2.2, 1.1, 0.6);
    SUBCASE("median value of margin one") {
        CHECK(biv_marginal_pdf(1, 1.2, p) ==
              doctest::Approx(2.0 * 0.7 / (0.8 * 1.2 * std::sqrt(2.0 * M_PI))).epsilon(1e-13));
    }
    SUBCASE("equals the numeric marginalization of the joint density") {
        const double t1 = 1.4;
        const double s2 = std::asinh(8.5 * p.p2.alpha / 2.0) / p.p2.nu;
        const double integral = oracles::integrate(
            [&](double u) {
                const double t2 = p.p2.beta * std::exp(u);
                return biv_pdf(t1, t2, p) * t2;
            },
            -s2, s2, 1e-10);
        CHECK(std::fabs(integral - biv_marginal_pdf(1, t1, p)) <= 1e-6);
    }
    SUBCASE("does not depend on rho") {
        const auto hi = make_biv(0.8, 1.2, 0.7, 0.5, 2.2, 1.1, 0.9);
        const auto lo = make_biv(0.8, 1.2, 0.7, 0.5, 2.2, 1.1, -0.9);
        for (double t = 0.4; t < 4.0; t += 0.3)
            CHECK(std::fabs(biv_marginal_pdf(1, t, hi) - biv_marginal_pdf(1, t, lo)) <= 1e-12);
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(biv_marginal_pdf(3, 1.0, p), std::invalid_argument);
        CHECK_THROWS_AS(biv_marginal_pdf(1, -1.0, p), std::domain_error);
    }
}

TEST_CASE("Theorem-2 style marginalization at 50 random configurations") {
    std::mt19937 gen(31);
    std::uniform_real_distribution<double> alpha_d(0.3, 1.2);
    std::uniform_real_distribution<double> beta_d(0.5, 3.0);
    std::uniform_real_distribution<double> nu_d(0.3, 1.5);
    std::uniform_real_distribution<double> rho_d(-0.85, 0.85);
    for (int c = 0; c < 50; ++c) {
        const auto p = make_biv(alpha_d(gen), beta_d(gen), nu_d(gen), alpha_d(gen),
                                beta_d(gen), nu_d(gen), rho_d(gen));
        std::uniform_real_distribution<double> t_d(0.5 * p.p1.beta, 2.0 * p.p1.beta);
        const double t1 = t_d(gen);
        const double s2 = std::asinh(8.5 * p.p2.alpha / 2.0) / p.p2.nu;
        const double integral = oracles::integrate(
            [&](double u) {
                const double t2 = p.p2.beta * std::exp(u);
                return biv_pdf(t1, t2, p) * t2;
            },
            -s2, s2, 1e-9);
        CHECK(std::fabs(integral - pdf(t1, p.p1)) <= 1e-6);
    }
}

TEST_CASE("biv_sample") {
    const auto p = make_biv(0.5, 1.0, 0.5, 0.8, 2.0, 0.7, 0.7);
    const std::int64_t n = 100000;
    const SampleMatrix m = biv_sample(p, n, 77);
    REQUIRE(m.rows == n);
    REQUIRE(m.cols == 2);

    SUBCASE("marginal KS for both columns") {
        std::vector<double> c1(n), c2(n);
        for (std::int64_t i = 0; i < n; ++i) {
            c1[i] = m(i, 0);
            c2[i] = m(i, 1);
        }
        const double crit = oracles::ks_critical_value(n, 0.01);
        CHECK(oracles::ks_distance(c1, [&](double t) { return cdf(t, p.p1); }) < crit);
        CHECK(oracles::ks_distance(c2, [&](double t) { return cdf(t, p.p2); }) < crit);
    }
    SUBCASE("latent correlation is recovered") {
        std::vector<double> z1(n), z2(n);
        for (std::int64_t i = 0; i < n; ++i) {
            z1[i] = latent_z(m(i, 0), p.p1);
            z2[i] = latent_z(m(i, 1), p.p2);
        }
        CHECK(std::fabs(oracles::pearson(z1, z2) - 0.7) <= 3.0 / std::sqrt(double(n)));
    }
    SUBCASE("rho = 0 gives uncorrelated latents") {
        const auto q = make_biv(0.5, 1.0, 0.5, 0.8, 2.0, 0.7, 0.0);
        const SampleMatrix m0 = biv_sample(q, n, 78);
        std::vector<double> z1(n), z2(n);
        for (std::int64_t i = 0; i < n; ++i) {
            z1[i] = latent_z(m0(i, 0), q.p1);
            z2[i] = latent_z(m0(i, 1), q.p2);
        }
        CHECK(std::fabs(oracles::pearson(z1, z2)) <= 3.0 / std::sqrt(double(n)));
    }
    SUBCASE("empirical joint cdf tracks biv_cdf on a grid") {
        for (double q1 : {0.2, 0.35, 0.5, 0.65, 0.8}) {
            for (double q2 : {0.2, 0.35, 0.5, 0.65, 0.8}) {
                const double t1 = quantile(q1, p.p1);
                const double t2 = quantile(q2, p.p2);
                std::int64_t hits = 0;
                for (std::int64_t i = 0; i < n; ++i)
                    if (m(i, 0) <= t1 && m(i, 1) <= t2) ++hits;
                const double emp = static_cast<double>(hits) / static_cast<double>(n);
                CHECK(std::fabs(emp - biv_cdf(t1, t2, p)) <= 0.01);
            }
        }
    }
    SUBCASE("deterministic given seed") {
        const SampleMatrix again = biv_sample(p, 100, 123);
        const SampleMatrix again2 = biv_sample(p, 100, 123);
        CHECK(again.data == again2.data);
    }
}

TEST_CASE("biv_reciprocal_params") {
    const auto p = make_biv(1.0, 2.0, 0.5, 1.0, 4.0, 0.5, 0.3);
    SUBCASE("rule for mode both") {
        const auto r = biv_reciprocal_params(ReciprocalMode::Both, p);
        CHECK(r.p1.beta == 0.5);
        CHECK(r.p2.beta == 0.25);
        CHECK(r.p1.nu == 0.5);
        CHECK(r.rho == 0.3);
        const auto rr = biv_reciprocal_params(ReciprocalMode::Both, r);
        CHECK(rr.p1.beta == p.p1.beta);
        CHECK(rr.p2.beta == p.p2.beta);
        CHECK(rr.rho == p.rho);
    }
    SUBCASE("single-coordinate modes flip the latent correlation") {
        const auto rf = biv_reciprocal_params(ReciprocalMode::First, p);
        CHECK(rf.p1.beta == 0.5);
        CHECK(rf.p2.beta == 4.0);
        CHECK(rf.rho == -0.3);
        const auto rs = biv_reciprocal_params(ReciprocalMode::Second, p);
        CHECK(rs.p2.beta == 0.25);
        CHECK(rs.rho == -0.3);
    }
    SUBCASE("sampling confirms the sign: transform (1/t1, t2)") {
        const auto q = make_biv(0.6, 1.5, 0.8, 0.9, 2.5, 0.6, 0.55);
        const auto qr = biv_reciprocal_params(ReciprocalMode::First, q);
        const std::int64_t n = 100000;
        const SampleMatrix m = biv_sample(q, n, 2024);
        std::vector<double> z1(n), z2(n);
        for (std::int64_t i = 0; i < n; ++i) {
            z1[i] = latent_z(1.0 / m(i, 0), qr.p1);
            z2[i] = latent_z(m(i, 1), qr.p2);
        }
        CHECK(std::fabs(oracles::pearson(z1, z2) - qr.rho) <= 3.0 / std::sqrt(double(n)));
        // the transformed margins still pass KS under the new parameters
        const double crit = oracles::ks_critical_value(n, 0.01);
        CHECK(oracles::ks_distance(z1, [](double z) { return std_normal_cdf(z); }) < crit);
    }
}

TEST_CASE("multi_pdf") {
    SUBCASE("closed form at the medians, identity correlation") {
        const MultiNuBsParams p({0.5, 0.8, 1.1}, {1.0, 2.0, 3.0}, 0.7,
                                CorrelationMatrix::identity(3));
        double expected = 1.0;
        for (int i = 0; i < 3; ++i)
            expected *= 2.0 * 0.7 / (p.alphas[i] * p.betas[i] * std::sqrt(2.0 * M_PI));
        const std::vector<double> t = {1.0, 2.0, 3.0};
        CHECK(multi_pdf(t, p) == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("m = 2 equals biv_pdf with shared nu") {
        const double rho = 0.45;
        const MultiNuBsParams p({0.5, 0.8}, {1.0, 2.0}, 0.7,
                                CorrelationMatrix::bivariate(rho));
        const auto q = make_biv(0.5, 1.0, 0.7, 0.8, 2.0, 0.7, rho);
        std::mt19937 gen(17);
        std::uniform_real_distribution<double> unif(0.2, 6.0);
        for (int i = 0; i < 100; ++i) {
            const std::vector<double> t = {unif(gen), unif(gen)};
            CHECK(multi_pdf(t, p) == doctest::Approx(biv_pdf(t[0], t[1], q)).epsilon(1e-12));
        }
    }
    SUBCASE("m = 1 equals the univariate pdf") {
        const MultiNuBsParams p({0.6}, {1.4}, 0.9, CorrelationMatrix::identity(1));
        const NuBsParams u(0.6, 1.4, 0.9);
        for (double t = 0.3; t < 5.0; t += 0.37) {
            const std::vector<double> tv = {t};
            CHECK(multi_pdf(tv, p) == doctest::Approx(pdf(t, u)).epsilon(1e-12));
        }
    }
    SUBCASE("m = 3 identity factorizes into univariate densities") {
        const MultiNuBsParams p({0.5, 0.8, 1.1}, {1.0, 2.0, 3.0}, 0.7,
                                CorrelationMatrix::identity(3));
        std::mt19937 gen(23);
        std::uniform_real_distribution<double> unif(0.3, 7.0);
        for (int i = 0; i < 50; ++i) {
            const std::vector<double> t = {unif(gen), unif(gen), unif(gen)};
            double product = 1.0;
            for (int j = 0; j < 3; ++j)
                product *= pdf(t[j], NuBsParams(p.alphas[j], p.betas[j], p.nu));
            CHECK(multi_pdf(t, p) == doctest::Approx(product).epsilon(1e-12));
        }
    }
    SUBCASE("errors") {
        const MultiNuBsParams p({0.5, 0.8}, {1.0, 2.0}, 0.7, CorrelationMatrix::bivariate(0.2));
        std::vector<double> bad_dim = {1.0, 2.0, 3.0};
        CHECK_THROWS_AS(multi_pdf(bad_dim, p), std::invalid_argument);
        std::vector<double> bad_val = {1.0, -2.0};
        CHECK_THROWS_AS(multi_pdf(bad_val, p), std::domain_error);
        CHECK_THROWS_AS(MultiNuBsParams({0.5}, {1.0, 2.0}, 0.7,
                                        CorrelationMatrix::bivariate(0.2)),
                        std::invalid_argument);
    }
}

TEST_CASE("multi_cdf") {
    SUBCASE("independence at the medians, m = 3") {
        const MultiNuBsParams p({0.5, 0.8, 1.1}, {1.0, 2.0, 3.0}, 0.7,
                                CorrelationMatrix::identity(3));
        const std::vector<double> t = {1.0, 2.0, 3.0};
        const auto [est, se] = multi_cdf(t, p, 200000, 5);
        CHECK(std::fabs(est - 0.125) <= 4.0 * se);
    }
    SUBCASE("m = 1 against the deterministic univariate cdf") {
        const MultiNuBsParams p({0.6}, {1.4}, 0.9, CorrelationMatrix::identity(1));
        const std::vector<double> t = {2.0};
        const auto [est, se] = multi_cdf(t, p, 100000, 6);
        CHECK(std::fabs(est - cdf(2.0, NuBsParams(0.6, 1.4, 0.9))) <= 4.0 * se);
    }
    SUBCASE("m = 2 against the deterministic bivariate cdf") {
        const double rho = -0.35;
        const MultiNuBsParams p({0.5, 0.8}, {1.0, 2.0}, 0.7,
                                CorrelationMatrix::bivariate(rho));
        const auto q = make_biv(0.5, 1.0, 0.7, 0.8, 2.0, 0.7, rho);
        const std::vector<double> t = {1.3, 1.7};
        const auto [est, se] = multi_cdf(t, p, 200000, 7);
        CHECK(std::fabs(est - biv_cdf(1.3, 1.7, q)) <= 4.0 * se);
    }
}

TEST_CASE("multi_sample") {
    const CorrelationMatrix gamma(3, {1.0, 0.5, 0.2, 0.5, 1.0, -0.3, 0.2, -0.3, 1.0});
    const MultiNuBsParams p({0.5, 0.8, 1.1}, {1.0, 2.0, 3.0}, 0.7, gamma);
    const std::int64_t n = 100000;
    const SampleMatrix m = multi_sample(p, n, 99);
    REQUIRE(m.rows == n);
    REQUIRE(m.cols == 3);

    SUBCASE("each margin passes KS") {
        const double crit = oracles::ks_critical_value(n, 0.01);
        for (int j = 0; j < 3; ++j) {
            std::vector<double> col(n);
            for (std::int64_t i = 0; i < n; ++i) col[i] = m(i, j);
            const NuBsParams mp(p.alphas[j], p.betas[j], p.nu);
            CHECK(oracles::ks_distance(col, [&](double t) { return cdf(t, mp); }) < crit);
        }
    }
    SUBCASE("latent correlation matrix is recovered entrywise") {
        std::vector<std::vector<double>> z(3, std::vector<double>(n));
        for (int j = 0; j < 3; ++j) {
            const NuBsParams mp(p.alphas[j], p.betas[j], p.nu);
            for (std::int64_t i = 0; i < n; ++i) z[j][i] = latent_z(m(i, j), mp);
        }
        const double tol = 3.0 / std::sqrt(static_cast<double>(n));
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                CHECK(std::fabs(oracles::pearson(z[a], z[b]) - gamma(a, b)) <= tol);
    }
    SUBCASE("identity correlation gives uncorrelated latents") {
        const MultiNuBsParams q({0.5, 0.8, 1.1}, {1.0, 2.0, 3.0}, 0.7,
                                CorrelationMatrix::identity(3));
        const SampleMatrix mi = multi_sample(q, n, 101);
        std::vector<std::vector<double>> z(3, std::vector<double>(n));
        for (int j = 0; j < 3; ++j) {
            const NuBsParams mp(q.alphas[j], q.betas[j], q.nu);
            for (std::int64_t i = 0; i < n; ++i) z[j][i] = latent_z(mi(i, j), mp);
        }
        const double tol = 3.0 / std::sqrt(static_cast<double>(n));
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                CHECK(std::fabs(oracles::pearson(z[a], z[b])) <= tol);
    }
}
