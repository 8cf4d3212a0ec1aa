#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "indicatrix/errors.hpp"
#include "indicatrix/modulus.hpp"
#include "indicatrix/quadrature.hpp"
#include "indicatrix/rng.hpp"
#include "oracles.hpp"

using namespace indicatrix;
using namespace indicatrix::moduli;

TEST_CASE("modulus evaluation") {
    CHECK(eval_modulus(Modulus::power(1.0), 0.0) == 0.0);
    CHECK(eval_modulus(Modulus::power(0.5), 0.25) == doctest::Approx(0.5).epsilon(1e-14));

    Modulus t = Modulus::table({{0.0, 0.0}, {1.0, 1.0}});
    CHECK(eval_modulus(t, 0.5) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(eval_modulus(Modulus::power(0.5), 1.5), std::domain_error);
    CHECK_THROWS_AS(eval_modulus(Modulus::power(0.5), -0.1), std::domain_error);
    CHECK_THROWS_AS(Modulus::table({{0.0, 0.0}, {0.5, 0.4}, {1.0, 0.2}}), InvariantViolation);
}

TEST_CASE("doubling flag") {
    CHECK(Modulus::power(0.5).doubling());
    CHECK(Modulus::power(0.99).doubling());
    CHECK_FALSE(Modulus::power(1.0).doubling()); // w(2d) = 2 w(d) exactly
}

TEST_CASE("chi inverse closed forms") {
    // w = power(1): chi(d) = d^2
    ChiMap c1(Modulus::power(1.0));
    CHECK(c1.inverse(0.25) == doctest::Approx(0.5).epsilon(1e-9));
    // w = power(0.5): chi(d) = d^1.5
    ChiMap c2(Modulus::power(0.5));
    CHECK(c2.inverse(0.125) == doctest::Approx(std::pow(0.125, 2.0 / 3.0)).epsilon(1e-9));
    // Table-based round trip.
    ChiMap c3(Modulus::table({{0.0, 0.0}, {0.2, 0.3}, {1.0, 0.9}}));
    CHECK(c3.inverse(c3.chi(0.3)) == doctest::Approx(0.3).epsilon(1e-8));

    CHECK_THROWS_AS(c1.inverse(2.0), std::out_of_range);
    CHECK_THROWS_AS(c1.inverse(0.0), std::out_of_range);
}

TEST_CASE("chi inverse round trip on random deltas") {
    SplitMix64 rng(20240811);
    ChiMap maps[] = {ChiMap(Modulus::power(0.25)), ChiMap(Modulus::power(0.5)),
                     ChiMap(Modulus::table({{0.0, 0.0}, {0.1, 0.05}, {0.5, 0.3}, {1.0, 0.8}}))};
    for (const ChiMap& c : maps) {
        for (int i = 0; i < 100; ++i) {
            double d = 1e-6 + (1.0 - 1e-6) * rng.next_double();
            double back = c.inverse(c.chi(d));
            CHECK(std::abs(back - d) <= 1e-8 * d);
        }
    }
}

TEST_CASE("theorem 2 integral against the closed-form power oracle") {
    // n=2, alpha=1, p=1.5: integrand d^{-1/2}, eps->0 limit 2.
    Modulus w1 = Modulus::power(1.0);
    double lim = oracles::power_integral(2, 1.0, 1.5, 0.0);
    CHECK(lim == doctest::Approx(2.0));
    CHECK(theorem2_integral(w1, 2, 1.5, 1e-8) ==
          doctest::Approx(oracles::power_integral(2, 1.0, 1.5, 1e-8)).epsilon(1e-8));

    // p = 4/3 is critical: integrand exactly 1/d, J(2^-k) = k log 2.
    for (int k : {10, 20}) {
        double eps = std::ldexp(1.0, -k);
        CHECK(theorem2_integral(w1, 2, 4.0 / 3.0, eps) ==
              doctest::Approx(k * std::log(2.0)).epsilon(1e-9));
    }

    // p = 1.2: exponent -1.4, deep in the divergent regime.
    double j = theorem2_integral(w1, 2, 1.2, 1e-6);
    CHECK(j == doctest::Approx(oracles::power_integral(2, 1.0, 1.2, 1e-6)).epsilon(1e-8));
    CHECK(j > 500.0);

    // Modulus vanishing inside the range is singular.
    Modulus flat = Modulus::table({{0.0, 0.0}, {0.5, 0.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(theorem2_integral(flat, 2, 1.5, 1e-4), InvariantViolation);
}

TEST_CASE("lemma 2 dual integral") {
    // w = power(1), n=2, p=1.5: integrand lambda^{-1.25}, I(inf) = 4.
    ChiMap c(Modulus::power(1.0));
    double lambda_max = 1e8;
    double expect = 4.0 * (1.0 - std::pow(lambda_max, -0.25));
    CHECK(lemma2_dual_integral(c, 2, 1.5, lambda_max) == doctest::Approx(expect).epsilon(1e-8));
    CHECK(std::abs(lemma2_dual_integral(c, 2, 1.5, 1e12) - 4.0) <
          4.0 * std::pow(1e12, -0.25) * 1.01);

    // p close to 2 stays finite and matches the closed form.
    double lm = 1e6;
    double got = lemma2_dual_integral(c, 2, 1.9, lm);
    // integrand: lambda^{-0.9} (lambda^{-1/2})^{1.9} = lambda^{-1.85}
    double closed = (1.0 - std::pow(lm, -0.85)) / 0.85;
    CHECK(got == doctest::Approx(closed).epsilon(1e-8));

    CHECK_THROWS_AS(lemma2_dual_integral(c, 2, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("identity (6) across the test matrix") {
    // I(eps) - (n-1)p/(n-p) J(eps) = (1/(n-p)) (eps^{n(p-1)}/w(eps)^{n-p} - 1/w(1)^{n-p})
    for (double alpha : {0.25, 0.5, 1.0}) {
        Modulus w = Modulus::power(alpha);
        ChiMap c(w);
        for (int n : {2, 3}) {
            for (double p : {1.1, 1.3, 1.7}) {
                const double eps = 1e-2;
                double big_i = lemma2_dual_integral(c, n, p, 1.0 / c.chi(eps));
                double big_j = theorem2_integral(w, n, p, eps);
                double lhs = big_i - (n - 1.0) * p / (n - p) * big_j;
                double rhs = (std::pow(eps, n * (p - 1.0)) / std::pow(w(eps), n - p) -
                              1.0 / std::pow(w(1.0), n - p)) /
                             (n - p);
                CHECK(std::abs(lhs - rhs) <=
                      1e-6 * std::max({std::abs(lhs), std::abs(rhs), 1e-30}));
            }
        }
    }
}

TEST_CASE("critical exponent of power moduli") {
    CHECK(critical_exponent_power(2, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(critical_exponent_power(2, 0.5) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(critical_exponent_power(3, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("divergence classification flips at the critical exponent") {
    for (int n : {2, 3}) {
        for (double alpha : {0.25, 0.5, 1.0}) {
            Modulus w = Modulus::power(alpha);
            double ps = critical_exponent_power(n, alpha);
            CHECK(theorem2_divergence(w, n, ps - 1e-3) == IntegralVerdict::Diverges);
            CHECK(theorem2_divergence(w, n, ps + 1e-3) == IntegralVerdict::Converges);
            CHECK(theorem2_divergence(w, n, ps) == IntegralVerdict::Diverges);
        }
    }
    // The truncation-growth heuristic on a table kind, far from critical.
    Modulus t = Modulus::table(
        {{0.0, 0.0}, {0.25, 0.5}, {0.5, std::sqrt(0.5)}, {0.75, std::sqrt(0.75)}, {1.0, 1.0}});
    CHECK(theorem2_divergence(t, 2, 1.05) == IntegralVerdict::Diverges);
    CHECK(theorem2_divergence(t, 2, 1.7) == IntegralVerdict::Converges);
}

TEST_CASE("theta_p growth and bounds") {
    ChiMap c(Modulus::power(1.0));
    const double p = 4.0 / 3.0;

    // Slope ~ 1/4 over y in [1e2, 1e4].
    std::vector<double> lx, ly;
    for (double y : {1e2, 3e2, 1e3, 3e3, 1e4}) {
        lx.push_back(std::log(y));
        ly.push_back(std::log(theta_p(c, p, y)));
    }
    LineFit fit = fit_line(lx, ly);
    CHECK(fit.slope == doctest::Approx(0.25).epsilon(0.08));

    // y -> 1+ gives an empty integral.
    CHECK(theta_p(c, p, 1.0 + 1e-12) < 1e-3);

    // Monotone in y and dominated by the crude bound.
    double prev = 0.0;
    for (double y : {2.0, 5.0, 20.0, 100.0}) {
        double v = theta_p(c, p, y);
        CHECK(v >= prev);
        prev = v;
        CHECK(v <= std::pow(y - 1.0, 1.0 / p) * c.inverse(1.0) * (1.0 + 1e-9));
    }
}

TEST_CASE("condition (7) matches the Theta integral criterion numerically") {
    // w = power(0.5), p = 1.3: both sides converge.
    Modulus w = Modulus::power(0.5);
    ChiMap c(w);
    const double p = 1.3;
    CHECK(theorem2_divergence(w, 2, p) == IntegralVerdict::Converges);

    // Closed-form oracle for the (13)-integrand with a power modulus:
    // Theta_p^p = (lam^{1 - p/(1+a)} - 1)/(1 - p/(1+a)), so the integrand is
    // lam^{-p} times that; its limit exponent -p + 1 - p/(1+a) = -7/6 < -1.
    const double alpha = 0.5;
    const double growth = 1.0 - p / (1.0 + alpha);
    CHECK(-p + growth < -1.0);
    auto f = [&](double lam) { return std::pow(lam, -p) * std::pow(theta_p(c, p, lam), p); };
    for (double lam : {1e2, 1e3, 1e4, 1e5}) {
        double closed = std::pow(lam, -p) * (std::pow(lam, growth) - 1.0) / growth;
        CHECK(f(lam) == doctest::Approx(closed).epsilon(1e-8));
    }
    // Paper's partial-integration inequality (13).
    double lhs_int = composite_gauss_log(f, 1.0 + 1e-9, 1e5, 4, 8);
    auto rhs = [&](double lam) {
        return std::pow(lam, 1.0 - p) * std::pow(c.inverse(1.0 / lam), p);
    };
    double bound = composite_gauss_log(rhs, 1.0 + 1e-9, 1e5, 4, 8) / (p - 1.0);
    CHECK(lhs_int <= bound * (1.0 + 1e-6));
}

TEST_CASE("regularized modulus") {
    // power(0.5): w*(d) = d/(1+d) + sqrt(d); ratio w*/w bounded by 2 on (0,1].
    Modulus w = Modulus::power(0.5);
    Modulus star = regularize_modulus(w);
    for (double d : {1e-6, 1e-3, 0.1, 0.5, 1.0}) {
        double expect = d / (1.0 + d) + std::sqrt(d);
        CHECK(star(d) == doctest::Approx(expect).epsilon(1e-6));
        CHECK(star(d) / w(d) <= 2.0 + 1e-9);
    }

    // Lipschitz case: w*(d) = d/(1+d) + d <= 2d.
    Modulus lip = regularize_modulus(Modulus::power(1.0));
    for (double d : {1e-4, 0.3, 1.0}) {
        CHECK(lip(d) == doctest::Approx(d / (1.0 + d) + d).epsilon(1e-9));
        CHECK(lip(d) <= 2.0 * d * (1.0 + 1e-12));
    }

    // Strict doubling on the dyadic grid, incl. the Lipschitz input.
    for (const Modulus* m : {&star, &lip}) {
        for (int k = 1; k <= 20; ++k) {
            double d = std::ldexp(1.0, -k);
            CHECK((*m)(2.0 * d) < 2.0 * (*m)(d));
        }
        CHECK(m->doubling());
    }
}

TEST_CASE("modulus json round trip") {
    Modulus w = Modulus::power_log(0.5, -1.0);
    Modulus back = Modulus::from_json(w.to_json());
    CHECK(back(0.3) == doctest::Approx(w(0.3)).epsilon(1e-15));
    CHECK_THROWS_AS(Modulus::from_json(nlohmann::json{{"kind", "nope"}}), ConfigError);
}
