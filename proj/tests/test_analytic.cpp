#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "cer/analytic.hpp"

using namespace cer;

TEST_CASE("zeta values") {
    CHECK(zeta(0.0) == 2.0);
    CHECK(zeta(1e-10) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(zeta(2.0) == doctest::Approx(2.626068).epsilon(1e-6));
    CHECK(zeta(10.0) == doctest::Approx(10.000908).epsilon(1e-7));
    CHECK(zeta(1e-3) == doctest::Approx(2.0 + 1e-6 / 6.0).epsilon(1e-13));
    CHECK_THROWS_AS(zeta(-0.1), std::invalid_argument);
}

TEST_CASE("zeta is increasing and exceeds c") {
    double prev = zeta(0.0);
    for (double c = 0.01; c < 30.0; c += 0.01) {
        const double z = zeta(c);
        REQUIRE(z > prev);
        REQUIRE(z > c);
        prev = z;
    }
}

TEST_CASE("inverse mean degree") {
    CHECK(solve_c_for_mean_degree(2.0) == 0.0);
    CHECK(solve_c_for_mean_degree(2.626068) == doctest::Approx(2.0).epsilon(1e-5));  // input rounded to 6 places
    CHECK(solve_c_for_mean_degree(10.000908) == doctest::Approx(10.0).epsilon(1e-6));
    for (double d = 2.0001; d <= 50.0; d *= 1.07) {
        const double c = solve_c_for_mean_degree(d);
        REQUIRE(c > 0.0);
        REQUIRE(std::fabs(zeta(c) - d) <= 1e-12 * d);
    }
    CHECK_THROWS_AS(solve_c_for_mean_degree(1.99), std::invalid_argument);
    CHECK_THROWS_AS(solve_c_for_mean_degree(INFINITY), std::invalid_argument);
}

TEST_CASE("degree law normalization and mean") {
    for (double c : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 30.0}) {
        const DegreeLaw law(c);
        CHECK(law.gamma == doctest::Approx(c / (1 - std::exp(-c))));
        CHECK(degree_pmf(law, 0) == 0.0);
        double mass = 0.0, mean = 0.0;
        for (std::uint32_t k = 1; k <= law.truncation(); ++k) {
            const double pk = degree_pmf(law, k);
            REQUIRE(pk >= 0.0);
            mass += pk;
            mean += k * pk;
        }
        CHECK(std::fabs(mass - 1.0) < 1e-12);
        CHECK(std::fabs(mean - zeta(c)) < 1e-9);
    }
    CHECK_THROWS_AS(DegreeLaw(0.0), std::invalid_argument);
}

TEST_CASE("exact connection probability") {
    CHECK(connectivity_probability_exact(1, 0.3) == 1.0);
    CHECK(connectivity_probability_exact(2, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(connectivity_probability_exact(3, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(connectivity_probability_exact(4, 0.5) == doctest::Approx(19.0 / 32.0).epsilon(1e-15));
    CHECK(connectivity_probability_exact(5, 0.5) == doctest::Approx(91.0 / 128.0).epsilon(1e-15));
    CHECK(connectivity_probability_exact(6, 0.5) == doctest::Approx(1669.0 / 2048.0).epsilon(1e-15));
    CHECK(connectivity_probability_exact(10, 0.0) == 0.0);
    CHECK(connectivity_probability_exact(10, 1.0) == 1.0);

    // tiny probabilities need the extended precision; trees dominate there
    const double tiny = connectivity_probability_exact(30, 1e-4);
    const double trees = std::pow(30.0, 28) * std::pow(1e-4, 29) * std::pow(1 - 1e-4, 435 - 29);
    CHECK(tiny == doctest::Approx(trees).epsilon(0.03));

    // 400-digit reference; far below the reach of 100 digits
    CHECK(connectivity_probability_exact(300, 0.5 / 300) == doctest::Approx(7.7352e-123).epsilon(1e-4));
    CHECK(connectivity_probability_exact(400, 1e-4) == 0.0);  // underflows double

    for (int n : {50, 200, 400}) {
        const auto t = oracle::connectivity_table(n, 3.0 / n);
        CHECK(connectivity_probability_exact(n, 3.0 / n) ==
              doctest::Approx(static_cast<double>(t.value[n])).epsilon(1e-12));
    }
    CHECK_THROWS_AS(connectivity_probability_exact(kConnectivityOracleMaxN + 1, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(connectivity_probability_exact(5, 1.2), std::invalid_argument);
}

TEST_CASE("asymptotic connection probability") {
    const double exact = connectivity_probability_exact(300, 0.01);
    const double approx = connectivity_probability_asymptotic(300, 3.0);
    CHECK(approx / exact > 0.9);
    CHECK(approx / exact < 1.1);
    CHECK(connectivity_probability_asymptotic(100, 1.0) < 1e-2);
    CHECK(connectivity_probability_asymptotic(100, 20.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS(connectivity_probability_asymptotic(1, 1.0), std::invalid_argument);
}

TEST_CASE("oracle cross-checks against brute force") {
    // mean degree 207/91 and deg(1) law (19, 36, 28, 8)/91 at n = 5, p = 1/2
    CHECK(oracle::mean_degree(5, 0.5) == doctest::Approx(207.0 / 91.0).epsilon(1e-12));
    const auto law = oracle::degree_law(5, 0.5, 4);
    CHECK(law[0] == doctest::Approx(0.0));
    CHECK(law[1] == doctest::Approx(19.0 / 91.0).epsilon(1e-12));
    CHECK(law[2] == doctest::Approx(36.0 / 91.0).epsilon(1e-12));
    CHECK(law[3] == doctest::Approx(28.0 / 91.0).epsilon(1e-12));
    CHECK(law[4] == doctest::Approx(8.0 / 91.0).epsilon(1e-12));
    CHECK(oracle::mean_degree(6, 0.5) == doctest::Approx(8925.0 / 3338.0).epsilon(1e-12));
    // 400-digit reference values at n = 300; P_300 is ~1e-122 at c = 0.5
    CHECK(oracle::mean_degree(300, 0.5 / 300) == doctest::Approx(2.044948958).epsilon(1e-9));
    CHECK(oracle::mean_degree(300, 1.0 / 300) == doctest::Approx(2.163157456).epsilon(1e-9));
    CHECK(oracle::mean_degree(300, 2.0 / 300) == doctest::Approx(2.618589299).epsilon(1e-9));
    CHECK(oracle::mean_degree(300, 3.0 / 300) == doctest::Approx(3.302091266).epsilon(1e-9));
    CHECK(oracle::mean_degree(300, 5.0 / 300) == doctest::Approx(5.049272915).epsilon(1e-9));
}
