#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cer/random.hpp"
#include "cer/verify.hpp"

using namespace cer;

namespace {

double binom_pmf(std::uint64_t n, double p, std::uint64_t k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                    k * std::log(p) + (n - k) * std::log1p(-p));
}

double binomial_fit_p_value(std::uint64_t n, double p, std::uint64_t draws, std::uint64_t seed) {
    RngStream s(seed);
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::uint64_t i = 0; i < draws; ++i) {
        const auto k = binomial(s, n, p);
        REQUIRE(k <= n);
        ++counts[k];
    }
    std::vector<double> probs(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) probs[k] = binom_pmf(n, p, k);
    return chi_square_goodness_of_fit(counts, probs).p_value;
}

}  // namespace

TEST_CASE("stream is reproducible and substreams are independent of parent position") {
    RngStream a(42), b(42), c(43);
    std::vector<std::uint64_t> xa, xb;
    for (int i = 0; i < 8; ++i) {
        xa.push_back(a());
        xb.push_back(b());
    }
    CHECK(xa == xb);
    CHECK(c() != xa[0]);

    RngStream fresh(42);
    auto s1 = fresh.substream("shard", 3);
    auto s2 = a.substream("shard", 3);  // a has advanced
    CHECK(s1() == s2());
    CHECK(fresh.substream("shard", 3)() != fresh.substream("shard", 4)());
    CHECK(fresh.substream("x")() != fresh.substream("y")());
}

TEST_CASE("uniform01 range and mean") {
    RngStream s(1);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = uniform01(s);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::fabs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("uniform_below is unbiased over a small range") {
    RngStream s(2);
    std::vector<std::uint64_t> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[uniform_below(s, 7)];
    CHECK(chi_square_uniformity(counts).p_value > 1e-4);
    CHECK_THROWS_AS(uniform_below(s, 0), std::invalid_argument);
}

TEST_CASE("binomial degenerate cases") {
    RngStream s(3);
    CHECK(binomial(s, 0, 0.3) == 0);
    CHECK(binomial(s, 10, 0.0) == 0);
    CHECK(binomial(s, 10, 1.0) == 10);
    CHECK(binomial(s, 1000000, 1.0) == 1000000);
    CHECK_THROWS_AS(binomial(s, 5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(binomial(s, 5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(binomial(s, 5, std::nan("")), std::invalid_argument);
}

TEST_CASE("binomial law, inversion and rejection regimes") {
    // (n, p): small mean, mirrored p, and several BTRD settings
    CHECK(binomial_fit_p_value(100, 0.3, 200000, 11) > 1e-4);  // mean 30, BTRD
    CHECK(binomial_fit_p_value(20, 0.1, 200000, 12) > 1e-4);   // inversion
    CHECK(binomial_fit_p_value(20, 0.93, 200000, 13) > 1e-4);  // mirrored inversion
    CHECK(binomial_fit_p_value(1000, 0.5, 200000, 14) > 1e-4);
    CHECK(binomial_fit_p_value(5000, 0.99, 200000, 15) > 1e-4);
    CHECK(binomial_fit_p_value(61, 0.5, 200000, 16) > 1e-4);  // just over the switch
}

TEST_CASE("binomial mean in the large regime") {
    RngStream s(17);
    const std::uint64_t n = 10000000;
    const double p = 0.0137;
    double sum = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(binomial(s, n, p));
    const double sd = std::sqrt(n * p * (1 - p) / draws);
    CHECK(std::fabs(sum / draws - n * p) < 4.0 * sd);
}

TEST_CASE("multinomial frequencies and validation") {
    RngStream s(4);
    const std::vector<double> w{0.5, 0.5};
    std::map<std::vector<std::uint64_t>, int> seen;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++seen[multinomial(s, 2, w)];
    REQUIRE(seen.size() == 3);
    CHECK(seen[{2, 0}] / double(draws) == doctest::Approx(0.25).epsilon(0.03));
    CHECK(seen[{1, 1}] / double(draws) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(seen[{0, 2}] / double(draws) == doctest::Approx(0.25).epsilon(0.03));

    const std::vector<double> decaying{0.6, 0.3, 0.1, 0.0};
    for (int i = 0; i < 1000; ++i) {
        const auto x = multinomial(s, 17, decaying);
        REQUIRE(x.size() == 4);
        CHECK(x[0] + x[1] + x[2] + x[3] == 17);
        CHECK(x[3] == 0);
    }

    CHECK(multinomial(s, 0, decaying) == std::vector<std::uint64_t>(4, 0));
    const std::vector<double> bad_sum{0.5, 0.4};
    const std::vector<double> negative{1.5, -0.5};
    CHECK_THROWS_AS(multinomial(s, 3, bad_sum), std::invalid_argument);
    CHECK_THROWS_AS(multinomial(s, 3, negative), std::invalid_argument);
}

TEST_CASE("multinomial marginals") {
    RngStream s(5);
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    std::vector<double> sums(4, 0.0);
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) {
        const auto x = multinomial(s, 50, w);
        for (int j = 0; j < 4; ++j) sums[j] += double(x[j]);
    }
    for (int j = 0; j < 4; ++j) {
        const double sd = std::sqrt(50 * w[j] * (1 - w[j]) / draws);
        CHECK(std::fabs(sums[j] / draws - 50 * w[j]) < 4.0 * sd);
    }
}

TEST_CASE("random_permutation is uniform on n = 3") {
    RngStream s(6);
    std::map<std::vector<std::uint32_t>, std::uint64_t> seen;
    for (int i = 0; i < 60000; ++i) {
        auto perm = random_permutation(s, 3);
        ++seen[perm];
    }
    REQUIRE(seen.size() == 6);
    std::vector<std::uint64_t> counts;
    for (auto& [perm, c] : seen) counts.push_back(c);
    CHECK(chi_square_uniformity(counts).p_value > 1e-4);

    auto big = random_permutation(s, 1000);
    std::sort(big.begin(), big.end());
    for (std::uint32_t i = 0; i < 1000; ++i) REQUIRE(big[i] == i + 1);
    CHECK(random_permutation(s, 1) == std::vector<std::uint32_t>{1});
    CHECK_THROWS_AS(random_permutation(s, 0), std::invalid_argument);
}

TEST_CASE("sample_without_replacement") {
    RngStream s(7);
    std::map<std::vector<std::uint64_t>, std::uint64_t> seen;
    for (int i = 0; i < 50000; ++i) {
        const auto x = sample_without_replacement(s, 2, 5);
        REQUIRE(x.size() == 2);
        REQUIRE(x[0] < x[1]);
        REQUIRE(x[0] >= 1);
        REQUIRE(x[1] <= 5);
        ++seen[x];
    }
    REQUIRE(seen.size() == 10);
    std::vector<std::uint64_t> counts;
    for (auto& [k, c] : seen) counts.push_back(c);
    CHECK(chi_square_uniformity(counts).p_value > 1e-4);

    CHECK(sample_without_replacement(s, 0, 9).empty());
    CHECK(sample_without_replacement(s, 4, 4) == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK_THROWS_AS(sample_without_replacement(s, 6, 5), std::invalid_argument);
}

TEST_CASE("geometric_skip law") {
    RngStream s(8);
    const double p = 0.2;
    const int draws = 200000;
    double sum = 0.0;
    int zeros = 0;
    for (int i = 0; i < draws; ++i) {
        const auto k = geometric_skip(s, p);
        sum += double(k);
        zeros += k == 0;
    }
    const double mean = (1 - p) / p;
    CHECK(std::fabs(sum / draws - mean) < 4.0 * std::sqrt((1 - p) / (p * p) / draws));
    CHECK(std::fabs(zeros / double(draws) - p) < 4.0 * std::sqrt(p * (1 - p) / draws));

    CHECK(geometric_skip(s, 1.0) == 0);
    for (int i = 0; i < 100; ++i) CHECK(geometric_skip(s, 1e-300) > 0);
    CHECK_THROWS_AS(geometric_skip(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(geometric_skip(s, 1.1), std::invalid_argument);
}
