#include "cer/analytic.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace cer {
namespace {

constexpr double kZetaSeriesCutoff = 1e-8;

double zeta_derivative(double c) {
    if (c < 1e-4) return c / 3.0;
    const double half = 0.5 * c;
    const double sh = std::sinh(half);
    return 1.0 / std::tanh(half) - half / (sh * sh);
}

}  // namespace

double zeta(double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("zeta: c must be nonnegative");
    if (c < kZetaSeriesCutoff) return 2.0 + c * c / 6.0;
    return c / std::tanh(0.5 * c);
}

double solve_c_for_mean_degree(double d) {
    if (!(d >= 2.0)) {
        throw std::invalid_argument("solve_c_for_mean_degree: mean degree " + std::to_string(d) +
                                    " is below 2");
    }
    if (!std::isfinite(d)) throw std::invalid_argument("solve_c_for_mean_degree: d is not finite");
    if (d <= 2.0 + 1e-12) return 0.0;

    // zeta(c) > c, so the root lies in (0, d).
    double lo = 0.0, hi = d;
    double c = d < 3.0 ? std::sqrt(6.0 * (d - 2.0)) : d - 2.0 * d * std::exp(-d);
    if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
    const double tol = 1e-12 * d;
    for (int iter = 0; iter < 200; ++iter) {
        const double f = zeta(c) - d;
        if (std::fabs(f) <= tol) return c;
        if (f > 0.0) hi = c; else lo = c;
        const double step = f / zeta_derivative(c);
        double next = c - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == c) break;
        c = next;
    }
    return c;
}

DegreeLaw::DegreeLaw(double c_) : c(c_) {
    if (!(c_ > 0.0)) throw std::invalid_argument("DegreeLaw: c must be positive");
    gamma = c_ / -std::expm1(-c_);
}

std::uint32_t DegreeLaw::truncation() const {
    auto log_pmf = [&](double k) { return k * std::log(gamma) - gamma - std::lgamma(k + 1.0); };
    for (std::uint32_t k = static_cast<std::uint32_t>(std::ceil(gamma));; ++k) {
        double tail = 0.0;
        for (std::uint32_t j = k + 1;; ++j) {
            const double term = std::exp(log_pmf(j));
            tail += term;
            if (term < 1e-30 && j > gamma) break;
        }
        if (tail < 1e-15) return k;
    }
}

double degree_pmf(const DegreeLaw& law, std::uint32_t k) {
    if (k == 0) return 0.0;
    const double kd = static_cast<double>(k);
    const double poisson = std::exp(kd * std::log(law.gamma) - law.gamma - std::lgamma(kd + 1.0));
    return poisson * std::expm1(-law.c * kd) / std::expm1(-law.c);
}

namespace {

// Rounding errors in small P_k are amplified by the binomial weights, so the
// digits needed grow as P_n shrinks; callers raise the precision until two
// levels agree.
template <unsigned Digits>
boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>> connectivity_recursion(
    std::uint32_t n, double p) {
    using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;

    // q^e for every exponent k(m-k) the recursion needs.
    const std::size_t max_exp = static_cast<std::size_t>(n / 2) * (n - n / 2);
    const Real q = Real(1) - Real(p);
    std::vector<Real> q_pow(max_exp + 1);
    q_pow[0] = 1;
    for (std::size_t e = 1; e <= max_exp; ++e) q_pow[e] = q_pow[e - 1] * q;

    std::vector<Real> connected(n + 1);
    connected[1] = 1;
    for (std::uint32_t m = 2; m <= n; ++m) {
        Real disconnected = 0;
        Real binom = 1;  // C(m-1, k-1)
        for (std::uint32_t k = 1; k < m; ++k) {
            disconnected += binom * connected[k] * q_pow[static_cast<std::size_t>(k) * (m - k)];
            binom = binom * (m - k) / k;
        }
        connected[m] = Real(1) - disconnected;
    }
    return connected[n];
}

}  // namespace

double connectivity_probability_exact(std::uint32_t n, double p) {
    if (n == 0) throw std::invalid_argument("connectivity_probability_exact: n must be positive");
    if (n > kConnectivityOracleMaxN) {
        throw std::invalid_argument("connectivity_probability_exact: n = " + std::to_string(n) +
                                    " exceeds oracle scale " +
                                    std::to_string(kConnectivityOracleMaxN));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("connectivity_probability_exact: p must lie in [0,1]");
    }
    if (n == 1 || p == 1.0) return 1.0;
    if (p == 0.0) return 0.0;

    // Values that underflow double come out as 0 at every level and agree.
    using Level = double (*)(std::uint32_t, double);
    constexpr std::array<Level, 5> levels{
        [](std::uint32_t m, double x) { return static_cast<double>(connectivity_recursion<100>(m, x)); },
        [](std::uint32_t m, double x) { return static_cast<double>(connectivity_recursion<200>(m, x)); },
        [](std::uint32_t m, double x) { return static_cast<double>(connectivity_recursion<400>(m, x)); },
        [](std::uint32_t m, double x) { return static_cast<double>(connectivity_recursion<800>(m, x)); },
        [](std::uint32_t m, double x) { return static_cast<double>(connectivity_recursion<1600>(m, x)); },
    };
    double prev = levels[0](n, p);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const double cur = levels[i](n, p);
        if (prev >= 0.0 && cur >= 0.0 && std::fabs(prev - cur) <= 1e-13 * cur) return cur;
        prev = cur;
    }
    throw std::domain_error("connectivity_probability_exact: no stable value at n = " +
                            std::to_string(n) + ", p = " + std::to_string(p));
}

double connectivity_probability_asymptotic(std::uint32_t n, double c) {
    if (n < 2) throw std::invalid_argument("connectivity_probability_asymptotic: n must be >= 2");
    if (!(c > 0.0)) throw std::invalid_argument("connectivity_probability_asymptotic: c must be > 0");
    const double nd = static_cast<double>(n);
    const double component = 1.0 - c / std::expm1(c);
    const double isolated_free =
        c < nd ? -std::expm1(nd * std::log1p(-c / nd)) : 1.0 - std::pow(1.0 - c / nd, nd);
    return component * std::pow(isolated_free, nd);
}

}  // namespace cer
