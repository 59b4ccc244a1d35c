#include "cer/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cer {
namespace {

double log_poisson_pmf(double lambda, std::uint64_t k) {
    if (lambda == 0.0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    const double kd = static_cast<double>(k);
    return kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0);
}

// Walk check that stops at the first negative prefix.
bool stays_nonnegative(const std::vector<std::uint64_t>& steps) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
        s += static_cast<std::int64_t>(steps[k]) - 1;
        if (s < 0) return false;
    }
    return true;
}

Trajectory to_trajectory(const std::vector<std::uint64_t>& counts) {
    std::vector<std::uint32_t> steps(counts.begin(), counts.end());
    return Trajectory::from_steps(std::move(steps));
}

Trajectory single_vertex() { return Trajectory::from_steps({0}); }

Trajectory star(std::uint32_t n) {
    std::vector<std::uint32_t> steps(n, 0);
    steps[0] = n - 1;
    return Trajectory::from_steps(std::move(steps));
}

std::uint64_t candidate_pairs(const Trajectory& t) {
    std::uint64_t total = 0;
    for (std::size_t i = 1; i + 1 < t.walk.size(); ++i) {
        total += static_cast<std::uint64_t>(t.walk[i]);
    }
    return total;
}

}  // namespace

std::vector<double> IntensityVector::weights() const {
    std::vector<double> w(lambdas.size());
    const double inv_n = 1.0 / static_cast<double>(n);
    std::transform(lambdas.begin(), lambdas.end(), w.begin(), [&](double l) { return l * inv_n; });
    return w;
}

IntensityVector compute_intensities(std::uint32_t n, double p) {
    if (n == 0) throw std::invalid_argument("compute_intensities: n must be at least 1");
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("compute_intensities: p must lie in (0,1], got " +
                                    std::to_string(p));
    }
    IntensityVector iv{n, p, std::vector<double>(n, 0.0)};
    if (p == 1.0) {
        iv.lambdas[0] = static_cast<double>(n);
        return iv;
    }
    const double log_q = std::log1p(-p);
    const double scale = static_cast<double>(n) * p / -std::expm1(static_cast<double>(n) * log_q);
    for (std::uint32_t i = 0; i < n; ++i) {
        iv.lambdas[i] = scale * std::exp(static_cast<double>(i) * log_q);
    }
    return iv;
}

IntensityVector uniform_intensities(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("uniform_intensities: n must be at least 1");
    return IntensityVector{n, 0.0, std::vector<double>(n, 1.0)};
}

Trajectory Trajectory::from_steps(std::vector<std::uint32_t> steps) {
    Trajectory t;
    t.walk.resize(steps.size() + 1);
    t.walk[0] = 0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        t.walk[k + 1] = t.walk[k] + static_cast<std::int64_t>(steps[k]) - 1;
    }
    t.steps = std::move(steps);
    return t;
}

bool Trajectory::is_valid() const {
    const std::size_t n = steps.size();
    if (n == 0 || walk.size() != n + 1 || walk[0] != 0 || walk[n] != -1) return false;
    for (std::size_t k = 1; k <= n; ++k) {
        if (walk[k] != walk[k - 1] + static_cast<std::int64_t>(steps[k - 1]) - 1) return false;
        if (k < n && walk[k] < 0) return false;
    }
    return true;
}

TrajectorySample sample_trajectory_gnp(RngStream& stream, const IntensityVector& intensities) {
    const std::uint32_t n = intensities.n;
    if (n == 0 || intensities.lambdas.size() != n) {
        throw std::invalid_argument("sample_trajectory_gnp: malformed intensity vector");
    }
    if (n == 1) return {single_vertex(), 0};
    if (intensities.p == 1.0) return {star(n), 0};

    const std::vector<double> weights = intensities.weights();
    TrajectorySample out;
    for (;;) {
        auto counts = multinomial(stream, n - 1, weights);
        if (stays_nonnegative(counts)) {
            out.trajectory = to_trajectory(counts);
            return out;
        }
        ++out.restarts;
    }
}

TrajectorySample sample_trajectory_gnm(RngStream& stream, const IntensityVector& intensities,
                                       std::uint64_t edges) {
    const std::uint32_t n = intensities.n;
    if (n == 0 || intensities.lambdas.size() != n) {
        throw std::invalid_argument("sample_trajectory_gnm: malformed intensity vector");
    }
    const std::uint64_t nn = n;
    if (edges + 1 < nn || edges > nn * (nn - 1) / 2) {
        throw std::invalid_argument("sample_trajectory_gnm: edge count " + std::to_string(edges) +
                                    " outside [n-1, n(n-1)/2]");
    }
    if (n == 1) return {single_vertex(), 0};
    const std::uint64_t extra = edges - (nn - 1);
    if (intensities.p == 1.0) {
        // Star; every candidate pair becomes an edge.
        if (extra != (nn - 1) * (nn - 2) / 2) {
            throw std::invalid_argument("sample_trajectory_gnm: p = 1 forces the complete graph");
        }
        return {star(n), 0};
    }

    if (intensities.p == 0.0 && extra != 0) {
        throw std::invalid_argument("sample_trajectory_gnm: uniform intensities admit trees only");
    }

    const std::vector<double> weights = intensities.weights();
    TrajectorySample out;
    for (;;) {
        auto counts = multinomial(stream, n - 1, weights);
        if (stays_nonnegative(counts)) {
            Trajectory t = to_trajectory(counts);
            const std::uint64_t drawn =
                intensities.p > 0.0 ? binomial(stream, candidate_pairs(t), intensities.p) : 0;
            if (drawn == extra) {
                out.trajectory = std::move(t);
                return out;
            }
        }
        ++out.restarts;
    }
}

double positivity_probability_exact(const IntensityVector& intensities) {
    const std::uint32_t n = intensities.n;
    if (n == 0 || intensities.lambdas.size() != n) {
        throw std::invalid_argument("positivity_probability_exact: malformed intensity vector");
    }
    if (n > kPositivityOracleMaxN) {
        throw std::invalid_argument("positivity_probability_exact: n = " + std::to_string(n) +
                                    " exceeds oracle scale " +
                                    std::to_string(kPositivityOracleMaxN));
    }
    if (n == 1) return 1.0;

    // dp[s] holds P(S_t = s, S_1..S_t >= 0) / exp(log_scale). Reaching S_n = -1
    // from S_t requires S_t <= n-1-t, so larger states are dropped.
    std::vector<double> dp(n, 0.0), next(n, 0.0), pmf(n + 1, 0.0);
    dp[0] = 1.0;
    double log_scale = 0.0;
    for (std::uint32_t t = 1; t < n; ++t) {
        const double lambda = intensities.lambdas[t - 1];
        const std::uint32_t prev_cap = n - t;  // states 0..n-t were allowed after step t-1
        const std::uint32_t cap = n - 1 - t;
        for (std::uint32_t k = 0; k <= cap + 1; ++k) pmf[k] = std::exp(log_poisson_pmf(lambda, k));
        std::fill(next.begin(), next.begin() + cap + 1, 0.0);
        for (std::uint32_t s = 0; s <= std::min(prev_cap, cap + 1); ++s) {
            const double mass = dp[s];
            if (mass == 0.0) continue;
            // S_t = s + X_t - 1 must land in [0, cap].
            const std::uint32_t k_lo = s == 0 ? 1 : 0;
            for (std::uint32_t k = k_lo; s + k <= cap + 1; ++k) next[s + k - 1] += mass * pmf[k];
        }
        const double peak = *std::max_element(next.begin(), next.begin() + cap + 1);
        if (peak == 0.0) return 0.0;
        for (std::uint32_t s = 0; s <= cap; ++s) dp[s] = next[s] / peak;
        for (std::uint32_t s = cap + 1; s < n; ++s) dp[s] = 0.0;
        log_scale += std::log(peak);
    }
    // Last step must take S_{n-1} = 0 to S_n = -1.
    const double final_mass = dp[0] * std::exp(log_poisson_pmf(intensities.lambdas[n - 1], 0));
    if (final_mass == 0.0) return 0.0;
    const double sum_lambda = static_cast<double>(n);
    const double log_joint = log_scale + std::log(final_mass);
    return std::exp(log_joint - log_poisson_pmf(sum_lambda, n - 1));
}

double acceptance_probability_asymptotic(double c) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("acceptance_probability_asymptotic: c must be positive");
    }
    return -std::expm1(-c) * (1.0 - c / std::expm1(c));
}

}  // namespace cer
