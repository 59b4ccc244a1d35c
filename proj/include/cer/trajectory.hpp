#pragma once

#include <cstdint>
#include <vector>

#include "cer/random.hpp"

namespace cer {

// Poisson rates of the exploration walk:
//   lambda_i = n p (1-p)^(i-1) / (1 - (1-p)^n),   sum_i lambda_i = n.
// p == 0 stands for the p -> 0 limit, lambda_i == 1 (see uniform_intensities).
struct IntensityVector {
    std::uint32_t n = 0;
    double p = 0.0;
    std::vector<double> lambdas;

    // lambda_i / n, the multinomial cell weights.
    std::vector<double> weights() const;
};

IntensityVector compute_intensities(std::uint32_t n, double p);
IntensityVector uniform_intensities(std::uint32_t n);

// Step counts X_1..X_n and the walk S_0..S_n with S_k = S_{k-1} + X_k - 1.
struct Trajectory {
    std::vector<std::uint32_t> steps;
    std::vector<std::int64_t> walk;

    std::uint32_t n() const { return static_cast<std::uint32_t>(steps.size()); }

    static Trajectory from_steps(std::vector<std::uint32_t> steps);

    // S_0 = 0, S_n = -1 and S_k >= 0 for 0 < k < n.
    bool is_valid() const;
};

struct TrajectorySample {
    Trajectory trajectory;
    std::uint64_t restarts = 0;
};

// First multinomial draw whose walk stays nonnegative before step n.
TrajectorySample sample_trajectory_gnp(RngStream& stream, const IntensityVector& intensities);

// Additionally requires Binomial(sum_{i<n} S_i, p) == M - (n-1).
TrajectorySample sample_trajectory_gnm(RngStream& stream, const IntensityVector& intensities,
                                       std::uint64_t edges);

// P(S_k >= 0, 0 < k < n | S_n = -1) for independent Poisson(lambda_i) steps,
// by forward dynamic programming. n <= 500.
double positivity_probability_exact(const IntensityVector& intensities);

inline constexpr std::uint32_t kPositivityOracleMaxN = 500;

// Limit of the positivity probability for p = c/n as n -> infinity.
double acceptance_probability_asymptotic(double c);

}  // namespace cer
