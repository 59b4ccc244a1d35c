#pragma once

#include <cstdint>

namespace cer {

// Asymptotic mean degree of a connected sparse G(n, c/n): c / tanh(c/2),
// extended continuously by zeta(0) = 2.
double zeta(double c);

// Inverse of zeta on [2, inf). Returns c with |zeta(c) - d| <= 1e-12 d;
// d within 1e-12 of 2 maps to 0. Throws for d < 2.
double solve_c_for_mean_degree(double d);

// Limiting degree law of a vertex in a connected G(n, c/n):
//   P(k) = e^-gamma gamma^k / k! * (1 - e^{-ck}) / (1 - e^{-c}),  k >= 1,
// with gamma = c / (1 - e^{-c}).
struct DegreeLaw {
    double c = 0.0;
    double gamma = 0.0;

    explicit DegreeLaw(double c);

    // Smallest K such that the Poisson(gamma) tail beyond K is below 1e-15;
    // moments summed up to K are exact to double precision.
    std::uint32_t truncation() const;
};

double degree_pmf(const DegreeLaw& law, std::uint32_t k);

// P(G(n,p) connected) by the recursion over the component of vertex 1,
//   P_n = 1 - sum_{k<n} C(n-1, k-1) P_k (1-p)^{k(n-k)},
// in extended precision, raised from 100 up to 1600 digits until two levels
// agree to 1e-13. Throws std::domain_error if they never do.
// n <= 400.
double connectivity_probability_exact(std::uint32_t n, double p);

inline constexpr std::uint32_t kConnectivityOracleMaxN = 400;

// Large-n approximation for p = c/n:
//   (1 - c e^{-c} / (1 - e^{-c})) (1 - (1 - c/n)^n)^n.
double connectivity_probability_asymptotic(std::uint32_t n, double c);

}  // namespace cer
