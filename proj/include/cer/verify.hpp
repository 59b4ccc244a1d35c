#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cer/graph.hpp"

namespace cer {

// Byte encoding of a labeled graph's sorted edge list (u, v as little-endian
// 32-bit words). Equal keys iff equal labeled edge sets.
class CanonicalKey {
public:
    CanonicalKey() = default;
    explicit CanonicalKey(const Graph& g);

    const std::string& bytes() const { return bytes_; }
    std::vector<Edge> edges() const;

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

private:
    std::string bytes_;
};

// Probability or frequency per labeled graph. For exact tables `total` is the
// normalizer that was divided out; for empirical tables it is the sample count.
struct DistributionTable {
    std::map<CanonicalKey, double> entries;
    double total = 0.0;

    double at(const CanonicalKey& key) const;
    double mass() const;
};

inline constexpr std::uint32_t kEnumerationMaxN = 6;

// All connected labeled graphs on {1..n} (optionally with exactly `edges`
// edges), by exhaustive search over 2^C(n,2) edge subsets. n <= 6.
std::vector<CanonicalKey> enumerate_connected_graphs(std::uint32_t n,
                                                     std::optional<std::uint64_t> edges = {});

// Mass p^m (1-p)^(C(n,2)-m) over the connected support, normalized.
DistributionTable exact_conditional_gnp_distribution(std::uint32_t n, double p);

// Uniform over connected graphs with exactly `edges` edges.
DistributionTable exact_conditional_gnm_distribution(std::uint32_t n, std::uint64_t edges);

// Accumulates labeled-graph frequencies.
class EmpiricalDistribution {
public:
    void add(const Graph& g) { add(CanonicalKey(g)); }
    void add(const CanonicalKey& key, std::uint64_t count = 1);
    void merge(const EmpiricalDistribution& other);

    std::uint64_t samples() const { return samples_; }
    std::uint64_t count(const CanonicalKey& key) const;
    const std::map<CanonicalKey, std::uint64_t>& counts() const { return counts_; }

    DistributionTable table() const;

private:
    std::map<CanonicalKey, std::uint64_t> counts_;
    std::uint64_t samples_ = 0;
};

// (1/2) sum |a(k) - b(k)| over the union of keys.
double total_variation(const DistributionTable& a, const DistributionTable& b);

// E[TVD] ~ sum_k sqrt(p_k (1-p_k) / (2 pi N)) for N multinomial draws from
// the exact table (half-normal mean of each cell's deviation).
double expected_tvd_noise(const DistributionTable& exact, std::uint64_t samples);

struct ChiSquareResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t degrees_of_freedom = 0;
};

// Pearson test against the uniform null. Requires total >= 5 * cells.
ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> counts);

// Pearson test against arbitrary cell probabilities. Adjacent cells are pooled
// left to right until every pooled expectation reaches `min_expected`.
ChiSquareResult chi_square_goodness_of_fit(std::span<const std::uint64_t> counts,
                                           std::span<const double> probabilities,
                                           double min_expected = 5.0);

// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, double degrees_of_freedom);

}  // namespace cer
