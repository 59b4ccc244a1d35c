#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace cer {

// Seeded xoshiro256** stream. The state update uses only integer arithmetic,
// so a given seed yields the same draws on every platform.
//
// Streams are single-threaded. For parallel work derive one sub-stream per
// shard with `substream`; derivation depends only on the seed and the label,
// never on how many draws the parent has made.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    std::uint64_t seed() const { return seed_; }

    RngStream substream(std::string_view label, std::uint64_t index = 0) const;

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

// Uniform on [0,1) with 53 bits of resolution; never returns 1.
double uniform01(RngStream& stream);

// Uniform integer on [0, bound). Unbiased (Lemire's multiply-and-reject).
std::uint64_t uniform_below(RngStream& stream, std::uint64_t bound);

// Exact Binomial(trials, p). Inversion when trials*min(p,1-p) < 30,
// otherwise Hormann's BTRD transformed rejection.
std::uint64_t binomial(RngStream& stream, std::uint64_t trials, double p);

// Exact Multinomial(trials; weights) by sequential conditional binomials.
// Weights must be nonnegative and sum to 1 within 1e-9; they are
// renormalized internally.
std::vector<std::uint64_t> multinomial(RngStream& stream, std::uint64_t trials,
                                       std::span<const double> weights);

// Uniform permutation of {1..n} (Fisher-Yates).
std::vector<std::uint32_t> random_permutation(RngStream& stream, std::uint32_t n);

// Uniform m-subset of {1..N}, ascending. Floyd's algorithm, O(m) expected
// plus the sort.
std::vector<std::uint64_t> sample_without_replacement(RngStream& stream, std::uint64_t m,
                                                      std::uint64_t N);

// Number of failures before the first success in Bernoulli(p) trials.
// Saturates at uint64 max when the inverted value does not fit.
std::uint64_t geometric_skip(RngStream& stream, double p);

}  // namespace cer
