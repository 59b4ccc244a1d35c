#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cer/random.hpp"

namespace cer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// One CSV line of a verify report.
struct CheckRow {
    std::string metric;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::vector<CheckRow> rows;

    bool passed() const;
    void add(std::string metric, double observed, double expected, double tolerance, bool pass);
    // Passes when |observed - expected| <= tolerance.
    void add_abs(std::string metric, double observed, double expected, double tolerance);
};

void write_csv(std::ostream& out, const SuiteReport& report);

struct Sharding {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

// Splits `total` work items over `jobs` shards. Shard i draws from
// RngStream(seed).substream(label, i) and results are combined in shard order.
std::vector<std::uint64_t> shard_sizes(std::uint64_t total, unsigned jobs);

SuiteReport verify_lemma1(std::uint32_t n, double p);
SuiteReport verify_gnp_exact(std::uint32_t n, double p, std::uint64_t samples, const Sharding& sh);
SuiteReport verify_gnm_uniform(std::uint32_t n, std::uint64_t edges, std::uint64_t samples,
                               const Sharding& sh);
SuiteReport verify_degree(std::uint32_t n, double c, std::uint64_t samples, std::uint32_t max_k,
                          const Sharding& sh);
SuiteReport verify_acceptance(std::uint32_t n, double c, std::uint64_t trials, const Sharding& sh);

// Degree of vertex 1 over sampled connected G(n, c/n) graphs, against the
// limiting degree law. Standard errors use the theoretical cell probability.
struct DegreeBin {
    std::uint32_t k = 0;
    double empirical = 0.0;
    double std_error = 0.0;
    double theoretical = 0.0;
};
std::vector<DegreeBin> degree_histogram(std::uint32_t n, double c, std::uint64_t samples,
                                        const Sharding& sh);

struct MeanDegreePoint {
    double c = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double theoretical = 0.0;
};
MeanDegreePoint mean_degree(std::uint32_t n, double c, std::uint64_t samples, const Sharding& sh);

// Edge counts of connected G(n,p) draws for the Step-0 p and for the naive
// c = 2M/(n-1).
struct EdgeHistogram {
    std::uint64_t min_edges = 0;
    std::vector<std::uint64_t> step0;
    std::vector<std::uint64_t> naive;
    double step0_c = 0.0;
    double naive_c = 0.0;
};
EdgeHistogram edge_count_histogram(std::uint32_t n, std::uint64_t edges, std::uint64_t samples,
                                   const Sharding& sh);

struct BenchRow {
    std::uint32_t n = 0;
    double mean_ms = 0.0;
    double restarts_mean = 0.0;
    double edges_mean = 0.0;
};
BenchRow bench_gnp(std::uint32_t n, double c, std::uint64_t reps, const Sharding& sh);

// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cer::cli
