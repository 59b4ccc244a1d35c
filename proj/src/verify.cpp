#include "cer/verify.hpp"

#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace cer {
namespace {

void put_u32(std::string& out, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t at) {
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) {
        x |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
    }
    return x;
}

struct PairTable {
    std::vector<Edge> pairs;  // lexicographic, bit i of a mask is pairs[i]
};

PairTable all_pairs(std::uint32_t n) {
    PairTable t;
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) t.pairs.push_back({u, v});
    }
    return t;
}

bool mask_connected(std::uint32_t n, const PairTable& table, std::uint32_t mask) {
    std::uint32_t adjacency[kEnumerationMaxN + 1] = {};
    for (std::size_t i = 0; i < table.pairs.size(); ++i) {
        if (mask >> i & 1u) {
            adjacency[table.pairs[i].u] |= 1u << table.pairs[i].v;
            adjacency[table.pairs[i].v] |= 1u << table.pairs[i].u;
        }
    }
    const std::uint32_t everyone = ((1u << (n + 1)) - 1) & ~1u;
    std::uint32_t reached = 1u << 1, frontier = reached;
    while (frontier) {
        std::uint32_t grown = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (frontier >> v & 1u) grown |= adjacency[v];
        }
        frontier = grown & ~reached;
        reached |= grown;
    }
    return reached == everyone;
}

CanonicalKey key_from_mask(std::uint32_t n, const PairTable& table, std::uint32_t mask) {
    Graph g(n);
    for (std::size_t i = 0; i < table.pairs.size(); ++i) {
        if (mask >> i & 1u) g.add_edge_unchecked(table.pairs[i].u, table.pairs[i].v);
    }
    return CanonicalKey(g);  // pairs are already in lexicographic order
}

void check_enumeration_bound(std::uint32_t n) {
    if (n == 0 || n > kEnumerationMaxN) {
        throw std::invalid_argument("graph enumeration supports 1 <= n <= " +
                                    std::to_string(kEnumerationMaxN) + ", got " +
                                    std::to_string(n));
    }
}

}  // namespace

CanonicalKey::CanonicalKey(const Graph& g) {
    bytes_.reserve(8 * g.edge_count());
    for (const Edge& e : g.edges()) {
        put_u32(bytes_, e.u);
        put_u32(bytes_, e.v);
    }
}

std::vector<Edge> CanonicalKey::edges() const {
    std::vector<Edge> out;
    out.reserve(bytes_.size() / 8);
    for (std::size_t at = 0; at + 8 <= bytes_.size(); at += 8) {
        out.push_back({get_u32(bytes_, at), get_u32(bytes_, at + 4)});
    }
    return out;
}

double DistributionTable::at(const CanonicalKey& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0.0 : it->second;
}

double DistributionTable::mass() const {
    double s = 0.0;
    for (const auto& [key, value] : entries) s += value;
    return s;
}

std::vector<CanonicalKey> enumerate_connected_graphs(std::uint32_t n,
                                                     std::optional<std::uint64_t> edges) {
    check_enumeration_bound(n);
    const PairTable table = all_pairs(n);
    const std::uint32_t limit = 1u << table.pairs.size();
    std::vector<CanonicalKey> out;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (edges && static_cast<std::uint64_t>(std::popcount(mask)) != *edges) continue;
        if (mask_connected(n, table, mask)) out.push_back(key_from_mask(n, table, mask));
    }
    return out;
}

DistributionTable exact_conditional_gnp_distribution(std::uint32_t n, double p) {
    check_enumeration_bound(n);
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("exact distribution: p outside [0,1]");
    const PairTable table = all_pairs(n);
    const auto pairs = static_cast<int>(table.pairs.size());
    const std::uint32_t limit = 1u << pairs;
    DistributionTable out;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (!mask_connected(n, table, mask)) continue;
        const int m = std::popcount(mask);
        const double mass = std::pow(p, m) * std::pow(1.0 - p, pairs - m);
        if (mass > 0.0) out.entries.emplace(key_from_mask(n, table, mask), mass);
    }
    out.total = out.mass();
    if (!(out.total > 0.0)) throw std::invalid_argument("exact distribution: empty support");
    for (auto& [key, value] : out.entries) value /= out.total;
    return out;
}

DistributionTable exact_conditional_gnm_distribution(std::uint32_t n, std::uint64_t edges) {
    const auto support = enumerate_connected_graphs(n, edges);
    if (support.empty()) throw std::invalid_argument("exact distribution: empty support");
    DistributionTable out;
    out.total = static_cast<double>(support.size());
    for (const auto& key : support) out.entries.emplace(key, 1.0 / out.total);
    return out;
}

void EmpiricalDistribution::add(const CanonicalKey& key, std::uint64_t count) {
    counts_[key] += count;
    samples_ += count;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
    for (const auto& [key, count] : other.counts_) add(key, count);
}

std::uint64_t EmpiricalDistribution::count(const CanonicalKey& key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
}

DistributionTable EmpiricalDistribution::table() const {
    DistributionTable out;
    out.total = static_cast<double>(samples_);
    if (samples_ == 0) return out;
    for (const auto& [key, count] : counts_) {
        out.entries.emplace(key, static_cast<double>(count) / out.total);
    }
    return out;
}

double total_variation(const DistributionTable& a, const DistributionTable& b) {
    double sum = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
            sum += std::fabs(ia->second);
            ++ia;
        } else if (ia == a.entries.end() || ib->first < ia->first) {
            sum += std::fabs(ib->second);
            ++ib;
        } else {
            sum += std::fabs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return 0.5 * sum;
}

double expected_tvd_noise(const DistributionTable& exact, std::uint64_t samples) {
    const double denom = 2.0 * std::numbers::pi * static_cast<double>(samples);
    double sum = 0.0;
    for (const auto& [key, prob] : exact.entries) sum += std::sqrt(prob * (1.0 - prob) / denom);
    return sum;
}

double chi_square_survival(double statistic, double degrees_of_freedom) {
    if (!(degrees_of_freedom > 0.0)) throw std::invalid_argument("chi-square: df must be positive");
    if (std::isinf(statistic)) return 0.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi-square: need at least two cells");
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total < 5 * counts.size()) {
        throw std::invalid_argument("chi-square: " + std::to_string(total) + " samples over " +
                                    std::to_string(counts.size()) +
                                    " cells is below 5 per cell");
    }
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.degrees_of_freedom = counts.size() - 1;
    r.p_value = chi_square_survival(stat, static_cast<double>(r.degrees_of_freedom));
    return r;
}

ChiSquareResult chi_square_goodness_of_fit(std::span<const std::uint64_t> counts,
                                           std::span<const double> probabilities,
                                           double min_expected) {
    if (counts.size() != probabilities.size()) {
        throw std::invalid_argument("chi-square: counts and probabilities differ in length");
    }
    const auto total =
        static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    std::vector<double> observed, expected;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (probabilities[i] < 0.0) throw std::invalid_argument("chi-square: negative probability");
        obs_acc += static_cast<double>(counts[i]);
        exp_acc += probabilities[i] * total;
        if (exp_acc >= min_expected) {
            observed.push_back(obs_acc);
            expected.push_back(exp_acc);
            obs_acc = exp_acc = 0.0;
        }
    }
    if (obs_acc > 0.0 || exp_acc > 0.0) {
        if (expected.empty()) {
            observed.push_back(obs_acc);
            expected.push_back(exp_acc);
        } else {
            observed.back() += obs_acc;
            expected.back() += exp_acc;
        }
    }
    ChiSquareResult r;
    if (expected.size() < 2) return r;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] <= 0.0) {
            if (observed[i] > 0.0) r.statistic = std::numeric_limits<double>::infinity();
            continue;
        }
        const double d = observed[i] - expected[i];
        r.statistic += d * d / expected[i];
    }
    r.degrees_of_freedom = expected.size() - 1;
    r.p_value = chi_square_survival(r.statistic, static_cast<double>(r.degrees_of_freedom));
    return r;
}

}  // namespace cer
