#pragma once

#include <cstdint>
#include <vector>

#include "cer/graph.hpp"
#include "cer/random.hpp"
#include "cer/trajectory.hpp"

namespace cer {

// Exploration in FIFO order: sigma[t-1] is the vertex explored at step t, and
// the active set at step t is sigma(t..t+S_{t-1}). Tree edges and candidate
// pairs are both implicit in (sigma, walk).
struct ExplorationLayout {
    std::vector<Vertex> sigma;
    Trajectory trajectory;
    std::uint64_t pset_size = 0;
};

struct TreeBuild {
    Graph tree;
    ExplorationLayout layout;
};

// Draws a uniform sigma and slices it into blocks of sizes X_1..X_n.
TreeBuild build_tree(RngStream& stream, Trajectory trajectory);

// Same slicing with a caller-supplied discovery order (a permutation of 1..n).
TreeBuild build_tree(std::vector<Vertex> sigma, Trajectory trajectory);

// sum_{i=1}^{n-1} S_i: the number of pairs left undecided by the tree.
std::uint64_t pset_size(const Trajectory& trajectory);

// Candidate pair number `index` (1-based). Block t holds the S_{t-1} pairs
// (sigma(t), sigma(t+1..t+S_{t-1})). O(n) per call.
Edge index_to_pair(const ExplorationLayout& layout, std::uint64_t index);

// Maps a nondecreasing sequence of indices in O(n + count) total.
class PairCursor {
public:
    explicit PairCursor(const ExplorationLayout& layout) : layout_(&layout) {}

    Edge at(std::uint64_t index);

private:
    const ExplorationLayout* layout_;
    std::uint64_t step_ = 1;
    std::uint64_t offset_ = 0;
};

// Adds each candidate pair independently with probability p, visiting only
// the successes via geometric skips.
Graph complete_gnp(RngStream& stream, Graph tree, const ExplorationLayout& layout, double p);

// Adds exactly m_extra candidate pairs chosen uniformly without replacement.
Graph complete_gnm(RngStream& stream, Graph tree, const ExplorationLayout& layout,
                   std::uint64_t m_extra);

struct GenerationStats {
    std::uint64_t restarts = 0;
    std::uint64_t pset_size = 0;
    std::uint64_t extra_edges = 0;
    double p = 0.0;
};

// Connected G(n,p): law P(g | g connected). Edges are canonical.
Graph generate_connected_gnp(RngStream& stream, std::uint32_t n, double p,
                             GenerationStats* stats = nullptr);

// Connected G(n,M): uniform over connected graphs with exactly M edges.
Graph generate_connected_gnm(RngStream& stream, std::uint32_t n, std::uint64_t edges,
                             GenerationStats* stats = nullptr);

// Edge probability c/n with zeta(c) = 2M/(n-1), used to drive the G(n,M)
// sampler. Zero for trees.
double gnm_edge_probability(std::uint32_t n, std::uint64_t edges);

}  // namespace cer
