#include "cer/assembler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cer/analytic.hpp"

namespace cer {
namespace {

void check_layout_input(const std::vector<Vertex>& sigma, const Trajectory& trajectory) {
    if (!trajectory.is_valid()) {
        throw std::invalid_argument("build_tree: trajectory violates walk invariants");
    }
    if (sigma.size() != trajectory.n()) {
        throw std::invalid_argument("build_tree: discovery order has wrong length");
    }
    std::vector<bool> seen(sigma.size() + 1, false);
    for (Vertex v : sigma) {
        if (v < 1 || v > sigma.size() || seen[v]) {
            throw std::invalid_argument("build_tree: discovery order is not a permutation");
        }
        seen[v] = true;
    }
}

Graph complete_graph(std::uint32_t n) {
    Graph g(n);
    g.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) g.add_edge_unchecked(u, v);
    }
    return g;
}

Graph single_edge() {
    Graph g(2);
    g.add_edge_unchecked(1, 2);
    return g;
}

// Tree edges in exploration order, not yet canonical. Inputs are trusted.
TreeBuild slice_blocks(std::vector<Vertex> sigma, Trajectory trajectory) {
    const std::uint32_t n = trajectory.n();
    Graph tree(n);
    tree.reserve(n - 1);
    std::size_t next = 1;  // sigma index (0-based) of the next undiscovered vertex
    for (std::uint32_t t = 0; t < n; ++t) {
        for (std::uint32_t j = 0; j < trajectory.steps[t]; ++j) {
            tree.add_edge_unchecked(sigma[t], sigma[next++]);
        }
    }
    TreeBuild out{std::move(tree), ExplorationLayout{std::move(sigma), std::move(trajectory), 0}};
    out.layout.pset_size = pset_size(out.layout.trajectory);
    return out;
}

}  // namespace

std::uint64_t pset_size(const Trajectory& trajectory) {
    std::uint64_t total = 0;
    for (std::size_t i = 1; i + 1 < trajectory.walk.size(); ++i) {
        total += static_cast<std::uint64_t>(trajectory.walk[i]);
    }
    return total;
}

TreeBuild build_tree(std::vector<Vertex> sigma, Trajectory trajectory) {
    check_layout_input(sigma, trajectory);
    TreeBuild out = slice_blocks(std::move(sigma), std::move(trajectory));
    out.tree.canonicalize();
    return out;
}

TreeBuild build_tree(RngStream& stream, Trajectory trajectory) {
    if (!trajectory.is_valid()) {
        throw std::invalid_argument("build_tree: trajectory violates walk invariants");
    }
    auto sigma = random_permutation(stream, trajectory.n());
    return build_tree(std::move(sigma), std::move(trajectory));
}

Edge PairCursor::at(std::uint64_t index) {
    const auto& walk = layout_->trajectory.walk;
    if (index < 1 || index > layout_->pset_size) {
        throw std::out_of_range("candidate pair index " + std::to_string(index) +
                                " outside 1.." + std::to_string(layout_->pset_size));
    }
    if (index <= offset_) throw std::invalid_argument("PairCursor: indices must be nondecreasing");
    while (offset_ + static_cast<std::uint64_t>(walk[step_ - 1]) < index) {
        offset_ += static_cast<std::uint64_t>(walk[step_ - 1]);
        ++step_;
    }
    const auto& sigma = layout_->sigma;
    return make_edge(sigma[step_ - 1], sigma[step_ - 1 + (index - offset_)]);
}

Edge index_to_pair(const ExplorationLayout& layout, std::uint64_t index) {
    PairCursor cursor(layout);
    return cursor.at(index);
}

Graph complete_gnp(RngStream& stream, Graph tree, const ExplorationLayout& layout, double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("complete_gnp: p must lie in (0,1]");
    }
    const std::uint64_t total = layout.pset_size;
    const double expected = static_cast<double>(total) * p;
    tree.reserve(tree.edge_count() + static_cast<std::size_t>(expected + 4.0 * std::sqrt(expected)) + 16);
    PairCursor cursor(layout);
    std::uint64_t index = 0;
    for (;;) {
        const std::uint64_t skip = geometric_skip(stream, p);
        if (skip >= total - index) break;
        index += skip + 1;
        const Edge e = cursor.at(index);
        tree.add_edge_unchecked(e.u, e.v);
    }
    tree.canonicalize();
    return tree;
}

Graph complete_gnm(RngStream& stream, Graph tree, const ExplorationLayout& layout,
                   std::uint64_t m_extra) {
    if (m_extra > layout.pset_size) {
        throw std::invalid_argument("complete_gnm: " + std::to_string(m_extra) +
                                    " extra edges requested but only " +
                                    std::to_string(layout.pset_size) + " candidate pairs");
    }
    const auto indices = sample_without_replacement(stream, m_extra, layout.pset_size);
    PairCursor cursor(layout);
    tree.reserve(tree.edge_count() + indices.size());
    for (std::uint64_t index : indices) {
        const Edge e = cursor.at(index);
        tree.add_edge_unchecked(e.u, e.v);
    }
    tree.canonicalize();
    return tree;
}

Graph generate_connected_gnp(RngStream& stream, std::uint32_t n, double p,
                             GenerationStats* stats) {
    if (n == 0) throw std::invalid_argument("generate_connected_gnp: n must be at least 1");
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("generate_connected_gnp: p must lie in (0,1], got " +
                                    std::to_string(p));
    }
    if (stats) *stats = GenerationStats{0, 0, 0, p};
    if (n == 1) return Graph(1);
    if (n == 2) return single_edge();

    auto sample = sample_trajectory_gnp(stream, compute_intensities(n, p));
    auto sigma = random_permutation(stream, n);
    auto [tree, layout] = slice_blocks(std::move(sigma), std::move(sample.trajectory));
    const std::size_t tree_edges = tree.edge_count();
    Graph g = complete_gnp(stream, std::move(tree), layout, p);
    if (stats) {
        stats->restarts = sample.restarts;
        stats->pset_size = layout.pset_size;
        stats->extra_edges = g.edge_count() - tree_edges;
    }
    return g;
}

double gnm_edge_probability(std::uint32_t n, std::uint64_t edges) {
    if (n < 2) return 0.0;
    const double mean_degree = 2.0 * static_cast<double>(edges) / static_cast<double>(n - 1);
    return solve_c_for_mean_degree(mean_degree) / static_cast<double>(n);
}

Graph generate_connected_gnm(RngStream& stream, std::uint32_t n, std::uint64_t edges,
                             GenerationStats* stats) {
    if (n == 0) throw std::invalid_argument("generate_connected_gnm: n must be at least 1");
    const std::uint64_t nn = n;
    const std::uint64_t max_edges = nn * (nn - 1) / 2;
    if (edges + 1 < nn || edges > max_edges) {
        throw std::invalid_argument("generate_connected_gnm: M = " + std::to_string(edges) +
                                    " outside [" + std::to_string(nn - 1) + ", " +
                                    std::to_string(max_edges) + "]");
    }
    if (stats) *stats = GenerationStats{};
    if (n == 1) return Graph(1);
    if (n == 2) return single_edge();
    if (edges == max_edges) {
        if (stats) stats->extra_edges = edges - (nn - 1);
        return complete_graph(n);
    }

    const std::uint64_t extra = edges - (nn - 1);
    const double p = extra == 0 ? 0.0 : gnm_edge_probability(n, edges);
    const IntensityVector intensities =
        extra == 0 ? uniform_intensities(n) : compute_intensities(n, p);
    auto sample = sample_trajectory_gnm(stream, intensities, edges);
    auto sigma = random_permutation(stream, n);
    auto [tree, layout] = slice_blocks(std::move(sigma), std::move(sample.trajectory));
    Graph g = extra == 0 ? std::move(tree) : complete_gnm(stream, std::move(tree), layout, extra);
    if (extra == 0) g.canonicalize();
    if (stats) {
        stats->restarts = sample.restarts;
        stats->pset_size = layout.pset_size;
        stats->extra_edges = extra;
        stats->p = p;
    }
    return g;
}

}  // namespace cer
