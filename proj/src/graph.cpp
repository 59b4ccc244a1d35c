#include "cer/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cer {
namespace {

// By u: one scatter on the high bits (few enough buckets to stay cache
// friendly), then a counting sort on the low 9 bits inside each bucket. Runs
// of equal u are then ordered by v; those are short except around hubs.
void sort_edges(std::vector<Edge>& edges, std::uint32_t n) {
    constexpr int kLowBits = 9;
    const int b = std::bit_width(n);
    const int high_shift = std::min(b, kLowBits);
    const std::size_t buckets = (static_cast<std::size_t>(n) >> high_shift) + 1;

    std::vector<std::size_t> starts(buckets + 1, 0);
    for (const Edge& e : edges) ++starts[(e.u >> high_shift) + 1];
    std::partial_sum(starts.begin(), starts.end(), starts.begin());
    std::vector<Edge> scratch(edges.size());
    {
        std::vector<std::size_t> cursor(starts.begin(), starts.end() - 1);
        for (const Edge& e : edges) scratch[cursor[e.u >> high_shift]++] = e;
    }

    const std::uint32_t low_mask = (std::uint32_t{1} << high_shift) - 1;
    std::vector<std::size_t> low(static_cast<std::size_t>(low_mask) + 2);
    for (std::size_t k = 0; k < buckets; ++k) {
        const std::size_t lo = starts[k], hi = starts[k + 1];
        if (hi - lo < 2) {
            if (hi > lo) edges[lo] = scratch[lo];
            continue;
        }
        std::fill(low.begin(), low.end(), 0);
        for (std::size_t i = lo; i < hi; ++i) ++low[(scratch[i].u & low_mask) + 1];
        std::partial_sum(low.begin(), low.end(), low.begin());
        for (std::size_t i = lo; i < hi; ++i) edges[lo + low[scratch[i].u & low_mask]++] = scratch[i];
    }

    auto by_v = [](const Edge& x, const Edge& y) { return x.v < y.v; };
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i + 1;
        while (j < edges.size() && edges[j].u == edges[i].u) ++j;
        if (j - i > 32) {
            std::sort(edges.begin() + static_cast<std::ptrdiff_t>(i),
                      edges.begin() + static_cast<std::ptrdiff_t>(j), by_v);
        } else {
            for (std::size_t r = i + 1; r < j; ++r) {
                const Edge e = edges[r];
                std::size_t s = r;
                for (; s > i && edges[s - 1].v > e.v; --s) edges[s] = edges[s - 1];
                edges[s] = e;
            }
        }
        i = j;
    }
}

class DisjointSets {
public:
    explicit DisjointSets(std::uint32_t n) : parent_(n + 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
};

}  // namespace

Graph Graph::from_edges(std::uint32_t n, std::vector<Edge> edges) {
    Graph g(n);
    for (Edge& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("graph: self-loop at " + std::to_string(e.u));
        e = make_edge(e.u, e.v);
        if (e.u < 1 || e.v > n) {
            throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") outside 1.." + std::to_string(n));
        }
    }
    g.edges_ = std::move(edges);
    g.canonicalize();
    for (std::size_t i = 1; i < g.edges_.size(); ++i) {
        if (g.edges_[i] == g.edges_[i - 1]) {
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(g.edges_[i].u) +
                                        "," + std::to_string(g.edges_[i].v) + ")");
        }
    }
    return g;
}

void Graph::canonicalize() {
    if (edges_.size() < 2) return;
    sort_edges(edges_, n_);
}

std::vector<std::uint32_t> Graph::degrees() const {
    std::vector<std::uint32_t> deg(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

bool is_connected(const Graph& g) {
    const std::uint32_t n = g.vertex_count();
    if (n <= 1) return true;
    if (g.edge_count() + 1 < n) return false;
    DisjointSets sets(n);
    std::uint32_t components = n;
    for (const Edge& e : g.edges()) {
        if (e.u < 1 || e.v > n) return false;
        if (sets.unite(e.u, e.v) && --components == 1) return true;
    }
    return components == 1;
}

bool is_simple_canonical(const Graph& g) {
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.u < 1 || e.u >= e.v || e.v > g.vertex_count()) return false;
        if (i > 0 && !(edges[i - 1] < e)) return false;
    }
    return true;
}

}  // namespace cer
