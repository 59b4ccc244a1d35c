#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace cer {

using Vertex = std::uint32_t;

// Unordered pair stored with u < v. Vertices are 1-based.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph on {1..n} with a canonical (sorted) edge list.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::uint32_t n) : n_(n) {}

    // Normalizes endpoint order and sorts. Throws on self-loops, out-of-range
    // endpoints or duplicate edges.
    static Graph from_edges(std::uint32_t n, std::vector<Edge> edges);

    std::uint32_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    // Appends without checks; call canonicalize() once construction is done.
    void add_edge_unchecked(Vertex a, Vertex b) { edges_.push_back(make_edge(a, b)); }
    void reserve(std::size_t m) { edges_.reserve(m); }

    // Lexicographic sort, O(n + m) apart from sorting
    // the neighbours of very high-degree vertices.
    void canonicalize();

    // Indexed by vertex; entry 0 is unused.
    std::vector<std::uint32_t> degrees() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
};

bool is_connected(const Graph& g);

// Sorted, duplicate-free, endpoints in range with u < v.
bool is_simple_canonical(const Graph& g);

}  // namespace cer
