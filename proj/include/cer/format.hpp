#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cer/graph.hpp"

namespace cer {

enum class OutputFormat { edgelist, dot, json };

OutputFormat parse_output_format(std::string_view name);
std::string_view to_string(OutputFormat format);

// Where a graph came from; carried by the JSON format.
struct Provenance {
    std::string model;                                   // "gnp" or "gnm"
    std::vector<std::pair<std::string, double>> params;  // e.g. {"n", 100}, {"p", 0.03}
    std::optional<std::uint64_t> seed;
};

// "n m" header, then one "u v" line per edge in canonical order.
void write_edgelist(std::ostream& out, const Graph& g);
Graph read_edgelist(std::istream& in);

// Undirected DOT without layout hints.
void write_dot(std::ostream& out, const Graph& g);

// {"n": .., "edges": [[u,v],..], "model": .., "params": {..}, "seed": ..}
void write_json(std::ostream& out, const Graph& g, const Provenance& provenance);
Graph read_json(std::istream& in, Provenance* provenance = nullptr);

void write_graph(std::ostream& out, const Graph& g, OutputFormat format,
                 const Provenance& provenance);

}  // namespace cer
