#include "cer/format.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cer {

OutputFormat parse_output_format(std::string_view name) {
    if (name == "edgelist") return OutputFormat::edgelist;
    if (name == "dot") return OutputFormat::dot;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::edgelist: return "edgelist";
        case OutputFormat::dot: return "dot";
        case OutputFormat::json: return "json";
    }
    return "edgelist";
}

void write_edgelist(std::ostream& out, const Graph& g) {
    std::string buffer;
    buffer.reserve(16 * (g.edge_count() + 1));
    buffer += std::to_string(g.vertex_count());
    buffer += ' ';
    buffer += std::to_string(g.edge_count());
    buffer += '\n';
    for (const Edge& e : g.edges()) {
        buffer += std::to_string(e.u);
        buffer += ' ';
        buffer += std::to_string(e.v);
        buffer += '\n';
    }
    out << buffer;
}

Graph read_edgelist(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("edgelist: missing 'n m' header");
    if (n > 0xFFFFFFFFULL) throw std::runtime_error("edgelist: vertex count too large");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!(in >> u >> v)) {
            throw std::runtime_error("edgelist: expected " + std::to_string(m) +
                                     " edges, read " + std::to_string(i));
        }
        if (u > n || v > n) throw std::runtime_error("edgelist: endpoint out of range");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    std::string trailing;
    if (in >> trailing) throw std::runtime_error("edgelist: trailing data after last edge");
    return Graph::from_edges(static_cast<std::uint32_t>(n), std::move(edges));
}

void write_dot(std::ostream& out, const Graph& g) {
    std::vector<bool> touched(static_cast<std::size_t>(g.vertex_count()) + 1, false);
    for (const Edge& e : g.edges()) touched[e.u] = touched[e.v] = true;
    std::ostringstream body;
    body << "graph {\n";
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        if (!touched[v]) body << "  " << v << ";\n";
    }
    for (const Edge& e : g.edges()) body << "  " << e.u << " -- " << e.v << ";\n";
    body << "}\n";
    out << body.str();
}

void write_json(std::ostream& out, const Graph& g, const Provenance& provenance) {
    nlohmann::ordered_json doc;
    doc["n"] = g.vertex_count();
    auto& edges = doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    doc["model"] = provenance.model;
    auto& params = doc["params"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : provenance.params) params[name] = value;
    if (provenance.seed) {
        doc["seed"] = *provenance.seed;
    } else {
        doc["seed"] = nullptr;
    }
    out << doc.dump() << '\n';
}

Graph read_json(std::istream& in, Provenance* provenance) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("json: ") + e.what());
    }
    if (!doc.contains("n") || !doc.contains("edges")) {
        throw std::runtime_error("json: document needs 'n' and 'edges'");
    }
    const auto n = doc.at("n").get<std::uint32_t>();
    std::vector<Edge> edges;
    for (const auto& pair : doc.at("edges")) {
        if (!pair.is_array() || pair.size() != 2) throw std::runtime_error("json: malformed edge");
        edges.push_back({pair[0].get<Vertex>(), pair[1].get<Vertex>()});
    }
    if (provenance) {
        *provenance = Provenance{};
        if (doc.contains("model")) provenance->model = doc["model"].get<std::string>();
        if (doc.contains("params")) {
            for (const auto& [name, value] : doc["params"].items()) {
                provenance->params.emplace_back(name, value.get<double>());
            }
        }
        if (doc.contains("seed") && !doc["seed"].is_null()) {
            provenance->seed = doc["seed"].get<std::uint64_t>();
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g, OutputFormat format,
                 const Provenance& provenance) {
    switch (format) {
        case OutputFormat::edgelist: write_edgelist(out, g); break;
        case OutputFormat::dot: write_dot(out, g); break;
        case OutputFormat::json: write_json(out, g, provenance); break;
    }
}

}  // namespace cer
