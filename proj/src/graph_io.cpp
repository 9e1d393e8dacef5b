#include "liftrank/graph.hpp"

#include <json.hpp>
#include <stdexcept>

namespace liftrank {

// graph6: one byte n+63 (n <= 62), then the upper triangle of the adjacency
// matrix in column order, packed 6 bits per printable byte.
std::string to_graph6(const Graph& g) {
    int n = g.vertex_count();
    if (n > 62) throw std::invalid_argument("to_graph6: n > 62 not supported");
    std::string out;
    out.push_back(static_cast<char>(n + 63));
    int bit = 5;
    char cur = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (g.has_edge(i, j)) cur |= static_cast<char>(1 << bit);
            if (--bit < 0) {
                out.push_back(static_cast<char>(cur + 63));
                cur = 0;
                bit = 5;
            }
        }
    }
    if (n >= 2 && bit != 5) out.push_back(static_cast<char>(cur + 63));
    return out;
}

Graph from_graph6(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("from_graph6: empty string");
    int n = s[0] - 63;
    if (n < 0 || n > 62)
        throw std::invalid_argument("from_graph6: bad vertex count byte at position 0");
    Graph g(n);
    std::size_t pos = 1;
    int bit = 5;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (pos >= s.size())
                throw std::invalid_argument("from_graph6: truncated input at position " +
                                            std::to_string(pos));
            int byte = s[pos] - 63;
            if (byte < 0 || byte > 63)
                throw std::invalid_argument("from_graph6: bad data byte at position " +
                                            std::to_string(pos));
            if ((byte >> bit) & 1) g.add_edge(i, j);
            if (--bit < 0) {
                bit = 5;
                ++pos;
            }
        }
    }
    return g;
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    auto adj = nlohmann::json::array();
    for (int v = 0; v < g.vertex_count(); ++v) adj.push_back(vmembers(g.neighbors(v)));
    j["adj"] = adj;
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    Graph g(n);
    const auto& adj = j.at("adj");
    if (static_cast<int>(adj.size()) != n)
        throw std::invalid_argument("graph_from_json: adjacency list size mismatch");
    for (int v = 0; v < n; ++v)
        for (int u : adj[v].get<std::vector<int>>())
            if (u > v) g.add_edge(v, u);
    g.check_invariants();
    for (int v = 0; v < n; ++v) {
        VertexSet listed = 0;
        for (int u : adj[v].get<std::vector<int>>()) {
            if (u < 0 || u >= n) throw std::invalid_argument("graph_from_json: neighbor out of range");
            listed |= vbit(u);
        }
        if (listed != g.neighbors(v))
            throw std::invalid_argument("graph_from_json: asymmetric adjacency");
    }
    return g;
}

}  // namespace liftrank
