#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace liftrank {

/// Vertex subsets are machine-word bitsets; graphs are capped at 64 vertices.
using VertexSet = std::uint64_t;

inline VertexSet vbit(int v) { return VertexSet{1} << v; }
inline bool vtest(VertexSet s, int v) { return (s >> v) & 1; }
inline int vcount(VertexSet s) { return __builtin_popcountll(s); }
inline int vfirst(VertexSet s) { return __builtin_ctzll(s); }  // undefined for s == 0
inline VertexSet vall(int n) { return n == 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1; }

inline std::vector<int> vmembers(VertexSet s) {
    std::vector<int> out;
    while (s) { out.push_back(vfirst(s)); s &= s - 1; }
    return out;
}

/// Simple undirected graph on at most 64 vertices, stored as per-vertex
/// adjacency bitsets. Immutable by convention once built; all operations
/// return new graphs.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph complete(int n);
    static Graph cycle(int n);

    int vertex_count() const { return n_; }
    int edge_count() const;
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return vtest(adj_[u], v); }
    VertexSet neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return vcount(adj_[v]); }
    std::vector<std::pair<int, int>> edges() const;

    Graph complement() const;

    /// Result of vertex removal; old_to_new[v] == -1 for removed vertices.
    struct Induced;

    /// Induced subgraph on V \ s, vertices reindexed contiguously.
    Induced delete_vertices(VertexSet s) const;
    /// Induced subgraph on the kept set (complement view of delete_vertices).
    Induced induced(VertexSet keep) const;
    /// Deletes v together with its neighborhood.
    Induced destroy(int v) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    void check_invariants() const;  // throws std::logic_error on violation

private:
    int n_ = 0;
    std::vector<VertexSet> adj_;
};

struct Graph::Induced {
    Graph graph;
    std::vector<int> old_to_new;
    std::vector<int> new_to_old;
};

/// Stability number by bitset branch and bound; exact for n <= 64.
int alpha(const Graph& g);
/// Clique number; alpha of the complement.
int omega(const Graph& g);
/// One maximum stable set.
VertexSet max_stable_set(const Graph& g);
/// Max clique restricted to the induced subgraph on `allowed`.
int omega_within(const Graph& g, VertexSet allowed);

bool is_stable_set(const Graph& g, VertexSet s);
bool is_clique(const Graph& g, VertexSet s);

/// All stable sets of exactly the given size, in increasing bitmask order.
std::vector<VertexSet> stable_sets(const Graph& g, int size);
/// All stable sets (any size), increasing bitmask order. Use only for small n.
std::vector<VertexSet> all_stable_sets(const Graph& g);

// graph6 and JSON adjacency-list encodings (graph_io.cpp).
std::string to_graph6(const Graph& g);
Graph from_graph6(const std::string& s);
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

}  // namespace liftrank
