#include "liftrank/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace liftrank {

Graph::Graph(int n) : n_(n), adj_(n, 0) {
    if (n < 0 || n > 64) throw std::invalid_argument("Graph: vertex count must be in [0,64]");
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.adj_[v] = vall(n) & ~vbit(v);
    return g;
}

Graph Graph::cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

int Graph::edge_count() const {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("Graph: loop edge");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("Graph: vertex out of range");
    adj_[u] |= vbit(v);
    adj_[v] |= vbit(u);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u) {
        VertexSet higher = adj_[u] & ~vall(u + 1);
        while (higher) {
            out.emplace_back(u, vfirst(higher));
            higher &= higher - 1;
        }
    }
    return out;
}

Graph Graph::complement() const {
    Graph g(n_);
    for (int v = 0; v < n_; ++v) g.adj_[v] = vall(n_) & ~adj_[v] & ~vbit(v);
    return g;
}

Graph::Induced Graph::delete_vertices(VertexSet s) const {
    if (s & ~vall(n_)) throw std::out_of_range("delete_vertices: set exceeds vertex range");
    return induced(vall(n_) & ~s);
}

Graph::Induced Graph::induced(VertexSet keep) const {
    keep &= vall(n_);
    Induced out;
    out.old_to_new.assign(n_, -1);
    for (int v = 0; v < n_; ++v) {
        if (vtest(keep, v)) {
            out.old_to_new[v] = static_cast<int>(out.new_to_old.size());
            out.new_to_old.push_back(v);
        }
    }
    out.graph = Graph(static_cast<int>(out.new_to_old.size()));
    for (int nv = 0; nv < out.graph.vertex_count(); ++nv) {
        VertexSet nb = adj_[out.new_to_old[nv]] & keep;
        while (nb) {
            int ov = vfirst(nb);
            nb &= nb - 1;
            if (out.old_to_new[ov] > nv) out.graph.add_edge(nv, out.old_to_new[ov]);
        }
    }
    return out;
}

Graph::Induced Graph::destroy(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("destroy: vertex out of range");
    return delete_vertices(adj_[v] | vbit(v));
}

void Graph::check_invariants() const {
    for (int v = 0; v < n_; ++v) {
        if (vtest(adj_[v], v)) throw std::logic_error("graph has a loop");
        if (adj_[v] & ~vall(n_)) throw std::logic_error("neighbor index out of range");
        VertexSet nb = adj_[v];
        while (nb) {
            int u = vfirst(nb);
            nb &= nb - 1;
            if (!vtest(adj_[u], v)) throw std::logic_error("adjacency not symmetric");
        }
    }
}

namespace {

// Max clique branch and bound on adjacency bitsets, greedy bound by
// candidate-set popcount.
void clique_search(const std::vector<VertexSet>& adj, VertexSet cand, int size, int& best,
                   VertexSet cur, VertexSet* best_set) {
    while (cand) {
        if (size + vcount(cand) <= best) return;
        int v = vfirst(cand);
        cand &= cand - 1;
        VertexSet next = cand & adj[v];
        if (size + 1 > best) {
            best = size + 1;
            if (best_set) *best_set = cur | vbit(v);
        }
        clique_search(adj, next, size + 1, best, cur | vbit(v), best_set);
    }
}

}  // namespace

int omega_within(const Graph& g, VertexSet allowed) {
    std::vector<VertexSet> adj(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v) & allowed;
    int best = 0;
    clique_search(adj, allowed & vall(g.vertex_count()), 0, best, 0, nullptr);
    return best;
}

int omega(const Graph& g) { return omega_within(g, vall(g.vertex_count())); }

int alpha(const Graph& g) { return omega(g.complement()); }

VertexSet max_stable_set(const Graph& g) {
    Graph co = g.complement();
    std::vector<VertexSet> adj(co.vertex_count());
    for (int v = 0; v < co.vertex_count(); ++v) adj[v] = co.neighbors(v);
    int best = 0;
    VertexSet best_set = 0;
    clique_search(adj, vall(co.vertex_count()), 0, best, 0, &best_set);
    return best_set;
}

bool is_stable_set(const Graph& g, VertexSet s) {
    VertexSet rest = s;
    while (rest) {
        int v = vfirst(rest);
        rest &= rest - 1;
        if (g.neighbors(v) & s) return false;
    }
    return true;
}

bool is_clique(const Graph& g, VertexSet s) {
    VertexSet rest = s;
    while (rest) {
        int v = vfirst(rest);
        rest &= rest - 1;
        if ((g.neighbors(v) & s) != (s & ~vbit(v))) return false;
    }
    return true;
}

namespace {

void stable_rec(const Graph& g, int from, VertexSet cur, VertexSet forbidden, int remaining,
                std::vector<VertexSet>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int v = from; v <= g.vertex_count() - remaining; ++v) {
        if (vtest(forbidden, v)) continue;
        stable_rec(g, v + 1, cur | vbit(v), forbidden | g.neighbors(v), remaining - 1, out);
    }
}

}  // namespace

std::vector<VertexSet> stable_sets(const Graph& g, int size) {
    std::vector<VertexSet> out;
    if (size >= 0) stable_rec(g, 0, 0, 0, size, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> all_stable_sets(const Graph& g) {
    std::vector<VertexSet> out;
    for (int k = 0; k <= g.vertex_count(); ++k) {
        auto part = stable_sets(g, k);
        if (part.empty() && k > 0) break;
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace liftrank
