#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liftrank/graph.hpp"

namespace liftrank {

enum class Role : std::uint8_t { Unstretched = 0, Hub = 1, Wing1 = 2, Wing2 = 3 };

struct VertexLabel {
    int base = 0;
    Role role = Role::Unstretched;
    bool operator==(const VertexLabel&) const = default;
};

/// A graph together with provenance labels witnessing how it was obtained by
/// 2-stretching some vertices of a complete graph. Base indices run over
/// [0, base_n); a stretched base contributes a hub and two wings, an
/// unstretched base a single vertex.
struct StretchedClique {
    Graph graph;
    int base_n = 0;
    std::vector<VertexLabel> labels;

    int d() const;
    VertexSet stretched_bases() const;
    bool is_stretched(int base) const;
    int vertex_of(int base, Role role) const;  // -1 if absent
    VertexSet hub_vertices() const;            // the set D_0
    VertexSet associated(int base) const;
    VertexSet wing_vertices(int base) const;

    void check() const;  // throws std::logic_error when labels are inconsistent
};

/// General k-stretching of one vertex: v is replaced by a hub adjacent to k
/// wings, wing j additionally adjacent to parts[j]. Parts may be empty or
/// improper but must each lie inside Gamma(v) and jointly cover it.
struct StretchResult {
    Graph graph;
    std::vector<int> old_to_new;  // -1 for the stretched vertex
    int hub = -1;
    std::vector<int> wings;
};
StretchResult stretch(const Graph& g, int v, const std::vector<VertexSet>& parts);

/// Names a vertex of a partially built stretched clique: wing 0 is the (still
/// unstretched) base vertex itself, wings 1/2 address earlier stretchings.
struct Vref {
    int base = 0;
    int wing = 0;
};

struct StretchOp2 {
    int base_vertex = 0;
    std::vector<Vref> a1, a2;
};

/// Applies the given 2-stretchings to K_{base_n} in input order. Wing
/// numbering in the result is normalized by lexicographic minimality of
/// tilde_gamma, so label equality is meaningful.
StretchedClique build_stretched(int base_n, const std::vector<StretchOp2>& ops);

/// Wraps an explicitly built graph + label assignment into a StretchedClique:
/// relayouts vertices into the canonical order, normalizes wing numbering and
/// validates the invariants.
StretchedClique make_stretched(const Graph& g, int base_n, const std::vector<VertexLabel>& labels);

/// Base indices j != i such that the wing has an edge to a vertex associated
/// with j.
VertexSet tilde_gamma(const StretchedClique& sc, int wing_vertex);

bool in_tilde(const StretchedClique& sc);
bool in_hat(const StretchedClique& sc);

struct Decomposition {
    VertexSet core = 0;                         // C_0, original vertex indices
    std::vector<std::pair<int, int>> edges;     // each (hub, wing), original indices
};

/// One stretched-clique decomposition obtained by greedy peeling; the core
/// induces a member of tilde-K. Not necessarily of minimum size.
Decomposition decompose(const StretchedClique& sc);

/// Exact minimum number of edges over all stretched-clique decompositions.
int deficiency(const StretchedClique& sc);

struct CoreResult {
    StretchedClique core;
    std::vector<int> old_to_new;
    Decomposition decomposition;  // a minimum one
    // per peeled edge, in peel order: (surviving wing original index,
    // removed wing's neighbors minus its hub, original indices)
    std::vector<std::pair<int, VertexSet>> peels;
};

/// Core stretched clique under a minimum decomposition; the surviving wing of
/// each peeled index is relabeled unstretched.
CoreResult core(const StretchedClique& sc);

/// Family-preserving reductions with labels remapped.
struct ScInduced {
    StretchedClique sc;
    std::vector<int> old_to_new;
};
ScInduced delete_unstretched(const StretchedClique& sc, int base);
ScInduced destroy_hub(const StretchedClique& sc, int base);

std::string stretched_to_json(const StretchedClique& sc);
StretchedClique stretched_from_json(const std::string& text);

/// Role-colored canonical key (unstretched/hub/wing); wing1 and wing2 share a
/// color. Used for label-aware isomorphism and memoization.
std::string role_canonical_key(const StretchedClique& sc);

}  // namespace liftrank
