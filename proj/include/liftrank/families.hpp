#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liftrank/graph.hpp"
#include "liftrank/stretching.hpp"

namespace liftrank {

enum class FamilyKind { A, AS, B, BPrime, HPrime, Named };
enum class NamedId { G21, G22, G31, G41, Fig7 };

struct FamilySpec {
    FamilyKind kind = FamilyKind::A;
    int k = 0;
    VertexSet s = 0;  // AS only: 0-based base indices, subset of {3..k-1}
    NamedId name = NamedId::G21;
};

struct FamilyGraph {
    Graph graph;
    std::optional<StretchedClique> sc;  // every family except B carries labels
    std::string name;
};

FamilyGraph construct(const FamilySpec& spec);

StretchedClique make_a(int k);
StretchedClique make_a_s(int k, VertexSet s);
Graph make_b(int k);                 // k odd, >= 3
StretchedClique make_b_prime(int k); // B_k minus its outer layer
StretchedClique make_h_prime(int k);
StretchedClique make_named(NamedId id);

/// 1-based wrap-around arithmetic: result in [1..n], congruent to a+b mod n.
int modular_add(int a, int b, int n);
int modular_sub(int a, int b, int n);

/// The three generators used to show B_k is vertex-transitive, as permutation
/// vectors over V(B_k).
std::array<std::vector<int>, 3> bk_automorphisms(int k);

/// True iff every generator is an automorphism and the generated group acts
/// with a single vertex orbit.
bool is_vertex_transitive_via(const Graph& g, const std::vector<std::vector<int>>& gens);

/// CLI-facing names: a, a-s, b, b-prime, h-prime, g21, g22, g31, g41, fig7.
/// s_csv gives A_{k,S} members by their 1-based indices, e.g. "4,6".
FamilySpec parse_family_spec(const std::string& name, int k, const std::string& s_csv);

}  // namespace liftrank
