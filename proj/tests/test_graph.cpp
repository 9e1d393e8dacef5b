#include <doctest.h>

#include <random>

#include "liftrank/graph.hpp"

using namespace liftrank;

namespace liftrank_test {
extern unsigned seed;
}

namespace {

Graph random_graph(std::mt19937& rng, int n, double p) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

// independent oracle: scan all subsets
int alpha_bruteforce(const Graph& g) {
    int best = 0;
    for (VertexSet s = 0; s < (VertexSet{1} << g.vertex_count()); ++s)
        if (is_stable_set(g, s)) best = std::max(best, vcount(s));
    return best;
}

}  // namespace

TEST_CASE("complete graphs") {
    CHECK(Graph::complete(0).vertex_count() == 0);
    CHECK(Graph::complete(0).edge_count() == 0);
    CHECK(Graph::complete(3).edge_count() == 3);
    CHECK(Graph::complete(6).edge_count() == 15);
}

TEST_CASE("delete and destroy") {
    Graph k3 = Graph::complete(3);
    auto d = k3.delete_vertices(vbit(1));
    CHECK(d.graph.vertex_count() == 2);
    CHECK(d.graph.edge_count() == 1);  // K_2
    CHECK(d.old_to_new[1] == -1);
    CHECK(d.old_to_new[2] == 1);

    auto same = k3.delete_vertices(0);
    CHECK(same.graph == k3);

    // destroying any vertex of K_3 empties it
    CHECK(k3.destroy(0).graph.vertex_count() == 0);

    // path a-b-c: destroy the middle
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(path.destroy(1).graph.vertex_count() == 0);
    CHECK(path.destroy(0).graph.vertex_count() == 1);

    CHECK_THROWS(k3.delete_vertices(vbit(5)));
}

TEST_CASE("destroy equals delete of closed neighborhood") {
    std::mt19937 rng(liftrank_test::seed);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(rng, 8, 0.4);
        for (int v = 0; v < 8; ++v)
            CHECK(g.destroy(v).graph == g.delete_vertices(g.neighbors(v) | vbit(v)).graph);
    }
}

TEST_CASE("composed deletions") {
    std::mt19937 rng(liftrank_test::seed + 1);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 9, 0.35);
        VertexSet s1 = rng() & vall(9);
        auto first = g.delete_vertices(s1);
        VertexSet s2_old = rng() & vall(9) & ~s1;
        VertexSet s2_new = 0;
        for (int v : vmembers(s2_old)) s2_new |= vbit(first.old_to_new[v]);
        CHECK(first.graph.delete_vertices(s2_new).graph ==
              g.delete_vertices(s1 | s2_old).graph);
    }
}

TEST_CASE("alpha against subset enumeration") {
    CHECK(alpha(Graph::complete(5)) == 1);
    CHECK(alpha(Graph::cycle(5)) == 2);
    CHECK(alpha(Graph(4)) == 4);
    std::mt19937 rng(liftrank_test::seed + 2);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 10);
        Graph g = random_graph(rng, n, 0.1 + 0.08 * (rng() % 10));
        CHECK(alpha(g) == alpha_bruteforce(g));
        VertexSet witness = max_stable_set(g);
        CHECK(is_stable_set(g, witness));
        CHECK(vcount(witness) == alpha(g));
    }
}

TEST_CASE("alpha oracle at the upper size range") {
    std::mt19937 rng(liftrank_test::seed + 7);
    for (int n : {17, 18, 20}) {
        Graph g = random_graph(rng, n, 0.3);
        int brute = 0;
        for (VertexSet s = 0; s < (VertexSet{1} << n); ++s)
            if (is_stable_set(g, s)) brute = std::max(brute, vcount(s));
        CHECK(alpha(g) == brute);
    }
}

TEST_CASE("omega is alpha of the complement") {
    CHECK(omega(Graph::complete(6)) == 6);
    std::mt19937 rng(liftrank_test::seed + 3);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(rng, 10, 0.5);
        CHECK(omega(g) == alpha(g.complement()));
    }
}

TEST_CASE("stable set listing") {
    Graph k3 = Graph::complete(3);
    CHECK(stable_sets(k3, 1).size() == 3);
    CHECK(stable_sets(k3, 2).empty());
    CHECK(stable_sets(k3, 0) == std::vector<VertexSet>{0});

    std::mt19937 rng(liftrank_test::seed + 4);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 9, 0.4);
        for (int size = 0; size <= 4; ++size) {
            auto fast = stable_sets(g, size);
            std::vector<VertexSet> slow;
            for (VertexSet s = 0; s < (VertexSet{1} << 9); ++s)
                if (vcount(s) == size && is_stable_set(g, s)) slow.push_back(s);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("graph6 round trip") {
    CHECK(to_graph6(Graph::complete(3)) == "Bw");
    Graph k2 = Graph::complete(2);
    CHECK(to_graph6(k2) == "A_");
    CHECK(from_graph6("Bw") == Graph::complete(3));

    std::mt19937 rng(liftrank_test::seed + 5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = static_cast<int>(rng() % 16);
        Graph g = random_graph(rng, n, 0.4);
        CHECK(from_graph6(to_graph6(g)) == g);
    }
    CHECK_THROWS(from_graph6(""));
    CHECK_THROWS(from_graph6("D"));  // truncated 5-vertex header
}

TEST_CASE("json round trip") {
    std::mt19937 rng(liftrank_test::seed + 6);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(rng, 7, 0.5);
        CHECK(graph_from_json(graph_to_json(g)) == g);
    }
    CHECK_THROWS(graph_from_json("{\"n\": 2, \"adj\": [[1], []]}"));  // asymmetric
}
