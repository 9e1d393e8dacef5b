#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "liftrank/canonical.hpp"
#include "liftrank/enumeration.hpp"
#include "liftrank/families.hpp"

using namespace liftrank;

namespace liftrank_test {
extern unsigned seed;
}

TEST_CASE("filter sanity") {
    EnumerationFilter f;
    f.require_hat = true;
    f.complement_of_hat = true;
    CHECK_THROWS(f.check());
}

TEST_CASE("degenerate and tiny cases") {
    EnumerationFilter none;
    EnumerationResult kn = enumerate_knd(5, 0, none);
    CHECK(kn.entries.size() == 1);  // only K_5 itself
    CHECK(kn.entries[0].alpha == 1);
    CHECK(kn.entries[0].hat);
    CHECK(kn.entries[0].tilde);
    CHECK(kn.entries[0].deficiency == 0);

    // one stretched vertex of K_4: classes listed by hand are small
    EnumerationResult k41 = enumerate_knd(4, 1, none);
    CHECK(!k41.entries.empty());
    for (const auto& e : k41.entries) {
        CHECK(e.alpha == 2);
        Graph g = from_graph6(e.graph6);
        CHECK(g.vertex_count() == 6);
    }
    // stretching any single vertex of the complete graph gives the same set
    // (vertex transitivity): rerunning must be deterministic and identical
    EnumerationResult again = enumerate_knd(4, 1, none);
    REQUIRE(again.entries.size() == k41.entries.size());
    for (std::size_t i = 0; i < again.entries.size(); ++i)
        CHECK(again.entries[i].graph6 == k41.entries[i].graph6);
}

TEST_CASE("labeling search matches construction flags") {
    auto g21 = make_named(NamedId::G21);
    auto labelings = find_labelings(g21.graph, 4, 1);
    CHECK(!labelings.empty());
    bool any_hat = false;
    for (const auto& sc : labelings) any_hat = any_hat || in_hat(sc);
    CHECK(any_hat);

    // the 9-cycle has many labelings as a fully stretched triangle
    auto c9 = find_labelings(Graph::cycle(9), 3, 3);
    CHECK(!c9.empty());
    for (const auto& sc : c9) CHECK(in_hat(sc));

    // no labeling on a graph of the wrong size
    CHECK(find_labelings(Graph::cycle(8), 3, 3).empty());
}

TEST_CASE("the two 6-vertex minimal graphs appear in the hat catalog") {
    EnumerationFilter f;
    f.require_hat = true;
    f.max_omega = 3;
    EnumerationResult res = enumerate_knd(4, 1, f);
    CHECK(res.entries.size() == 2);
    std::set<std::string> keys;
    for (const auto& e : res.entries) keys.insert(canonical(from_graph6(e.graph6)).key);
    CHECK(keys.count(canonical(make_named(NamedId::G21).graph).key) == 1);
    CHECK(keys.count(canonical(make_named(NamedId::G22).graph).key) == 1);
}

TEST_CASE("five-two enumeration hits the published counts") {
    EnumerationFilter hat;
    hat.require_hat = true;
    hat.max_omega = 3;
    EnumerationResult h = enumerate_knd(5, 2, hat);
    CHECK(h.entries.size() == 13);

    EnumerationFilter nonhat;
    nonhat.complement_of_hat = true;
    nonhat.max_omega = 3;
    EnumerationResult nh = enumerate_knd(5, 2, nonhat);
    CHECK(nh.entries.size() == 25);

    // every entry satisfies the structural invariants
    for (const auto& res : {h, nh}) {
        for (std::size_t i = 0; i < res.entries.size(); ++i) {
            const auto& e = res.entries[i];
            Graph g = from_graph6(e.graph6);
            CHECK(g.vertex_count() == 9);
            CHECK(e.alpha == 3);
            CHECK(e.omega <= 3);
            CHECK(alpha(g) == 3);
            CHECK(res.witnesses[i].graph.vertex_count() == 9);
        }
    }

    // the 9-vertex family members are among the 13
    std::set<std::string> hat_keys;
    for (const auto& e : h.entries) hat_keys.insert(canonical(from_graph6(e.graph6)).key);
    CHECK(hat_keys.count(canonical(make_a(5).graph).key) == 1);
    CHECK(hat_keys.count(canonical(make_named(NamedId::G31).graph).key) == 1);
    // the 9-vertex tilde example lives on the other side
    std::set<std::string> nonhat_keys;
    for (const auto& e : nh.entries) nonhat_keys.insert(canonical(from_graph6(e.graph6)).key);
    CHECK(nonhat_keys.count(canonical(make_named(NamedId::Fig7).graph).key) == 1);

    // dedup soundness: pairwise non-isomorphic under the brute-force check
    for (const auto& res : {h, nh})
        for (std::size_t i = 0; i < res.entries.size(); ++i)
            for (std::size_t j = i + 1; j < res.entries.size(); ++j)
                CHECK(!isomorphic_bruteforce(from_graph6(res.entries[i].graph6),
                                             from_graph6(res.entries[j].graph6)));

    // dedup completeness: random relabelings land back in the catalog
    std::mt19937 rng(liftrank_test::seed + 50);
    for (const auto& e : h.entries) {
        Graph g = from_graph6(e.graph6);
        std::vector<int> perm(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) perm[v] = v;
        for (int rep = 0; rep < 20; ++rep) {
            std::shuffle(perm.begin(), perm.end(), rng);
            Graph p(g.vertex_count());
            for (auto [u, v] : g.edges()) p.add_edge(perm[u], perm[v]);
            CHECK(hat_keys.count(canonical(p).key) == 1);
        }
    }
}

TEST_CASE("six-three catalog cross-validates against a direct construction") {
    // Independent oracle: members with a one-edge-per-pair labeling are
    // exactly the graphs assembled from a triangle, three hub/wing triples,
    // a wing cover choice per (stretched, unstretched) pair and one wing-wing
    // slot per stretched pair. No stretching code involved.
    std::set<std::string> direct;
    const int hubs[3] = {3, 6, 9};
    const int wings[3][2] = {{4, 5}, {7, 8}, {10, 11}};
    for (long long code = 0; code < 19683; ++code) {  // 3^9 cover choices
        long long c = code;
        int assign[9];
        for (int t = 0; t < 9; ++t) {
            assign[t] = static_cast<int>(c % 3);
            c /= 3;
        }
        for (long long pc = 0; pc < 64; ++pc) {  // 4^3 wing-wing slots
            long long p = pc;
            Graph g(12);
            g.add_edge(0, 1);
            g.add_edge(0, 2);
            g.add_edge(1, 2);
            for (int i = 0; i < 3; ++i) {
                g.add_edge(hubs[i], wings[i][0]);
                g.add_edge(hubs[i], wings[i][1]);
            }
            for (int i = 0; i < 3; ++i)
                for (int u = 0; u < 3; ++u) {
                    int a = assign[3 * i + u];
                    if (a == 0 || a == 2) g.add_edge(wings[i][0], u);
                    if (a == 1 || a == 2) g.add_edge(wings[i][1], u);
                }
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    int s = static_cast<int>(p % 4);
                    p /= 4;
                    g.add_edge(wings[i][s / 2], wings[j][s % 2]);
                }
            if (omega(g) <= 3) direct.insert(canonical(g).key);
        }
    }
    EnumerationFilter hat;
    hat.require_hat = true;
    hat.max_omega = 3;
    EnumerationResult res = enumerate_knd(6, 3, hat);
    std::set<std::string> catalog;
    for (const auto& e : res.entries) catalog.insert(canonical(from_graph6(e.graph6)).key);
    CHECK(catalog == direct);
    CHECK(catalog.size() == 216);
    for (const auto& e : res.entries) {
        CHECK(e.alpha == 4);
        CHECK(from_graph6(e.graph6).vertex_count() == 12);
    }
    // sampled pairwise non-isomorphism at this size
    std::mt19937 rng(liftrank_test::seed + 51);
    for (int rep = 0; rep < 50; ++rep) {
        std::size_t i = rng() % res.entries.size();
        std::size_t j = rng() % res.entries.size();
        if (i == j) continue;
        CHECK(!isomorphic_bruteforce(from_graph6(res.entries[i].graph6),
                                     from_graph6(res.entries[j].graph6)));
    }
}

TEST_CASE("the choice of stretched vertices does not matter") {
    // stretching vertex 3 of K_4 (the designated target) vs vertex 0 by hand
    EnumerationFilter none;
    EnumerationResult res = enumerate_knd(4, 1, none);
    std::set<std::string> catalog;
    for (const auto& e : res.entries) catalog.insert(canonical(from_graph6(e.graph6)).key);
    Graph k4 = Graph::complete(4);
    std::set<std::string> via_zero;
    VertexSet gamma = k4.neighbors(0);
    for (VertexSet a1 = 0;; a1 = (a1 - gamma) & gamma) {
        for (VertexSet b = 0;; b = (b - a1) & a1) {
            VertexSet a2 = (gamma & ~a1) | b;
            via_zero.insert(canonical(stretch(k4, 0, {a1, a2}).graph).key);
            if (b == a1) break;
        }
        if (a1 == gamma) break;
    }
    CHECK(via_zero == catalog);
}

TEST_CASE("catalog io round trip") {
    EnumerationFilter f;
    f.require_hat = true;
    f.max_omega = 3;
    EnumerationResult res = enumerate_knd(4, 1, f);
    std::stringstream ss;
    write_catalog(ss, res);
    EnumerationResult back = read_catalog(ss, 4, 1);
    REQUIRE(back.entries.size() == res.entries.size());
    for (std::size_t i = 0; i < res.entries.size(); ++i) {
        CHECK(back.entries[i].graph6 == res.entries[i].graph6);
        CHECK(back.entries[i].omega == res.entries[i].omega);
        CHECK(back.entries[i].hat == res.entries[i].hat);
        CHECK(back.entries[i].deficiency == res.entries[i].deficiency);
    }
    std::stringstream bad("not-a-catalog-line\n");
    CHECK_THROWS(read_catalog(bad, 4, 1));
}
