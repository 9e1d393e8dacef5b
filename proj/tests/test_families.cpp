#include <doctest.h>

#include <set>

#include "liftrank/canonical.hpp"
#include "liftrank/families.hpp"

using namespace liftrank;

TEST_CASE("modular wrap-around arithmetic") {
    CHECK(modular_add(3, 2, 5) == 5);
    CHECK(modular_add(4, 3, 5) == 2);
    CHECK(modular_sub(1, 2, 5) == 4);
    CHECK(modular_add(5, 5, 5) == 5);
    for (int a = 1; a <= 7; ++a)
        for (int b = -7; b <= 7; ++b) {
            int c = modular_add(a, b, 7);
            CHECK(c >= 1);
            CHECK(c <= 7);
            CHECK((a + b - c) % 7 == 0);
        }
}

TEST_CASE("a-family basics") {
    StretchedClique a3 = make_a(3);
    CHECK(a3.graph == Graph::complete(3));
    CHECK(a3.d() == 0);

    StretchedClique a5 = make_a(5);
    CHECK(a5.graph.vertex_count() == 9);
    CHECK(a5.graph.edge_count() == 14);  // (k^2+3k-12)/2 at k = 5
    CHECK(alpha(a5.graph) == 3);
    CHECK(a5.stretched_bases() == (vbit(3) | vbit(4)));

    for (int k = 4; k <= 9; ++k) {
        StretchedClique ak = make_a(k);
        CHECK(ak.graph.vertex_count() == 3 * (k - 2));
        CHECK(ak.graph.edge_count() == (k * k + 3 * k - 12) / 2);
        CHECK(in_hat(ak));
        CHECK(in_tilde(ak));
        CHECK(alpha(ak.graph) == k - 2);
        CHECK(omega(ak.graph) == 3);
    }
}

TEST_CASE("a-family with extra base-1 edges") {
    for (int k = 4; k <= 8; ++k) {
        VertexSet full = vall(k) & ~vall(3);
        StretchedClique as = make_a_s(k, full);
        CHECK(as.graph.edge_count() == (k * k + 5 * k - 18) / 2);
        CHECK(in_hat(as));
        CHECK(alpha(as.graph) == k - 2);
    }
    for (int k = 4; k <= 8; ++k) {
        VertexSet all_s = vall(k) & ~vall(3);
        for (VertexSet s = 0;; s = (s - all_s) & all_s) {
            CHECK(omega(make_a_s(k, s).graph) == 3);
            if (s == all_s) break;
        }
    }
}

TEST_CASE("distinct S give non-isomorphic graphs at k = 6") {
    VertexSet all_s = vbit(3) | vbit(4) | vbit(5);
    std::set<std::string> keys;
    int count = 0;
    for (VertexSet s = 0;; s = (s - all_s) & all_s) {
        keys.insert(canonical(make_a_s(6, s).graph).key);
        ++count;
        if (s == all_s) break;
    }
    CHECK(count == 8);
    CHECK(keys.size() == 8);
}

TEST_CASE("degree bookkeeping under S") {
    for (int k = 5; k <= 7; ++k) {
        VertexSet all_s = vall(k) & ~vall(3);
        for (VertexSet s = 0;; s = (s - all_s) & all_s) {
            StretchedClique as = make_a_s(k, s);
            int v1 = as.vertex_of(1, Role::Unstretched);
            CHECK(as.graph.degree(v1) == (k - 1) + vcount(s));
            // the wing adjacent to base 0 has degree k-i+1, plus one if i in S
            int v0 = as.vertex_of(0, Role::Unstretched);
            for (int i = 3; i < k; ++i) {
                for (int w : vmembers(as.wing_vertices(i))) {
                    if (!vtest(as.graph.neighbors(w), v0)) continue;
                    CHECK(as.graph.degree(w) == k - i + 1 + (vtest(s, i) ? 1 : 0));
                }
            }
            if (s == all_s) break;
        }
    }
}

TEST_CASE("b-family structure") {
    for (int k : {3, 5, 7}) {
        Graph b = make_b(k);
        CHECK(b.vertex_count() == 4 * k);
        CHECK(b.edge_count() == k * (k + 3));
        for (int v = 0; v < b.vertex_count(); ++v) CHECK(b.degree(v) == (k + 3) / 2);
    }
    CHECK_THROWS(make_b(4));
}

TEST_CASE("b-family automorphisms act transitively") {
    for (int k : {3, 5, 7}) {
        Graph b = make_b(k);
        auto fs = bk_automorphisms(k);
        CHECK(is_vertex_transitive_via(b, {fs[0], fs[1], fs[2]}));
    }
    Graph k2 = Graph::complete(2);
    CHECK(!is_vertex_transitive_via(k2, {{0, 1}}));  // identity only: orbit of size 1
    Graph k1 = Graph::complete(1);
    CHECK(is_vertex_transitive_via(k1, {{0}}));
    Graph p3(3);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(!is_vertex_transitive_via(p3, {{1, 0, 2}, {2, 1, 0}}));
    CHECK_THROWS(is_vertex_transitive_via(p3, {{0, 0, 1}}));
}

TEST_CASE("layer deletion gives the stretched-clique view") {
    for (int k : {3, 5, 7}) {
        Graph b = make_b(k);
        VertexSet layer3 = 0;
        for (int i = 0; i < k; ++i) layer3 |= vbit(4 * i + 3);
        Graph trimmed = b.delete_vertices(layer3).graph;
        StretchedClique bp = make_b_prime(k);
        CHECK(isomorphic_bruteforce(trimmed, bp.graph));
        CHECK(bp.base_n == k);
        CHECK(bp.d() == k);
        CHECK(omega(bp.graph) == 2);
        CHECK(in_hat(bp));
        CHECK(alpha(bp.graph) == k + 1);
    }
    Graph b5 = make_b(5);
    StretchedClique bp5 = make_b_prime(5);
    for (int layer = 0; layer < 4; ++layer) {
        VertexSet mask = 0;
        for (int i = 0; i < 5; ++i) mask |= vbit(4 * i + layer);
        CHECK(isomorphic_bruteforce(b5.delete_vertices(mask).graph, bp5.graph));
    }
    CHECK(isomorphic_bruteforce(make_b_prime(3).graph, Graph::cycle(9)));
}

TEST_CASE("h-prime family") {
    for (int k = 3; k <= 6; ++k) {
        StretchedClique h = make_h_prime(k);
        CHECK(h.graph.vertex_count() == 2 + 3 * (k - 2));
        CHECK(h.d() == k - 2);
        CHECK(in_tilde(h));
        CHECK(alpha(h.graph) == k - 1);
        if (k >= 4) CHECK(!in_hat(h));  // stretched pairs carry two edges each
    }
}

TEST_CASE("named graphs from the figures") {
    StretchedClique g21 = make_named(NamedId::G21);
    CHECK(g21.graph.vertex_count() == 6);
    CHECK(g21.graph.edge_count() == 8);
    CHECK(alpha(g21.graph) == 2);
    CHECK(omega(g21.graph) == 3);
    CHECK(in_hat(g21));

    StretchedClique g22 = make_named(NamedId::G22);
    CHECK(g22.graph.vertex_count() == 6);
    CHECK(g22.graph.edge_count() == 9);
    CHECK(alpha(g22.graph) == 2);
    CHECK(omega(g22.graph) == 3);
    CHECK(canonical(g21.graph).key != canonical(g22.graph).key);

    StretchedClique g31 = make_named(NamedId::G31);
    CHECK(g31.graph.vertex_count() == 9);
    CHECK(g31.graph.edge_count() == 14);
    CHECK(alpha(g31.graph) == 3);
    CHECK(omega(g31.graph) == 3);
    CHECK(in_hat(g31));

    StretchedClique g41 = make_named(NamedId::G41);
    CHECK(g41.graph.vertex_count() == 12);
    CHECK(g41.graph.edge_count() == 24);
    CHECK(alpha(g41.graph) == 4);
    CHECK(omega(g41.graph) == 3);
    CHECK(in_hat(g41));
    CHECK(in_tilde(g41));

    StretchedClique fig7 = make_named(NamedId::Fig7);
    CHECK(fig7.graph.vertex_count() == 9);
    CHECK(fig7.graph.edge_count() == 16);
    CHECK(alpha(fig7.graph) == 3);
    CHECK(omega(fig7.graph) == 3);
    CHECK(in_tilde(fig7));
    CHECK(!in_hat(fig7));
    CHECK(canonical(fig7.graph).key != canonical(g31.graph).key);

    // destroying either hub of the 9-vertex tilde example lands on the two
    // 6-vertex named graphs
    auto down4 = destroy_hub(fig7, 3);
    auto down5 = destroy_hub(fig7, 4);
    bool one_way = isomorphic_bruteforce(down4.sc.graph, g22.graph) &&
                   isomorphic_bruteforce(down5.sc.graph, g21.graph);
    bool other_way = isomorphic_bruteforce(down4.sc.graph, g21.graph) &&
                     isomorphic_bruteforce(down5.sc.graph, g22.graph);
    CHECK((one_way || other_way));
}

TEST_CASE("family spec parsing") {
    FamilySpec a = parse_family_spec("a", 5, "");
    CHECK(a.kind == FamilyKind::A);
    CHECK(construct(a).graph.vertex_count() == 9);

    FamilySpec as = parse_family_spec("a-s", 6, "4,6");
    CHECK(as.kind == FamilyKind::AS);
    CHECK(as.s == (vbit(3) | vbit(5)));
    CHECK_THROWS(parse_family_spec("a-s", 6, "3"));

    CHECK(parse_family_spec("b", 5, "").kind == FamilyKind::B);
    CHECK(parse_family_spec("g41", 0, "").kind == FamilyKind::Named);
    CHECK_THROWS(parse_family_spec("nope", 3, ""));

    CHECK(construct(parse_family_spec("fig7", 0, "")).sc.has_value());
    CHECK(!construct(parse_family_spec("b", 3, "")).sc.has_value());
}
