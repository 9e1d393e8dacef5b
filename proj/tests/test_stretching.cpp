#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>

#include "liftrank/canonical.hpp"
#include "liftrank/stretching.hpp"

using namespace liftrank;

namespace liftrank_test {
extern unsigned seed;
}

namespace {

// K_6 with vertex 4 (0-based) 2-stretched: parts {2,3,5} and {0,1,5}
StretchedClique chain_g2() {
    return build_stretched(6, {{4, {{2, 0}, {3, 0}, {5, 0}}, {{0, 0}, {1, 0}, {5, 0}}}});
}

// ... then vertex 5 stretched with parts {2, wing2-of-4} and {0,1,2,3, wing1-of-4}
StretchedClique chain_g3() {
    std::vector<StretchOp2> ops;
    ops.push_back({4, {{2, 0}, {3, 0}, {5, 0}}, {{0, 0}, {1, 0}, {5, 0}}});
    ops.push_back({5, {{2, 0}, {4, 2}}, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 1}}});
    return build_stretched(6, ops);
}

Graph chain_g3_reference() {
    Graph g(10);  // 0..3 plain; 4,5,6 = first triple (hub,w,w); 7,8,9 = second
    int edges[][2] = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}, {5, 4}, {6, 4},
                      {8, 7}, {9, 7}, {2, 5}, {3, 5}, {0, 6}, {1, 6}, {9, 0}, {9, 1},
                      {9, 2}, {9, 3}, {9, 5}, {8, 2}, {8, 6}};
    for (auto& e : edges) g.add_edge(e[0], e[1]);
    return g;
}

StretchedClique hat_example(bool second) {
    // the two 12-vertex illustrations of the one-edge-per-pair condition
    Graph g(12);
    std::vector<VertexLabel> labels(12);
    for (int b = 0; b < 3; ++b) labels[b] = {b, Role::Unstretched};
    for (int b = 3; b < 6; ++b) {
        labels[3 * b - 6] = {b, Role::Hub};
        labels[3 * b - 5] = {b, Role::Wing1};
        labels[3 * b - 4] = {b, Role::Wing2};
        g.add_edge(3 * b - 6, 3 * b - 5);
        g.add_edge(3 * b - 6, 3 * b - 4);
    }
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    if (!second) {
        int extra[][2] = {{4, 0},  {4, 1}, {5, 2}, {4, 7},  {5, 11}, {4, 11}, {7, 1},
                          {8, 11}, {8, 0}, {8, 2}, {10, 0}, {10, 1}, {11, 2}};
        for (auto& e : extra) g.add_edge(e[0], e[1]);
    } else {
        int extra[][2] = {{4, 2},  {4, 1}, {5, 0}, {5, 1},  {5, 2},  {5, 7},  {5, 11}, {7, 0},
                          {7, 10}, {8, 1}, {8, 2}, {10, 1}, {10, 2}, {11, 0}, {11, 2}};
        for (auto& e : extra) g.add_edge(e[0], e[1]);
    }
    return make_stretched(g, 6, labels);
}

StretchedClique random_stretched(std::mt19937& rng, int n, int d) {
    std::vector<StretchOp2> ops;
    Graph cur = Graph::complete(n);
    std::map<std::pair<int, int>, int> where;
    for (int v = 0; v < n; ++v) where[{v, 0}] = v;
    for (int s = 0; s < d; ++s) {
        int base = n - d + s;
        int v = where[{base, 0}];
        auto nbrs = vmembers(cur.neighbors(v));
        StretchOp2 op;
        op.base_vertex = base;
        VertexSet a1 = 0, a2 = 0;
        for (int u : nbrs) {
            switch (rng() % 3) {
                case 0: a1 |= vbit(u); break;
                case 1: a2 |= vbit(u); break;
                default:
                    a1 |= vbit(u);
                    a2 |= vbit(u);
                    break;
            }
        }
        auto vref_of = [&](int idx) {
            for (auto& [key, val] : where)
                if (val == idx) return Vref{key.first, key.second};
            throw std::logic_error("unmapped vertex");
        };
        for (int u : vmembers(a1)) op.a1.push_back(vref_of(u));
        for (int u : vmembers(a2)) op.a2.push_back(vref_of(u));
        StretchResult sr = stretch(cur, v, {a1, a2});
        std::map<std::pair<int, int>, int> next;
        for (auto& [key, idx] : where)
            if (idx != v) next[key] = sr.old_to_new[idx];
        next.erase({base, 0});
        next[{base, 1}] = sr.wings[0];
        next[{base, 2}] = sr.wings[1];
        where = std::move(next);
        cur = sr.graph;
        ops.push_back(std::move(op));
    }
    return build_stretched(n, ops);
}

}  // namespace

TEST_CASE("stretch of a single vertex") {
    Graph k6 = Graph::complete(6);
    StretchResult r = stretch(k6, 4, {vbit(2) | vbit(3) | vbit(5), vbit(0) | vbit(1) | vbit(5)});
    CHECK(r.graph.vertex_count() == 8);
    CHECK(r.graph.degree(r.hub) == 2);
    CHECK(r.graph.has_edge(r.hub, r.wings[0]));
    CHECK(r.graph.has_edge(r.hub, r.wings[1]));
    CHECK(!r.graph.has_edge(r.wings[0], r.wings[1]));
    for (int u : {2, 3, 5}) CHECK(r.graph.has_edge(r.wings[0], r.old_to_new[u]));
    for (int u : {0, 1}) CHECK(!r.graph.has_edge(r.wings[0], r.old_to_new[u]));

    CHECK_THROWS(stretch(k6, 4, {vbit(2), vbit(0)}));          // does not cover
    CHECK_THROWS(stretch(k6, 4, {vbit(4), k6.neighbors(4)}));  // part outside neighborhood
}

TEST_CASE("improper single-part stretch keeps an isomorphic copy") {
    Graph k4 = Graph::complete(4);
    StretchResult r = stretch(k4, 0, {k4.neighbors(0)});
    VertexSet keep = vall(r.graph.vertex_count()) & ~vbit(r.hub);
    auto ind = r.graph.induced(keep);
    CHECK(isomorphic_bruteforce(ind.graph, k4));
}

TEST_CASE("build_stretched basics") {
    StretchedClique k3 = build_stretched(3, {});
    CHECK(k3.d() == 0);
    CHECK(k3.graph == Graph::complete(3));
    CHECK(in_tilde(k3));
    CHECK(in_hat(k3));

    StretchedClique g2 = chain_g2();
    CHECK(g2.d() == 1);
    CHECK(g2.graph.vertex_count() == 8);
    CHECK(alpha(g2.graph) == 2);

    StretchedClique g3 = chain_g3();
    CHECK(g3.d() == 2);
    CHECK(g3.graph.vertex_count() == 10);
    CHECK(canonical(g3.graph).key == canonical(chain_g3_reference()).key);

    CHECK_THROWS(build_stretched(4, {{3, {{0, 0}}, {{1, 0}}}}));   // missing neighbor 2
    CHECK_THROWS(build_stretched(4, {{3, {}, {}}, {3, {}, {}}}));  // repeated base
}

TEST_CASE("tilde_gamma matches the worked example") {
    StretchedClique g2 = chain_g2();
    int w1 = g2.vertex_of(4, Role::Wing1);
    int w2 = g2.vertex_of(4, Role::Wing2);
    VertexSet t1 = tilde_gamma(g2, w1);
    VertexSet t2 = tilde_gamma(g2, w2);
    CHECK(((t1 == (vbit(2) | vbit(3) | vbit(5)) && t2 == (vbit(0) | vbit(1) | vbit(5))) ||
           (t2 == (vbit(2) | vbit(3) | vbit(5)) && t1 == (vbit(0) | vbit(1) | vbit(5)))));
    CHECK(t1 <= t2);  // wing numbering is normalized
    CHECK_THROWS(tilde_gamma(g2, g2.vertex_of(4, Role::Hub)));

    StretchedClique g3 = chain_g3();
    bool found_full = false;
    for (int w : vmembers(g3.wing_vertices(5)))
        if (tilde_gamma(g3, w) == (vall(6) & ~vbit(5))) found_full = true;
    CHECK(found_full);

    StretchedClique lonely = build_stretched(4, {{3, {}, {{0, 0}, {1, 0}, {2, 0}}}});
    CHECK(tilde_gamma(lonely, lonely.vertex_of(3, Role::Wing1)) == 0);
}

TEST_CASE("tilde and hat membership") {
    CHECK(in_tilde(chain_g2()));
    CHECK(!in_tilde(chain_g3()));
    CHECK(in_hat(chain_g2()));  // d = 1: vacuous

    StretchedClique fig_a = hat_example(false);
    StretchedClique fig_b = hat_example(true);
    CHECK(in_tilde(fig_a));
    CHECK(!in_hat(fig_a));  // two edges between one stretched pair
    CHECK(in_hat(fig_b));
    CHECK(!in_tilde(fig_b));
}

TEST_CASE("decompose peels down to a tilde core") {
    StretchedClique g2 = chain_g2();
    Decomposition d0 = decompose(g2);
    CHECK(d0.edges.empty());
    CHECK(d0.core == vall(8));

    StretchedClique g3 = chain_g3();
    Decomposition d1 = decompose(g3);
    CHECK(d1.edges.size() == 1);
    auto [h, w] = d1.edges[0];
    CHECK(g3.labels[h].role == Role::Hub);
    CHECK((g3.labels[w].role == Role::Wing1 || g3.labels[w].role == Role::Wing2));
    CHECK(g3.labels[h].base == 5);

    StretchedClique fig_b = hat_example(true);
    Decomposition d2 = decompose(fig_b);
    CHECK(d2.edges.size() == 1);
    CHECK(fig_b.labels[d2.edges[0].first].base == 3);  // the pair with the full wing
}

TEST_CASE("deficiency exact values and bound") {
    CHECK(deficiency(chain_g2()) == 0);
    CHECK(deficiency(chain_g3()) == 1);
    CHECK(deficiency(hat_example(true)) == 1);

    std::mt19937 rng(liftrank_test::seed + 20);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % std::min(3, n - 3));
        StretchedClique sc = random_stretched(rng, n, d);
        int def = deficiency(sc);
        int bound = std::max(0, omega(sc.graph) - n + d);
        CHECK(def <= bound);
        CHECK(def <= static_cast<int>(decompose(sc).edges.size()));
        if (in_tilde(sc)) CHECK(def == 0);
    }
}

TEST_CASE("core projects onto a tilde member") {
    StretchedClique g3 = chain_g3();
    CoreResult cr = core(g3);
    CHECK(in_tilde(cr.core));
    CHECK(cr.core.graph.vertex_count() == 8);
    CHECK(cr.core.d() == 1);
    CHECK(cr.decomposition.edges.size() == 1);

    CoreResult id = core(chain_g2());
    CHECK(id.core.graph == chain_g2().graph);
}

TEST_CASE("alpha equals d+1 on random stretched cliques") {
    std::mt19937 rng(liftrank_test::seed + 21);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        int d = static_cast<int>(rng() % (n - 2));
        StretchedClique sc = random_stretched(rng, n, d);
        CHECK(alpha(sc.graph) == d + 1);
    }
}

TEST_CASE("hub destruction and unstretched deletion stay in the family") {
    std::mt19937 rng(liftrank_test::seed + 22);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 5 + static_cast<int>(rng() % 2);
        int d = 1 + static_cast<int>(rng() % 2);
        StretchedClique sc = random_stretched(rng, n, d);
        int sb = vfirst(sc.stretched_bases());
        ScInduced down = destroy_hub(sc, sb);  // invariants run in check()
        CHECK(down.sc.base_n == n - 1);
        CHECK(down.sc.d() == d - 1);
        CHECK(alpha(down.sc.graph) == d);
        int ub = vfirst(vall(n) & ~sc.stretched_bases());
        ScInduced del = delete_unstretched(sc, ub);
        CHECK(del.sc.base_n == n - 1);
        CHECK(del.sc.d() == d);
    }
}

TEST_CASE("small clique number forces tilde membership") {
    std::mt19937 rng(liftrank_test::seed + 23);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % (n - 3));
        StretchedClique sc = random_stretched(rng, n, d);
        if (omega(sc.graph) <= n - d) CHECK(in_tilde(sc));
    }
}

TEST_CASE("hat members rebuild from their core by stretching") {
    std::mt19937 rng(liftrank_test::seed + 24);
    int tested = 0;
    for (int trial = 0; trial < 300 && tested < 12; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        int d = 1 + static_cast<int>(rng() % (n - 3));
        StretchedClique sc = random_stretched(rng, n, d);
        if (!in_hat(sc) || in_tilde(sc)) continue;
        ++tested;
        CoreResult cr = core(sc);
        Graph cur = cr.core.graph;
        std::vector<int> orig_to_cur(sc.graph.vertex_count(), -1);
        for (int v = 0; v < sc.graph.vertex_count(); ++v)
            if (cr.old_to_new[v] >= 0) orig_to_cur[v] = cr.old_to_new[v];
        for (std::size_t idx = cr.peels.size(); idx-- > 0;) {
            auto [survivor, removed_nbrs] = cr.peels[idx];
            auto [hub_orig, wing_orig] = cr.decomposition.edges[idx];
            int v = orig_to_cur[survivor];
            REQUIRE(v >= 0);
            VertexSet a2 = 0;
            for (int u : vmembers(removed_nbrs)) {
                REQUIRE(orig_to_cur[u] >= 0);
                a2 |= vbit(orig_to_cur[u]);
            }
            CHECK((a2 & ~cur.neighbors(v)) == 0);
            StretchResult sr = stretch(cur, v, {cur.neighbors(v), a2});
            for (auto& o2c : orig_to_cur)
                if (o2c >= 0) o2c = o2c == v ? sr.wings[0] : sr.old_to_new[o2c];
            orig_to_cur[hub_orig] = sr.hub;
            orig_to_cur[wing_orig] = sr.wings[1];
            cur = sr.graph;
        }
        CHECK(isomorphic_bruteforce(cur, sc.graph));
    }
    CHECK(tested > 0);
}

TEST_CASE("hat and tilde are label-order invariant") {
    std::mt19937 rng(liftrank_test::seed + 25);
    for (int trial = 0; trial < 20; ++trial) {
        StretchedClique sc = random_stretched(rng, 5, 2);
        int nv = sc.graph.vertex_count();
        std::vector<int> perm(nv);
        for (int v = 0; v < nv; ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h(nv);
        for (auto [u, v] : sc.graph.edges()) h.add_edge(perm[u], perm[v]);
        std::vector<VertexLabel> labels(nv);
        for (int v = 0; v < nv; ++v) labels[perm[v]] = sc.labels[v];
        StretchedClique other = make_stretched(h, sc.base_n, labels);
        CHECK(in_hat(other) == in_hat(sc));
        CHECK(in_tilde(other) == in_tilde(sc));
        CHECK(role_canonical_key(other) == role_canonical_key(sc));
    }
}

TEST_CASE("stretched clique json round trip") {
    StretchedClique g3 = chain_g3();
    StretchedClique back = stretched_from_json(stretched_to_json(g3));
    CHECK(back.graph == g3.graph);
    CHECK(back.base_n == g3.base_n);
    CHECK(back.labels == g3.labels);
    CHECK(stretched_to_json(back) == stretched_to_json(g3));
}
