#include "liftrank/families.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace liftrank {

StretchedClique make_a(int k) { return make_a_s(k, 0); }

// A_k: triangle on bases {0,1,2}; bases 3..k-1 are stretched. Wing 1 of base
// i sees bases 1,2 and the second wing of each earlier stretched base; wing 2
// sees base 0 and carries the edge toward every later base.
StretchedClique make_a_s(int k, VertexSet s) {
    if (k < 3) throw std::invalid_argument("make_a_s: k >= 3 required");
    if (s & ~(vall(k) & ~vall(3))) throw std::invalid_argument("make_a_s: S must be within {3..k-1}");
    std::vector<StretchOp2> ops;
    for (int i = 3; i < k; ++i) {
        StretchOp2 op;
        op.base_vertex = i;
        op.a1 = {{1, 0}, {2, 0}};
        for (int j = 3; j < i; ++j) op.a1.push_back({j, 2});
        op.a2 = {{0, 0}};
        if (vtest(s, i)) op.a2.push_back({1, 0});
        for (int j = i + 1; j < k; ++j) op.a2.push_back({j, 0});
        ops.push_back(std::move(op));
    }
    return build_stretched(k, ops);
}

Graph make_b(int k) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("make_b: k must be odd and >= 3");
    Graph g(4 * k);
    auto idx = [&](int i, int j) { return 4 * i + j; };  // i in [0,k), layer j in 0..3
    for (int i = 0; i < k; ++i) {
        g.add_edge(idx(i, 0), idx(i, 1));
        g.add_edge(idx(i, 1), idx(i, 2));
        g.add_edge(idx(i, 2), idx(i, 3));
        g.add_edge(idx(i, 3), idx(i, 0));
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            int diff = ((j - i) % k + k) % k;
            if (diff >= 1 && diff <= (k - 1) / 2) {
                g.add_edge(idx(i, 0), idx(j, 2));
                g.add_edge(idx(i, 1), idx(j, 3));
            }
        }
    }
    return g;
}

StretchedClique make_b_prime(int k) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("make_b_prime: k must be odd and >= 3");
    Graph g(3 * k);
    auto idx = [&](int i, int j) { return 3 * i + j; };  // layers 0,1,2 of B_k
    std::vector<VertexLabel> labels(3 * k);
    for (int i = 0; i < k; ++i) {
        g.add_edge(idx(i, 0), idx(i, 1));
        g.add_edge(idx(i, 1), idx(i, 2));
        labels[idx(i, 0)] = {i, Role::Wing1};  // layer 1 has degree 2: the hub
        labels[idx(i, 1)] = {i, Role::Hub};
        labels[idx(i, 2)] = {i, Role::Wing2};
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            int diff = ((j - i) % k + k) % k;
            if (diff >= 1 && diff <= (k - 1) / 2) g.add_edge(idx(i, 0), idx(j, 2));
        }
    return make_stretched(g, k, labels);
}

StretchedClique make_h_prime(int k) {
    if (k < 3) throw std::invalid_argument("make_h_prime: k >= 3 required");
    // bases 0,1 unstretched; bases 2..k-1 stretched
    int n = 2 + 3 * (k - 2);
    Graph g(n);
    std::vector<VertexLabel> labels(n);
    labels[0] = {0, Role::Unstretched};
    labels[1] = {1, Role::Unstretched};
    g.add_edge(0, 1);
    auto hub = [&](int b) { return 2 + 3 * (b - 2); };
    auto w1 = [&](int b) { return 2 + 3 * (b - 2) + 1; };
    auto w2 = [&](int b) { return 2 + 3 * (b - 2) + 2; };
    for (int b = 2; b < k; ++b) {
        labels[hub(b)] = {b, Role::Hub};
        labels[w1(b)] = {b, Role::Wing1};
        labels[w2(b)] = {b, Role::Wing2};
        g.add_edge(hub(b), w1(b));
        g.add_edge(hub(b), w2(b));
        g.add_edge(w1(b), 1);
        g.add_edge(w2(b), 0);
    }
    for (int b = 2; b < k; ++b)
        for (int c = 2; c < k; ++c)
            if (b != c) {
                if (!g.has_edge(w1(b), w2(c))) g.add_edge(w1(b), w2(c));
            }
    return make_stretched(g, k, labels);
}

namespace {

StretchedClique named_g21() {
    return build_stretched(4, {{3, {{2, 0}}, {{0, 0}, {1, 0}}}});
}

StretchedClique named_g22() {
    return build_stretched(4, {{3, {{1, 0}, {2, 0}}, {{0, 0}, {1, 0}}}});
}

StretchedClique named_g31() {
    std::vector<StretchOp2> ops;
    ops.push_back({3, {{1, 0}}, {{0, 0}, {2, 0}, {4, 0}}});
    ops.push_back({4, {{0, 0}, {1, 0}, {3, 2}}, {{2, 0}}});
    return build_stretched(5, ops);
}

StretchedClique named_g41() {
    std::vector<StretchOp2> ops;
    ops.push_back({3, {{0, 0}, {1, 0}, {4, 0}}, {{1, 0}, {2, 0}, {5, 0}}});
    ops.push_back({4, {{1, 0}, {2, 0}, {5, 0}}, {{2, 0}, {0, 0}, {3, 1}}});
    ops.push_back({5, {{2, 0}, {0, 0}, {3, 2}}, {{0, 0}, {1, 0}, {4, 1}}});
    return build_stretched(6, ops);
}

StretchedClique named_fig7() {
    std::vector<StretchOp2> ops;
    ops.push_back({3, {{2, 0}, {4, 0}}, {{0, 0}, {1, 0}, {4, 0}}});
    ops.push_back({4, {{1, 0}, {2, 0}, {3, 1}, {3, 2}}, {{0, 0}, {1, 0}}});
    return build_stretched(5, ops);
}

}  // namespace

StretchedClique make_named(NamedId id) {
    switch (id) {
        case NamedId::G21: return named_g21();
        case NamedId::G22: return named_g22();
        case NamedId::G31: return named_g31();
        case NamedId::G41: return named_g41();
        case NamedId::Fig7: return named_fig7();
    }
    throw std::invalid_argument("make_named: unknown id");
}

FamilyGraph construct(const FamilySpec& spec) {
    FamilyGraph out;
    switch (spec.kind) {
        case FamilyKind::A: {
            auto sc = make_a(spec.k);
            out.graph = sc.graph;
            out.sc = std::move(sc);
            out.name = "a" + std::to_string(spec.k);
            break;
        }
        case FamilyKind::AS: {
            auto sc = make_a_s(spec.k, spec.s);
            out.graph = sc.graph;
            out.sc = std::move(sc);
            std::string suffix;
            for (int b : vmembers(spec.s)) suffix += "_" + std::to_string(b + 1);
            out.name = "a" + std::to_string(spec.k) + "S" + suffix;
            break;
        }
        case FamilyKind::B:
            out.graph = make_b(spec.k);
            out.name = "b" + std::to_string(spec.k);
            break;
        case FamilyKind::BPrime: {
            auto sc = make_b_prime(spec.k);
            out.graph = sc.graph;
            out.sc = std::move(sc);
            out.name = "b" + std::to_string(spec.k) + "prime";
            break;
        }
        case FamilyKind::HPrime: {
            auto sc = make_h_prime(spec.k);
            out.graph = sc.graph;
            out.sc = std::move(sc);
            out.name = "h" + std::to_string(spec.k) + "prime";
            break;
        }
        case FamilyKind::Named: {
            auto sc = make_named(spec.name);
            out.graph = sc.graph;
            out.sc = std::move(sc);
            static const char* names[] = {"g21", "g22", "g31", "g41", "fig7"};
            out.name = names[static_cast<int>(spec.name)];
            break;
        }
    }
    return out;
}

int modular_add(int a, int b, int n) {
    if (n < 1) throw std::invalid_argument("modular_add: n >= 1 required");
    int c = (a + b) % n;
    if (c <= 0) c += n;
    return c;
}

int modular_sub(int a, int b, int n) { return modular_add(a, -b, n); }

std::array<std::vector<int>, 3> bk_automorphisms(int k) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("bk_automorphisms: k must be odd and >= 3");
    const int n = 4 * k;
    auto idx = [&](int i, int j) { return 4 * (i - 1) + j; };  // i is 1-based here
    std::array<std::vector<int>, 3> fs;
    for (auto& f : fs) f.resize(n);
    static const int f1_layer[4] = {1, 0, 3, 2};
    static const int f3_layer[4] = {3, 2, 1, 0};
    for (int i = 1; i <= k; ++i) {
        for (int j = 0; j < 4; ++j) {
            fs[0][idx(i, j)] = idx(i, f1_layer[j]);
            fs[1][idx(i, j)] = idx(modular_add(i, 1, k), j);
            fs[2][idx(i, j)] = idx(modular_sub(2, i, k), f3_layer[j]);
        }
    }
    return fs;
}

bool is_vertex_transitive_via(const Graph& g, const std::vector<std::vector<int>>& gens) {
    const int n = g.vertex_count();
    for (const auto& f : gens) {
        if (static_cast<int>(f.size()) != n)
            throw std::invalid_argument("is_vertex_transitive_via: generator size mismatch");
        std::vector<bool> seen(n, false);
        for (int v : f) {
            if (v < 0 || v >= n || seen[v])
                throw std::invalid_argument("is_vertex_transitive_via: generator is not a bijection");
            seen[v] = true;
        }
        for (auto [u, v] : g.edges())
            if (!g.has_edge(f[u], f[v])) return false;
        // bijection + edge-preserving implies edge counts match, hence automorphism
    }
    if (n == 0) return true;
    std::vector<bool> reached(n, false);
    std::queue<int> bfs;
    bfs.push(0);
    reached[0] = true;
    int count = 1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (const auto& f : gens) {
            if (!reached[f[v]]) {
                reached[f[v]] = true;
                ++count;
                bfs.push(f[v]);
            }
        }
    }
    return count == n;
}

FamilySpec parse_family_spec(const std::string& name, int k, const std::string& s_csv) {
    FamilySpec spec;
    spec.k = k;
    if (name == "a") {
        spec.kind = FamilyKind::A;
    } else if (name == "a-s") {
        spec.kind = FamilyKind::AS;
        std::stringstream ss(s_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            int one_based = std::stoi(tok);  // entries name bases in {4..k}
            if (one_based < 4 || one_based > k)
                throw std::invalid_argument("family a-s: S entries must lie in {4..k}");
            spec.s |= vbit(one_based - 1);
        }
    } else if (name == "b") {
        spec.kind = FamilyKind::B;
    } else if (name == "b-prime") {
        spec.kind = FamilyKind::BPrime;
    } else if (name == "h-prime") {
        spec.kind = FamilyKind::HPrime;
    } else if (name == "g21" || name == "g22" || name == "g31" || name == "g41" || name == "fig7") {
        spec.kind = FamilyKind::Named;
        if (name == "g21") spec.name = NamedId::G21;
        else if (name == "g22") spec.name = NamedId::G22;
        else if (name == "g31") spec.name = NamedId::G31;
        else if (name == "g41") spec.name = NamedId::G41;
        else spec.name = NamedId::Fig7;
    } else {
        throw std::invalid_argument("unknown family name: " + name);
    }
    return spec;
}

}  // namespace liftrank
