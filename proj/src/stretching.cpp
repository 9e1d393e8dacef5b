#include "liftrank/stretching.hpp"

#include <algorithm>
#include <json.hpp>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "liftrank/canonical.hpp"

namespace liftrank {

int StretchedClique::d() const { return vcount(stretched_bases()); }

VertexSet StretchedClique::stretched_bases() const {
    VertexSet s = 0;
    for (const auto& l : labels)
        if (l.role != Role::Unstretched) s |= vbit(l.base);
    return s;
}

bool StretchedClique::is_stretched(int base) const { return vtest(stretched_bases(), base); }

int StretchedClique::vertex_of(int base, Role role) const {
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (labels[v].base == base && labels[v].role == role) return v;
    return -1;
}

VertexSet StretchedClique::hub_vertices() const {
    VertexSet s = 0;
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (labels[v].role == Role::Hub) s |= vbit(v);
    return s;
}

VertexSet StretchedClique::associated(int base) const {
    VertexSet s = 0;
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (labels[v].base == base) s |= vbit(v);
    return s;
}

VertexSet StretchedClique::wing_vertices(int base) const {
    VertexSet s = 0;
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (labels[v].base == base &&
            (labels[v].role == Role::Wing1 || labels[v].role == Role::Wing2))
            s |= vbit(v);
    return s;
}

void StretchedClique::check() const {
    graph.check_invariants();
    if (static_cast<int>(labels.size()) != graph.vertex_count())
        throw std::logic_error("stretched clique: label count mismatch");
    int dd = d();
    if (graph.vertex_count() != base_n + 2 * dd)
        throw std::logic_error("stretched clique: |V| != base_n + 2d");
    for (int b = 0; b < base_n; ++b) {
        if (is_stretched(b)) {
            int hub = vertex_of(b, Role::Hub);
            int w1 = vertex_of(b, Role::Wing1);
            int w2 = vertex_of(b, Role::Wing2);
            if (hub < 0 || w1 < 0 || w2 < 0)
                throw std::logic_error("stretched clique: missing hub or wing");
            if (graph.neighbors(hub) != (vbit(w1) | vbit(w2)))
                throw std::logic_error("stretched clique: hub not adjacent exactly to its wings");
            for (int w : {w1, w2}) {
                VertexSet nb = graph.neighbors(w);
                if (!vtest(nb, hub)) throw std::logic_error("stretched clique: wing misses hub");
                if (nb & (associated(b) & ~vbit(hub)))
                    throw std::logic_error("stretched clique: wing adjacent within own index");
            }
        } else {
            if (vcount(associated(b)) != 1)
                throw std::logic_error("stretched clique: duplicate unstretched vertex");
        }
        for (int c = 0; c < b; ++c) {
            VertexSet cb = associated(c);
            VertexSet bb = associated(b);
            bool found = false;
            VertexSet rest = bb;
            while (rest && !found) {
                int v = vfirst(rest);
                rest &= rest - 1;
                if (graph.neighbors(v) & cb) found = true;
            }
            if (!found) throw std::logic_error("stretched clique: index pair with no edge");
        }
    }
}

StretchResult stretch(const Graph& g, int v, const std::vector<VertexSet>& parts) {
    const int n = g.vertex_count();
    if (v < 0 || v >= n) throw std::out_of_range("stretch: vertex out of range");
    VertexSet gamma = g.neighbors(v);
    VertexSet covered = 0;
    for (VertexSet p : parts) {
        if (p & ~gamma) throw std::invalid_argument("stretch: part not inside neighborhood");
        covered |= p;
    }
    if (covered != gamma) throw std::invalid_argument("stretch: parts do not cover neighborhood");

    const int k = static_cast<int>(parts.size());
    StretchResult res;
    res.graph = Graph(n - 1 + k + 1);
    res.old_to_new.assign(n, -1);
    int next = 0;
    for (int u = 0; u < n; ++u)
        if (u != v) res.old_to_new[u] = next++;
    res.hub = next++;
    for (int j = 0; j < k; ++j) res.wings.push_back(next++);

    for (auto [a, b] : g.edges())
        if (a != v && b != v) res.graph.add_edge(res.old_to_new[a], res.old_to_new[b]);
    for (int j = 0; j < k; ++j) {
        res.graph.add_edge(res.hub, res.wings[j]);
        VertexSet p = parts[j];
        while (p) {
            res.graph.add_edge(res.wings[j], res.old_to_new[vfirst(p)]);
            p &= p - 1;
        }
    }
    return res;
}

namespace {

// Canonical vertex layout: bases ascending; a stretched base contributes
// hub, wing1, wing2 in that order.
StretchedClique relayout(const Graph& g, const std::vector<VertexLabel>& labels, int base_n) {
    const int n = g.vertex_count();
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (labels[a].base != labels[b].base) return labels[a].base < labels[b].base;
        return static_cast<int>(labels[a].role) < static_cast<int>(labels[b].role);
    });
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    StretchedClique sc;
    sc.base_n = base_n;
    sc.graph = Graph(n);
    sc.labels.resize(n);
    for (int v = 0; v < n; ++v) sc.labels[pos[v]] = labels[v];
    for (auto [a, b] : g.edges()) sc.graph.add_edge(pos[a], pos[b]);
    return sc;
}

// Wing numbering convention: wing1 carries the lexicographically smaller
// tilde_gamma (as a bitmask); ties broken by the full neighbor set under the
// canonical layout.
void normalize_wings(StretchedClique& sc) {
    for (int b = 0; b < sc.base_n; ++b) {
        if (!sc.is_stretched(b)) continue;
        int w1 = sc.vertex_of(b, Role::Wing1);
        int w2 = sc.vertex_of(b, Role::Wing2);
        VertexSet t1 = tilde_gamma(sc, w1);
        VertexSet t2 = tilde_gamma(sc, w2);
        bool swap = t2 < t1;
        if (t1 == t2) swap = sc.graph.neighbors(w2) < sc.graph.neighbors(w1);
        if (swap) {
            sc.labels[w1].role = Role::Wing2;
            sc.labels[w2].role = Role::Wing1;
        }
    }
}

}  // namespace

StretchedClique build_stretched(int base_n, const std::vector<StretchOp2>& ops) {
    if (base_n < 0 || base_n > 21) throw std::invalid_argument("build_stretched: base_n out of range");
    Graph cur = Graph::complete(base_n);
    std::vector<VertexLabel> labels(base_n);
    for (int v = 0; v < base_n; ++v) labels[v] = {v, Role::Unstretched};
    // (base, wing) -> current vertex index; wing 0 = the unstretched vertex
    std::map<std::pair<int, int>, int> where;
    for (int v = 0; v < base_n; ++v) where[{v, 0}] = v;

    VertexSet done = 0;
    auto resolve = [&](const std::vector<Vref>& refs) {
        VertexSet s = 0;
        for (const auto& r : refs) {
            auto it = where.find({r.base, r.wing});
            if (it == where.end() || it->second < 0)
                throw std::invalid_argument("build_stretched: bad vertex reference");
            s |= vbit(it->second);
        }
        return s;
    };

    for (const auto& op : ops) {
        if (op.base_vertex < 0 || op.base_vertex >= base_n || vtest(done, op.base_vertex))
            throw std::invalid_argument("build_stretched: stretched base vertices must be distinct");
        int v = where[{op.base_vertex, 0}];
        VertexSet a1 = resolve(op.a1);
        VertexSet a2 = resolve(op.a2);
        if ((a1 | a2) != cur.neighbors(v))
            throw std::invalid_argument("build_stretched: parts must cover the neighborhood");
        StretchResult res = stretch(cur, v, {a1, a2});

        std::vector<VertexLabel> next_labels(res.graph.vertex_count());
        for (int u = 0; u < cur.vertex_count(); ++u)
            if (res.old_to_new[u] >= 0) next_labels[res.old_to_new[u]] = labels[u];
        next_labels[res.hub] = {op.base_vertex, Role::Hub};
        next_labels[res.wings[0]] = {op.base_vertex, Role::Wing1};
        next_labels[res.wings[1]] = {op.base_vertex, Role::Wing2};

        std::map<std::pair<int, int>, int> next_where;
        for (auto& [key, idx] : where)
            if (idx != v) next_where[key] = res.old_to_new[idx];
        next_where.erase({op.base_vertex, 0});
        next_where[{op.base_vertex, 1}] = res.wings[0];
        next_where[{op.base_vertex, 2}] = res.wings[1];

        cur = res.graph;
        labels = std::move(next_labels);
        where = std::move(next_where);
        done |= vbit(op.base_vertex);
    }

    StretchedClique sc = relayout(cur, labels, base_n);
    normalize_wings(sc);
    sc = relayout(sc.graph, sc.labels, base_n);
    sc.check();
    return sc;
}

StretchedClique make_stretched(const Graph& g, int base_n, const std::vector<VertexLabel>& labels) {
    StretchedClique sc = relayout(g, labels, base_n);
    normalize_wings(sc);
    sc = relayout(sc.graph, sc.labels, base_n);
    sc.check();
    return sc;
}

VertexSet tilde_gamma(const StretchedClique& sc, int wing_vertex) {
    const auto& l = sc.labels.at(wing_vertex);
    if (l.role != Role::Wing1 && l.role != Role::Wing2)
        throw std::invalid_argument("tilde_gamma: vertex is not a wing");
    VertexSet out = 0;
    VertexSet nb = sc.graph.neighbors(wing_vertex);
    while (nb) {
        int u = vfirst(nb);
        nb &= nb - 1;
        if (sc.labels[u].base != l.base) out |= vbit(sc.labels[u].base);
    }
    return out;
}

bool in_tilde(const StretchedClique& sc) {
    for (int v = 0; v < sc.graph.vertex_count(); ++v) {
        const auto& l = sc.labels[v];
        if (l.role != Role::Wing1 && l.role != Role::Wing2) continue;
        if (tilde_gamma(sc, v) == (vall(sc.base_n) & ~vbit(l.base))) return false;
    }
    return true;
}

bool in_hat(const StretchedClique& sc) {
    VertexSet stretched = sc.stretched_bases();
    std::vector<int> bases = vmembers(stretched);
    for (std::size_t a = 0; a < bases.size(); ++a) {
        for (std::size_t b = a + 1; b < bases.size(); ++b) {
            VertexSet wa = sc.wing_vertices(bases[a]);
            VertexSet wb = sc.wing_vertices(bases[b]);
            int cnt = 0;
            VertexSet rest = wa;
            while (rest) {
                int v = vfirst(rest);
                rest &= rest - 1;
                cnt += vcount(sc.graph.neighbors(v) & wb);
            }
            if (cnt != 1) return false;
        }
    }
    return true;
}

namespace {

struct PeelStep {
    ScInduced reduced;
    int survivor_base;
    int removed_hub;    // original index in the graph being peeled
    int removed_wing;
    int survivor_wing;  // original index
};

// Wings whose tilde_gamma covers every other base; peeling keeps the wing and
// removes hub + sibling, the survivor taking the unstretched role.
std::vector<int> full_wings(const StretchedClique& sc) {
    std::vector<int> out;
    for (int v = 0; v < sc.graph.vertex_count(); ++v) {
        const auto& l = sc.labels[v];
        if (l.role != Role::Wing1 && l.role != Role::Wing2) continue;
        if (tilde_gamma(sc, v) == (vall(sc.base_n) & ~vbit(l.base))) out.push_back(v);
    }
    return out;
}

PeelStep peel_at(const StretchedClique& sc, int wing) {
    const auto& l = sc.labels[wing];
    int hub = sc.vertex_of(l.base, Role::Hub);
    int sibling = sc.vertex_of(l.base, l.role == Role::Wing1 ? Role::Wing2 : Role::Wing1);
    auto ind = sc.graph.delete_vertices(vbit(hub) | vbit(sibling));
    StretchedClique out;
    out.base_n = sc.base_n;
    out.graph = ind.graph;
    out.labels.resize(ind.graph.vertex_count());
    for (int v = 0; v < sc.graph.vertex_count(); ++v) {
        if (ind.old_to_new[v] < 0) continue;
        VertexLabel nl = sc.labels[v];
        if (v == wing) nl.role = Role::Unstretched;
        out.labels[ind.old_to_new[v]] = nl;
    }
    return {{std::move(out), std::move(ind.old_to_new)}, l.base, hub, sibling, wing};
}

int deficiency_rec(const StretchedClique& sc, std::unordered_map<std::string, int>& memo,
                   std::vector<std::pair<int, int>>* edges_out,
                   std::vector<std::pair<int, VertexSet>>* peels_out,
                   std::vector<int>* composed_map) {
    if (in_tilde(sc)) return 0;
    std::string key = role_canonical_key(sc);
    if (!edges_out) {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    int best = std::numeric_limits<int>::max();
    std::vector<std::pair<int, int>> best_edges;
    std::vector<std::pair<int, VertexSet>> best_peels;
    for (int w : full_wings(sc)) {
        PeelStep step = peel_at(sc, w);
        std::vector<std::pair<int, int>> sub_edges;
        std::vector<std::pair<int, VertexSet>> sub_peels;
        std::vector<int> dummy;
        int sub = deficiency_rec(step.reduced.sc, memo, edges_out ? &sub_edges : nullptr,
                                 peels_out ? &sub_peels : nullptr, nullptr);
        if (sub + 1 < best) {
            best = sub + 1;
            if (edges_out) {
                best_edges.clear();
                best_edges.emplace_back(step.removed_hub, step.removed_wing);
                best_peels.clear();
                best_peels.emplace_back(step.survivor_wing,
                                        sc.graph.neighbors(step.removed_wing) & ~vbit(step.removed_hub));
                // lift sub results through the index map
                std::vector<int> new_to_old(step.reduced.sc.graph.vertex_count());
                for (int v = 0; v < sc.graph.vertex_count(); ++v)
                    if (step.reduced.old_to_new[v] >= 0) new_to_old[step.reduced.old_to_new[v]] = v;
                for (auto [h, wg] : sub_edges) best_edges.emplace_back(new_to_old[h], new_to_old[wg]);
                for (auto [sv, nbrs] : sub_peels) {
                    VertexSet lifted = 0;
                    VertexSet rest = nbrs;
                    while (rest) {
                        lifted |= vbit(new_to_old[vfirst(rest)]);
                        rest &= rest - 1;
                    }
                    best_peels.emplace_back(new_to_old[sv], lifted);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max())
        throw std::logic_error("deficiency: no peelable wing outside tilde-K");  // cannot happen
    if (!edges_out) memo.emplace(std::move(key), best);
    if (edges_out) *edges_out = std::move(best_edges);
    if (peels_out) *peels_out = std::move(best_peels);
    (void)composed_map;
    return best;
}

}  // namespace

Decomposition decompose(const StretchedClique& sc) {
    Decomposition out;
    out.core = vall(sc.graph.vertex_count());
    StretchedClique cur = sc;
    std::vector<int> cur_to_orig(sc.graph.vertex_count());
    for (int v = 0; v < sc.graph.vertex_count(); ++v) cur_to_orig[v] = v;
    while (!in_tilde(cur)) {
        auto wings = full_wings(cur);
        PeelStep step = peel_at(cur, wings.front());
        out.edges.emplace_back(cur_to_orig[step.removed_hub], cur_to_orig[step.removed_wing]);
        out.core &= ~vbit(cur_to_orig[step.removed_hub]);
        out.core &= ~vbit(cur_to_orig[step.removed_wing]);
        std::vector<int> next_map(step.reduced.sc.graph.vertex_count());
        for (int v = 0; v < cur.graph.vertex_count(); ++v)
            if (step.reduced.old_to_new[v] >= 0)
                next_map[step.reduced.old_to_new[v]] = cur_to_orig[v];
        cur = step.reduced.sc;
        cur_to_orig = std::move(next_map);
    }
    return out;
}

int deficiency(const StretchedClique& sc) {
    if (sc.d() > 12) throw std::invalid_argument("deficiency: d > 12 unsupported");
    std::unordered_map<std::string, int> memo;
    return deficiency_rec(sc, memo, nullptr, nullptr, nullptr);
}

CoreResult core(const StretchedClique& sc) {
    std::unordered_map<std::string, int> memo;
    CoreResult res;
    if (in_tilde(sc)) {
        res.core = sc;
        res.old_to_new.resize(sc.graph.vertex_count());
        for (int v = 0; v < sc.graph.vertex_count(); ++v) res.old_to_new[v] = v;
        res.decomposition.core = vall(sc.graph.vertex_count());
        return res;
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, VertexSet>> peels;
    deficiency_rec(sc, memo, &edges, &peels, nullptr);

    VertexSet removed = 0;
    for (auto [h, w] : edges) removed |= vbit(h) | vbit(w);
    auto ind = sc.graph.delete_vertices(removed);
    StretchedClique coresc;
    coresc.base_n = sc.base_n;
    coresc.graph = ind.graph;
    coresc.labels.resize(ind.graph.vertex_count());
    VertexSet survivors = 0;
    for (auto& [sv, nbrs] : peels) survivors |= vbit(sv);
    for (int v = 0; v < sc.graph.vertex_count(); ++v) {
        if (ind.old_to_new[v] < 0) continue;
        VertexLabel nl = sc.labels[v];
        if (vtest(survivors, v)) nl.role = Role::Unstretched;
        coresc.labels[ind.old_to_new[v]] = nl;
    }
    coresc.check();
    res.core = std::move(coresc);
    res.old_to_new = std::move(ind.old_to_new);
    res.decomposition.core = vall(sc.graph.vertex_count()) & ~removed;
    res.decomposition.edges = std::move(edges);
    res.peels = std::move(peels);
    return res;
}

namespace {

ScInduced relabel_after_delete(const StretchedClique& sc, VertexSet removed, int removed_base) {
    auto ind = sc.graph.delete_vertices(removed);
    StretchedClique out;
    out.base_n = sc.base_n - 1;
    out.graph = ind.graph;
    out.labels.resize(ind.graph.vertex_count());
    for (int v = 0; v < sc.graph.vertex_count(); ++v) {
        if (ind.old_to_new[v] < 0) continue;
        VertexLabel nl = sc.labels[v];
        if (nl.base > removed_base) --nl.base;
        out.labels[ind.old_to_new[v]] = nl;
    }
    out.check();
    return {std::move(out), std::move(ind.old_to_new)};
}

}  // namespace

ScInduced delete_unstretched(const StretchedClique& sc, int base) {
    if (sc.is_stretched(base))
        throw std::invalid_argument("delete_unstretched: base is stretched");
    return relabel_after_delete(sc, vbit(sc.vertex_of(base, Role::Unstretched)), base);
}

ScInduced destroy_hub(const StretchedClique& sc, int base) {
    if (!sc.is_stretched(base)) throw std::invalid_argument("destroy_hub: base not stretched");
    return relabel_after_delete(sc, sc.associated(base), base);
}

std::string stretched_to_json(const StretchedClique& sc) {
    nlohmann::json j;
    j["graph6"] = to_graph6(sc.graph);
    j["base_n"] = sc.base_n;
    auto arr = nlohmann::json::array();
    static const char* role_names[] = {"unstretched", "hub", "wing1", "wing2"};
    for (const auto& l : sc.labels)
        arr.push_back({{"base", l.base}, {"role", role_names[static_cast<int>(l.role)]}});
    j["labels"] = arr;
    return j.dump();
}

StretchedClique stretched_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    StretchedClique sc;
    sc.graph = from_graph6(j.at("graph6").get<std::string>());
    sc.base_n = j.at("base_n").get<int>();
    for (const auto& item : j.at("labels")) {
        std::string role = item.at("role").get<std::string>();
        Role r;
        if (role == "unstretched") r = Role::Unstretched;
        else if (role == "hub") r = Role::Hub;
        else if (role == "wing1") r = Role::Wing1;
        else if (role == "wing2") r = Role::Wing2;
        else throw std::invalid_argument("stretched_from_json: unknown role");
        sc.labels.push_back({item.at("base").get<int>(), r});
    }
    sc.check();
    return sc;
}

std::string role_canonical_key(const StretchedClique& sc) {
    std::vector<int> colors(sc.graph.vertex_count());
    for (int v = 0; v < sc.graph.vertex_count(); ++v) {
        Role r = sc.labels[v].role;
        colors[v] = r == Role::Unstretched ? 0 : (r == Role::Hub ? 1 : 2);
    }
    return canonical(sc.graph, colors).key;
}

}  // namespace liftrank
