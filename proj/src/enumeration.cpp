#include "liftrank/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "liftrank/canonical.hpp"

namespace liftrank {

void EnumerationFilter::check() const {
    if (require_hat && complement_of_hat)
        throw std::invalid_argument("enumeration filter: hat and complement-of-hat conflict");
}

namespace {

struct State {
    Graph graph;
    std::vector<int> targets;  // designated not-yet-stretched vertices
};

// Unordered covering pairs {A1, A2} of gamma: A1 ranges over subsets, A2 over
// (gamma \ A1) plus any subset of A1; ordered pairs are produced exactly once,
// so keeping A1 <= A2 dedups the unordered pair.
template <typename F>
void for_each_cover(VertexSet gamma, F&& fn) {
    VertexSet a1 = 0;
    while (true) {
        VertexSet rest = gamma & ~a1;
        VertexSet b = 0;
        while (true) {
            VertexSet a2 = rest | b;
            if (a1 <= a2) fn(a1, a2);
            if (b == a1) break;
            b = (b - a1) & a1;  // next subset of a1
        }
        if (a1 == gamma) break;
        a1 = (a1 - gamma) & gamma;  // next subset of gamma
    }
}

}  // namespace

std::vector<StretchedClique> find_labelings(const Graph& g, int n, int d) {
    std::vector<StretchedClique> out;
    const int nv = g.vertex_count();
    if (nv != n + 2 * d) return out;
    // candidate hub triples: degree-2 vertices whose neighbors are nonadjacent
    struct Triple {
        int hub, w1, w2;
        VertexSet mask;
    };
    std::vector<Triple> cand;
    for (int v = 0; v < nv; ++v) {
        if (g.degree(v) != 2) continue;
        auto nb = vmembers(g.neighbors(v));
        if (g.has_edge(nb[0], nb[1])) continue;
        cand.push_back({v, nb[0], nb[1], vbit(v) | vbit(nb[0]) | vbit(nb[1])});
    }
    std::vector<int> chosen;
    auto emit = [&]() {
        VertexSet used = 0;
        for (int c : chosen) used |= cand[c].mask;
        // unstretched vertices must be pairwise adjacent
        auto rest = vmembers(vall(nv) & ~used);
        for (std::size_t a = 0; a < rest.size(); ++a)
            for (std::size_t b = a + 1; b < rest.size(); ++b)
                if (!g.has_edge(rest[a], rest[b])) return;
        std::vector<VertexLabel> labels(nv);
        int base = 0;
        for (int v : rest) labels[v] = {base++, Role::Unstretched};
        for (int c : chosen) {
            labels[cand[c].hub] = {base, Role::Hub};
            labels[cand[c].w1] = {base, Role::Wing1};
            labels[cand[c].w2] = {base, Role::Wing2};
            ++base;
        }
        StretchedClique sc;
        try {
            sc = make_stretched(g, n, labels);
        } catch (const std::logic_error&) {
            return;  // violates a stretched-clique invariant
        }
        out.push_back(std::move(sc));
    };
    // choose d pairwise-disjoint candidate triples
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(chosen.size()) == d) {
            emit();
            return;
        }
        for (std::size_t c = from; c < cand.size(); ++c) {
            bool disjoint = true;
            for (int prev : chosen)
                if (cand[prev].mask & cand[c].mask) { disjoint = false; break; }
            if (!disjoint) continue;
            chosen.push_back(static_cast<int>(c));
            rec(c + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

EnumerationResult enumerate_knd(int n, int d, const EnumerationFilter& filter) {
    filter.check();
    if (n < 3 || n > 7 || d < 0 || d > n)
        throw std::invalid_argument("enumerate_knd: supported range is 3 <= n <= 7, 0 <= d <= n");
    EnumerationResult res;
    res.n = n;
    res.d = d;

    std::vector<State> frontier;
    {
        State s;
        s.graph = Graph::complete(n);
        for (int v = n - d; v < n; ++v) s.targets.push_back(v);
        frontier.push_back(std::move(s));
    }
    const int omega_cap = filter.max_omega.value_or(-1);

    for (int stage = 0; stage < d; ++stage) {
        std::vector<State> next;
        std::unordered_set<std::string> seen;
        for (const auto& st : frontier) {
            int v = st.targets.front();
            for_each_cover(st.graph.neighbors(v), [&](VertexSet a1, VertexSet a2) {
                StretchResult sr = stretch(st.graph, v, {a1, a2});
                State ns;
                ns.graph = std::move(sr.graph);
                for (std::size_t t = 1; t < st.targets.size(); ++t)
                    ns.targets.push_back(sr.old_to_new[st.targets[t]]);
                if (omega_cap >= 0) {
                    VertexSet fixed = vall(ns.graph.vertex_count());
                    for (int t : ns.targets) fixed &= ~vbit(t);
                    // cliques avoiding the remaining targets survive all later stages
                    if (omega_within(ns.graph, fixed) > omega_cap) return;
                }
                std::vector<int> colors(ns.graph.vertex_count(), 0);
                for (int t : ns.targets) colors[t] = 1;
                std::string key = canonical(ns.graph, colors).key;
                if (seen.insert(std::move(key)).second) next.push_back(std::move(ns));
            });
        }
        frontier = std::move(next);
    }

    std::map<std::string, std::size_t> classes;
    for (const auto& st : frontier) {
        if (omega_cap >= 0 && omega(st.graph) > omega_cap) continue;
        std::string key = canonical(st.graph).key;
        if (classes.count(key)) continue;
        auto labelings = find_labelings(st.graph, n, d);
        if (labelings.empty())
            throw std::logic_error("enumerate_knd: constructed graph admits no labeling");
        CatalogEntry e;
        e.graph6 = to_graph6(st.graph);
        e.omega = omega(st.graph);
        e.alpha = alpha(st.graph);
        e.deficiency = st.graph.vertex_count();  // above any possible value
        for (const auto& sc : labelings) {
            e.hat = e.hat || in_hat(sc);
            e.tilde = e.tilde || in_tilde(sc);
            e.deficiency = std::min(e.deficiency, deficiency(sc));
        }
        if (filter.require_hat && !e.hat) continue;
        if (filter.complement_of_hat && e.hat) continue;
        if (filter.require_tilde && !e.tilde) continue;
        classes.emplace(std::move(key), res.entries.size());
        res.entries.push_back(std::move(e));
        res.witnesses.push_back(labelings.front());
    }
    // sort by canonical form for deterministic output
    std::vector<std::size_t> order(res.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<std::string> keys(res.entries.size());
    for (const auto& [key, idx] : classes) keys[idx] = key;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    EnumerationResult sorted;
    sorted.n = n;
    sorted.d = d;
    for (std::size_t i : order) {
        sorted.entries.push_back(std::move(res.entries[i]));
        sorted.witnesses.push_back(std::move(res.witnesses[i]));
    }
    return sorted;
}

void write_catalog(std::ostream& os, const EnumerationResult& res) {
    for (const auto& e : res.entries)
        os << e.graph6 << '\t' << e.omega << '\t' << e.alpha << '\t' << (e.hat ? 1 : 0) << '\t'
           << (e.tilde ? 1 : 0) << '\t' << e.deficiency << '\n';
}

EnumerationResult read_catalog(std::istream& is, int n, int d) {
    EnumerationResult res;
    res.n = n;
    res.d = d;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        CatalogEntry e;
        int hat, tilde;
        if (!(ss >> e.graph6 >> e.omega >> e.alpha >> hat >> tilde >> e.deficiency))
            throw std::invalid_argument("catalog: malformed line: " + line);
        e.hat = hat != 0;
        e.tilde = tilde != 0;
        res.entries.push_back(std::move(e));
    }
    return res;
}

}  // namespace liftrank
