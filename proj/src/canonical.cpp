#include "liftrank/canonical.hpp"

#include <algorithm>
#include <stdexcept>

namespace liftrank {

namespace {

using Cells = std::vector<std::vector<int>>;

// Equitable refinement: repeatedly split cells by the per-cell neighbor-count
// signature until stable. Split pieces stay at their parent cell's position,
// ordered by signature, so the refinement is isomorphism-invariant.
void refine(const Graph& g, Cells& cells) {
    const int n = g.vertex_count();
    std::vector<int> cell_of(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
        Cells next;
        next.reserve(cells.size());
        for (const auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            // signature of v = counts of neighbors in each current cell
            std::vector<std::pair<std::vector<int>, int>> sigs;
            sigs.reserve(cell.size());
            for (int v : cell) {
                std::vector<int> sig(cells.size(), 0);
                VertexSet nb = g.neighbors(v);
                while (nb) {
                    ++sig[cell_of[vfirst(nb)]];
                    nb &= nb - 1;
                }
                sigs.emplace_back(std::move(sig), v);
            }
            std::stable_sort(sigs.begin(), sigs.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<int> piece{sigs[0].second};
            for (std::size_t i = 1; i < sigs.size(); ++i) {
                if (sigs[i].first != sigs[i - 1].first) {
                    next.push_back(piece);
                    piece.clear();
                    changed = true;
                }
                piece.push_back(sigs[i].second);
            }
            next.push_back(std::move(piece));
        }
        cells = std::move(next);
        if (!changed) break;
    }
}

struct Search {
    const Graph& g;
    std::string best;       // bit chars, column-major upper triangle
    bool have_best = false;
    std::vector<int> best_labeling;

    void visit(Cells cells) {
        refine(g, cells);
        // leading singleton prefix
        int t = 0;
        while (t < static_cast<int>(cells.size()) && cells[t].size() == 1) ++t;
        std::string partial = prefix_bits(cells, t);
        if (have_best && partial.compare(0, partial.size(), best, 0, partial.size()) > 0)
            return;  // every leaf below shares this prefix
        if (t == static_cast<int>(cells.size())) {
            if (!have_best || partial < best) {
                best = std::move(partial);
                have_best = true;
                best_labeling.clear();
                for (const auto& cell : cells) best_labeling.push_back(cell[0]);
            }
            return;
        }
        const std::vector<int> target = cells[t];
        for (int v : target) {
            Cells child(cells.begin(), cells.begin() + t);
            child.push_back({v});
            std::vector<int> rest;
            for (int u : target)
                if (u != v) rest.push_back(u);
            child.push_back(std::move(rest));
            child.insert(child.end(), cells.begin() + t + 1, cells.end());
            visit(std::move(child));
        }
    }

    std::string prefix_bits(const Cells& cells, int t) const {
        std::string bits;
        bits.reserve(static_cast<std::size_t>(t) * t / 2);
        for (int j = 1; j < t; ++j)
            for (int i = 0; i < j; ++i)
                bits.push_back(g.has_edge(cells[i][0], cells[j][0]) ? '1' : '0');
        return bits;
    }
};

}  // namespace

CanonicalForm canonical(const Graph& g, const std::vector<int>& colors) {
    const int n = g.vertex_count();
    if (n > 18) throw std::invalid_argument("canonical: supported up to n = 18");
    if (static_cast<int>(colors.size()) != n)
        throw std::invalid_argument("canonical: color vector size mismatch");

    Cells cells;
    {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return colors[a] < colors[b]; });
        for (int i = 0; i < n; ++i) {
            if (i == 0 || colors[order[i]] != colors[order[i - 1]]) cells.push_back({});
            cells.back().push_back(order[i]);
        }
    }

    Search s{g};
    if (n == 0) {
        s.best = "";
        s.have_best = true;
    } else {
        s.visit(std::move(cells));
    }

    CanonicalForm form;
    form.labeling = s.best_labeling;
    form.key.push_back(static_cast<char>('0' + n));
    for (int v : s.best_labeling) form.key.push_back(static_cast<char>('a' + colors[v]));
    form.key.push_back('|');
    form.key += s.best;
    return form;
}

CanonicalForm canonical(const Graph& g) {
    return canonical(g, std::vector<int>(g.vertex_count(), 0));
}

namespace {

bool iso_rec(const Graph& a, const Graph& b, std::vector<int>& map, std::vector<bool>& used, int v) {
    const int n = a.vertex_count();
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
        if (used[w] || a.degree(v) != b.degree(w)) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u)
            if (a.has_edge(u, v) != b.has_edge(map[u], w)) ok = false;
        if (!ok) continue;
        map[v] = w;
        used[w] = true;
        if (iso_rec(a, b, map, used, v + 1)) return true;
        used[w] = false;
    }
    return false;
}

}  // namespace

bool isomorphic_bruteforce(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.vertex_count(); ++v) da.push_back(a.degree(v));
    for (int v = 0; v < b.vertex_count(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    std::vector<int> map(a.vertex_count(), -1);
    std::vector<bool> used(a.vertex_count(), false);
    return iso_rec(a, b, map, used, 0);
}

}  // namespace liftrank
