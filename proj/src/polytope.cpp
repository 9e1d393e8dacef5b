#include "liftrank/polytope.hpp"

#include <stdexcept>

namespace liftrank {

int rational_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[row], rows[pivot]);
        for (std::size_t r = row + 1; r < rows.size(); ++r) {
            if (rows[r][col].is_zero()) continue;
            Rational f = rows[r][col] / rows[row][col];
            for (std::size_t c = col; c < cols; ++c) rows[r][c] -= f * rows[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Rational>> rational_kernel(const std::vector<std::vector<Rational>>& mat) {
    if (mat.empty()) return {};
    const std::size_t m = mat.size();
    const std::size_t n = mat[0].size();
    auto rows = mat;
    std::vector<int> pivot_col_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t pivot = row;
        while (pivot < m && rows[pivot][col].is_zero()) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[row], rows[pivot]);
        Rational inv = Rational(1) / rows[row][col];
        for (std::size_t c = 0; c < n; ++c) rows[row][c] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || rows[r][col].is_zero()) continue;
            Rational f = rows[r][col];
            for (std::size_t c = 0; c < n; ++c) rows[r][c] -= f * rows[row][c];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col_of_row) is_pivot[c] = true;
    std::vector<std::vector<Rational>> kernel;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> vec(n, Rational(0));
        vec[free_col] = Rational(1);
        for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
            vec[pivot_col_of_row[r]] = -rows[r][free_col];
        kernel.push_back(std::move(vec));
    }
    return kernel;
}

std::vector<LinearInequality> frac_system(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<LinearInequality> out;
    for (int v = 0; v < n; ++v) {
        LinearInequality lo;  // -x_v <= 0
        lo.coeffs.assign(n, 0);
        lo.coeffs[v] = -1;
        lo.rhs = 0;
        out.push_back(std::move(lo));
    }
    for (int v = 0; v < n; ++v) {
        LinearInequality hi;  // x_v <= 1
        hi.coeffs.assign(n, 0);
        hi.coeffs[v] = 1;
        hi.rhs = 1;
        out.push_back(std::move(hi));
    }
    for (auto [u, v] : g.edges()) {
        LinearInequality e;
        e.coeffs.assign(n, 0);
        e.coeffs[u] = 1;
        e.coeffs[v] = 1;
        e.rhs = 1;
        out.push_back(std::move(e));
    }
    return out;
}

LinearInequality rank_inequality(const Graph& g) {
    LinearInequality r;
    r.coeffs.assign(g.vertex_count(), 1);
    r.rhs = alpha(g);
    return r;
}

namespace {

std::int64_t eval_on_set(const std::vector<std::int64_t>& coeffs, VertexSet s) {
    std::int64_t total = 0;
    while (s) {
        total += coeffs[vfirst(s)];
        s &= s - 1;
    }
    return total;
}

std::vector<VertexSet> filtered_stable_sets(const Graph& g, const std::vector<LinearEquality>& eqs) {
    // when an equality is the all-ones form, enumerate only that cardinality
    int size_hint = -1;
    for (const auto& eq : eqs) {
        bool all_ones = true;
        for (auto c : eq.coeffs) all_ones = all_ones && c == 1;
        if (all_ones && static_cast<int>(eq.coeffs.size()) == g.vertex_count()) {
            size_hint = static_cast<int>(eq.rhs);
            break;
        }
    }
    std::vector<VertexSet> candidates =
        size_hint >= 0 ? stable_sets(g, size_hint) : all_stable_sets(g);
    std::vector<VertexSet> out;
    for (VertexSet s : candidates) {
        bool ok = true;
        for (const auto& eq : eqs)
            if (eval_on_set(eq.coeffs, s) != eq.rhs) { ok = false; break; }
        if (ok) out.push_back(s);
    }
    return out;
}

}  // namespace

ConeVector u_vector(const Graph& g, const std::vector<LinearEquality>& eqs) {
    for (const auto& eq : eqs)
        if (static_cast<int>(eq.coeffs.size()) != g.vertex_count())
            throw std::invalid_argument("u_vector: equality dimension mismatch");
    auto sets = filtered_stable_sets(g, eqs);
    if (sets.empty())
        throw std::domain_error("u_vector: no stable set satisfies the given equalities");
    ConeVector u;
    u.entries.assign(g.vertex_count() + 1, Rational(0));
    u.entries[0] = Rational(static_cast<std::int64_t>(sets.size()));
    for (VertexSet s : sets) {
        while (s) {
            u.at(vfirst(s)) += Rational(1);
            s &= s - 1;
        }
    }
    return u;
}

ConeVector v_vector(const StretchedClique& sc, const Rational& eps) {
    if (eps < Rational(0)) throw std::invalid_argument("v_vector: eps must be nonnegative");
    LinearEquality rank_eq;
    rank_eq.coeffs.assign(sc.graph.vertex_count(), 1);
    rank_eq.rhs = sc.d() + 1;
    ConeVector v = u_vector(sc.graph, {rank_eq});
    v.entries[0] -= eps;
    VertexSet hubs = sc.hub_vertices();
    while (hubs) {
        v.at(vfirst(hubs)) -= eps;
        hubs &= hubs - 1;
    }
    return v;
}

bool cone_frac_contains(const Graph& g, const ConeVector& w) {
    if (w.n() != g.vertex_count()) throw std::invalid_argument("cone_frac_contains: size mismatch");
    const Rational& lam = w.at0();
    if (lam < Rational(0)) return false;
    if (lam.is_zero()) {
        for (const auto& e : w.entries)
            if (!e.is_zero()) return false;
        return true;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (w.at(v) < Rational(0) || lam < w.at(v)) return false;
    for (auto [u, v] : g.edges())
        if (lam < w.at(u) + w.at(v)) return false;
    return true;
}

bool is_facet(const Graph& g, const LinearInequality& ineq) {
    const int n = g.vertex_count();
    if (static_cast<int>(ineq.coeffs.size()) != n)
        throw std::invalid_argument("is_facet: inequality dimension mismatch");
    std::vector<std::vector<Rational>> tight;
    for (VertexSet s : all_stable_sets(g)) {
        std::int64_t val = eval_on_set(ineq.coeffs, s);
        if (val > ineq.rhs)
            throw std::invalid_argument("is_facet: inequality is not valid for STAB(G)");
        if (val == ineq.rhs) {
            std::vector<Rational> row(n + 1, Rational(0));
            row[0] = Rational(1);
            for (int v = 0; v < n; ++v)
                if (vtest(s, v)) row[v + 1] = Rational(1);
            tight.push_back(std::move(row));
        }
    }
    if (tight.empty()) return false;
    return rational_rank(std::move(tight)) == n;
}

}  // namespace liftrank
