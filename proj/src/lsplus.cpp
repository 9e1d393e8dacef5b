#include "liftrank/lsplus.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace liftrank {

namespace {

struct Term {
    int block, i, j;  // i <= j; coefficient applies to the entry value
    double coef;
};

struct Lin {
    std::vector<Term> terms;
    std::vector<std::pair<int, double>> scalars;  // (index in scalar block, coef)
    double constant = 0.0;
    bool bare_nonneg = false;  // single nonnegative variable: skip its >=0 row
};

Lin term1(int block, int i, int j, double c) {
    Lin l;
    if (i > j) std::swap(i, j);
    l.terms.push_back({block, i, j, c});
    return l;
}

Lin operator+(Lin a, const Lin& b) {
    for (const auto& t : b.terms) a.terms.push_back(t);
    for (const auto& s : b.scalars) a.scalars.push_back(s);
    a.constant += b.constant;
    a.bare_nonneg = false;
    return a;
}

Lin operator-(Lin a, const Lin& b) {
    for (auto t : b.terms) {
        t.coef = -t.coef;
        a.terms.push_back(t);
    }
    for (auto s : b.scalars) a.scalars.emplace_back(s.first, -s.second);
    a.constant -= b.constant;
    a.bare_nonneg = false;
    return a;
}

void normalize(Lin& l) {
    std::sort(l.terms.begin(), l.terms.end(), [](const Term& a, const Term& b) {
        return std::tie(a.block, a.i, a.j) < std::tie(b.block, b.i, b.j);
    });
    std::vector<Term> merged;
    for (const auto& t : l.terms) {
        if (!merged.empty() && merged.back().block == t.block && merged.back().i == t.i &&
            merged.back().j == t.j)
            merged.back().coef += t.coef;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coef == 0.0; }),
                 merged.end());
    l.terms = std::move(merged);
    std::sort(l.scalars.begin(), l.scalars.end());
    std::vector<std::pair<int, double>> ms;
    for (const auto& s : l.scalars) {
        if (!ms.empty() && ms.back().first == s.first)
            ms.back().second += s.second;
        else
            ms.push_back(s);
    }
    ms.erase(std::remove_if(ms.begin(), ms.end(),
                            [](const auto& s) { return s.second == 0.0; }),
             ms.end());
    l.scalars = std::move(ms);
}

// Builds the tree of PSD blocks for one LS+^k query.
struct TreeBuilder {
    SdpProblem prob;
    std::vector<std::string> paths;
    int scalar_block = -1;
    std::vector<double> scalar_objective;
    int n_scalars = 0;
    std::vector<SdpConstraint> slack_rows;  // completed on finish()
    int slack_count = 0;
    std::unordered_set<std::string> ineq_seen;
    int rows_emitted = 0;

    int add_scalar() {
        if (scalar_block < 0) {
            scalar_block = static_cast<int>(prob.blocks.size());
            prob.blocks.push_back({BlockKind::Diag, 0});
            paths.push_back("scalars");
        }
        ++prob.blocks[scalar_block].dim;
        return n_scalars++;
    }

    int add_block(int dim, const std::string& path) {
        prob.blocks.push_back({BlockKind::Psd, dim});
        paths.push_back(path);
        return static_cast<int>(prob.blocks.size()) - 1;
    }

    void emit_entries(SdpConstraint& row, const Lin& l) {
        for (const auto& t : l.terms)
            row.entries.push_back({t.block, t.i, t.j, t.i == t.j ? t.coef : 0.5 * t.coef});
        for (const auto& s : l.scalars)
            row.entries.push_back({scalar_block, s.first, s.first, s.second});
        row.rhs = -l.constant;
        if (row.rhs == 0.0) row.rhs = 0.0;  // drop the sign of negative zero
    }

    void equal_zero(Lin l) {
        normalize(l);
        if (l.terms.empty() && l.scalars.empty()) {
            if (std::fabs(l.constant) > 1e-12)
                throw std::logic_error("lsplus: contradictory constant equality");
            return;
        }
        SdpConstraint row;
        emit_entries(row, l);
        prob.constraints.push_back(std::move(row));
        ++rows_emitted;
    }

    void nonneg(Lin l) {
        if (l.bare_nonneg) return;
        normalize(l);
        if (l.terms.empty() && l.scalars.empty()) {
            if (l.constant < -1e-12) throw std::logic_error("lsplus: contradictory constant row");
            return;
        }
        std::ostringstream key;
        for (const auto& t : l.terms) key << t.block << ',' << t.i << ',' << t.j << ':' << t.coef << ';';
        for (const auto& s : l.scalars) key << 's' << s.first << ':' << s.second << ';';
        key << '#' << l.constant;
        if (!ineq_seen.insert(key.str()).second) return;
        slack_rows.emplace_back();
        emit_entries(slack_rows.back(), l);
        slack_rows.back().entries.push_back({-1, slack_count, slack_count, -1.0});  // patched later
        ++slack_count;
        ++rows_emitted;
    }

    // cone(FRAC(H)) on an affine vector
    void leaf(const Graph& h, const std::vector<Lin>& vec) {
        const int n = h.vertex_count();
        for (int v = 0; v < n; ++v) {
            nonneg(vec[v + 1]);
            nonneg(vec[0] - vec[v + 1]);
        }
        for (auto [u, v] : h.edges()) nonneg(vec[0] - vec[u + 1] - vec[v + 1]);
    }

    // vec empty <=> free root (optimization form: only Z00 = 1 is pinned)
    int process(const Graph& h, int level, const std::vector<Lin>& vec, const std::string& path,
                const std::vector<int>& names) {
        const int n = h.vertex_count();
        if (n == 0) {
            if (!vec.empty()) nonneg(vec[0]);
            return -1;
        }
        if (level == 0) {
            if (vec.empty()) throw std::logic_error("lsplus: level-0 root must be bound");
            leaf(h, vec);
            return -1;
        }
        int zb = add_block(n + 1, path);
        auto z = [&](int i, int j) { return term1(zb, i, j, 1.0); };
        // diag = column 0
        for (int v = 0; v < n; ++v) equal_zero(z(0, v + 1) - z(v + 1, v + 1));
        // vector ties (or the normalization row for a free root)
        if (!vec.empty()) {
            Lin c0 = vec[0];
            equal_zero(z(0, 0) - c0);
            for (int v = 0; v < n; ++v) equal_zero(z(v + 1, v + 1) - vec[v + 1]);
        }
        // entries across edges vanish inside the cone
        for (auto [u, v] : h.edges()) equal_zero(z(u + 1, v + 1));
        // children
        for (int u = 0; u < n; ++u) {
            {
                auto ind = h.destroy(u);
                std::vector<Lin> child(ind.graph.vertex_count() + 1);
                child[0] = z(u + 1, u + 1);
                for (int t = 0; t < ind.graph.vertex_count(); ++t)
                    child[t + 1] = z(ind.new_to_old[t] + 1, u + 1);
                std::vector<int> cn(ind.graph.vertex_count());
                for (int t = 0; t < ind.graph.vertex_count(); ++t) cn[t] = names[ind.new_to_old[t]];
                process(ind.graph, level - 1, child, path + "/+v" + std::to_string(names[u]), cn);
            }
            {
                auto ind = h.delete_vertices(vbit(u));
                std::vector<Lin> child(ind.graph.vertex_count() + 1);
                child[0] = z(0, 0) - z(u + 1, u + 1);
                for (int t = 0; t < ind.graph.vertex_count(); ++t) {
                    int o = ind.new_to_old[t];
                    child[t + 1] = z(o + 1, o + 1) - z(o + 1, u + 1);
                }
                std::vector<int> cn(ind.graph.vertex_count());
                for (int t = 0; t < ind.graph.vertex_count(); ++t) cn[t] = names[ind.new_to_old[t]];
                process(ind.graph, level - 1, child, path + "/-v" + std::to_string(names[u]), cn);
            }
        }
        return zb;
    }

    void finish() {
        if (slack_count > 0) {
            int sb = static_cast<int>(prob.blocks.size());
            prob.blocks.push_back({BlockKind::Diag, slack_count});
            paths.push_back("slacks");
            for (auto& row : slack_rows) {
                for (auto& e : row.entries)
                    if (e.block == -1) e.block = sb;
                prob.constraints.push_back(std::move(row));
            }
            slack_rows.clear();
        }
        if (scalar_block >= 0)
            for (int i = 0; i < n_scalars; ++i)
                if (scalar_objective.size() > static_cast<std::size_t>(i) && scalar_objective[i] != 0.0)
                    prob.objective.push_back({scalar_block, i, i, scalar_objective[i]});
        prob.block_names = paths;
    }
};

// Rough row count of the unrolled tree, to enforce the size budget before
// building anything.
long long estimate_rows(const Graph& h, int level) {
    const int n = h.vertex_count();
    if (n == 0) return 1;
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    if (level == 0) return 2LL * n + h.edge_count();
    long long total = 2LL * n + 1 + h.edge_count();
    for (int u = 0; u < n; ++u) {
        total += estimate_rows(h.destroy(u).graph, level - 1);
        total += estimate_rows(h.delete_vertices(vbit(u)).graph, level - 1);
    }
    (void)pairs;
    return total;
}

void check_budget(const Graph& g, int level, const LsSettings& settings, BuildResult& out) {
    long long est = estimate_rows(g, level);
    out.rows_estimate = static_cast<int>(std::min<long long>(est, 1 << 30));
    if (est > settings.max_rows)
        throw std::invalid_argument("lsplus: level too deep for size budget (estimated " +
                                    std::to_string(est) + " rows, budget " +
                                    std::to_string(settings.max_rows) + ")");
}

std::vector<int> identity_names(const Graph& g) {
    std::vector<int> names(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) names[v] = v;
    return names;
}

}  // namespace

std::string BuildResult::manifest_json() const {
    nlohmann::json j;
    j["level"] = level;
    j["root_block"] = root_block;
    j["scalar_block"] = scalar_block;
    j["eps_index"] = eps_index;
    auto arr = nlohmann::json::array();
    for (std::size_t b = 0; b < block_paths.size(); ++b) {
        arr.push_back({{"block", b},
                       {"path", block_paths[b]},
                       {"kind", problem.blocks[b].kind == BlockKind::Psd ? "psd" : "diag"},
                       {"dim", problem.blocks[b].dim}});
    }
    j["blocks"] = arr;
    return j.dump(2);
}

BuildResult build_membership(const Graph& g, int level, const ConeVector& w,
                             const LsSettings& settings) {
    if (level < 1) throw std::invalid_argument("build_membership: level >= 1 required");
    if (w.n() != g.vertex_count()) throw std::invalid_argument("build_membership: size mismatch");
    BuildResult out;
    out.level = level;
    check_budget(g, level, settings, out);
    TreeBuilder tb;
    std::vector<Lin> root(g.vertex_count() + 1);
    for (int i = 0; i <= g.vertex_count(); ++i) root[i].constant = w.entries[i].to_double();
    out.root_block = tb.process(g, level, root, "root", identity_names(g));
    tb.finish();
    out.problem = std::move(tb.prob);
    out.problem.maximize = true;
    out.block_paths = std::move(tb.paths);
    out.scalar_block = tb.scalar_block;
    return out;
}

BuildResult build_membership_eps(const Graph& g, int level, const ConeVector& u,
                                 const ConeVector& pert, const LsSettings& settings) {
    if (u.n() != g.vertex_count() || pert.n() != g.vertex_count())
        throw std::invalid_argument("build_membership_eps: size mismatch");
    BuildResult out;
    out.level = level;
    check_budget(g, level, settings, out);
    TreeBuilder tb;
    out.eps_index = tb.add_scalar();
    tb.scalar_objective.assign(1, 1.0);  // maximize eps
    std::vector<Lin> root(g.vertex_count() + 1);
    for (int i = 0; i <= g.vertex_count(); ++i) {
        root[i].constant = u.entries[i].to_double();
        double pc = pert.entries[i].to_double();
        if (pc != 0.0) root[i].scalars.emplace_back(out.eps_index, -pc);
    }
    if (level == 0) {
        tb.leaf(g, root);
    } else {
        out.root_block = tb.process(g, level, root, "root", identity_names(g));
    }
    tb.finish();
    out.problem = std::move(tb.prob);
    out.problem.maximize = true;
    out.block_paths = std::move(tb.paths);
    out.scalar_block = tb.scalar_block;
    return out;
}

BuildResult build_optimize(const Graph& g, int level, const std::vector<std::int64_t>& objective,
                           const LsSettings& settings) {
    if (static_cast<int>(objective.size()) != g.vertex_count())
        throw std::invalid_argument("build_optimize: objective size mismatch");
    BuildResult out;
    out.level = level;
    check_budget(g, level, settings, out);
    TreeBuilder tb;
    const int n = g.vertex_count();
    if (level == 0) {
        out.lp_block = static_cast<int>(tb.prob.blocks.size());
        tb.prob.blocks.push_back({BlockKind::Diag, n});
        tb.paths.push_back("x");
        std::vector<Lin> root(n + 1);
        root[0].constant = 1.0;
        for (int v = 0; v < n; ++v) {
            root[v + 1] = term1(out.lp_block, v, v, 1.0);
            root[v + 1].bare_nonneg = true;
        }
        tb.leaf(g, root);
        for (int v = 0; v < n; ++v)
            if (objective[v] != 0)
                tb.prob.objective.push_back({out.lp_block, v, v, static_cast<double>(objective[v])});
    } else {
        out.root_block = tb.process(g, level, {}, "root", identity_names(g));
        SdpConstraint norm;
        norm.entries.push_back({out.root_block, 0, 0, 1.0});
        norm.rhs = 1.0;
        tb.prob.constraints.push_back(std::move(norm));
        for (int v = 0; v < n; ++v)
            if (objective[v] != 0)
                tb.prob.objective.push_back(
                    {out.root_block, v + 1, v + 1, static_cast<double>(objective[v])});
    }
    tb.finish();
    out.problem = std::move(tb.prob);
    out.problem.maximize = true;
    out.block_paths = std::move(tb.paths);
    out.scalar_block = tb.scalar_block;
    return out;
}

RelaxationResult optimize(const Graph& g, int level, const LinearInequality& objective,
                          const LsSettings& settings) {
    BuildResult build = build_optimize(g, level, objective.coeffs, settings);
    SdpSolution sol = solve(build.problem, settings.solver);
    RelaxationResult res;
    res.graph6 = to_graph6(g);
    res.level = level;
    res.status = sol.status;
    res.reliable = sol.accurate(1e-6);
    res.optimum = sol.objective;
    res.gap_rel = sol.gap_rel;
    res.iterations = sol.iterations;
    if (res.reliable || sol.status == SolveStatus::MaxIter) {
        res.optimizer.resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            res.optimizer[v] = level == 0 ? sol.primal[build.lp_block][v]
                                          : sol.block_entry(build.root_block, v + 1, v + 1,
                                                            build.problem);
    }
    // both ends of the sandwich: exact stable-set optimum and the LP value
    if (level > 0) {
        BuildResult lp = build_optimize(g, 0, objective.coeffs, settings);
        SdpSolution lps = solve(lp.problem, settings.solver);
        res.frac_value = lps.objective;
    } else {
        res.frac_value = sol.objective;
    }
    std::int64_t best = 0;
    for (VertexSet s : all_stable_sets(g)) {
        std::int64_t val = 0;
        VertexSet rest = s;
        while (rest) {
            val += objective.coeffs[vfirst(rest)];
            rest &= rest - 1;
        }
        best = std::max(best, val);
    }
    res.stab_value = static_cast<double>(best);
    return res;
}

EpsResult max_eps_vector(const Graph& g, const ConeVector& u, const ConeVector& pert, int level,
                         const LsSettings& settings) {
    BuildResult build = build_membership_eps(g, level, u, pert, settings);
    SdpSolution sol = solve(build.problem, settings.solver);
    EpsResult res;
    res.status = sol.status;
    if (sol.accurate(1e-6)) {
        res.eps = sol.objective;
        res.known = true;
    }
    return res;
}

EpsResult max_eps(const StretchedClique& sc, int level, const LsSettings& settings) {
    LinearEquality rank_eq;
    rank_eq.coeffs.assign(sc.graph.vertex_count(), 1);
    rank_eq.rhs = sc.d() + 1;
    ConeVector u = u_vector(sc.graph, {rank_eq});
    ConeVector pert;
    pert.entries.assign(sc.graph.vertex_count() + 1, Rational(0));
    pert.entries[0] = Rational(1);
    VertexSet hubs = sc.hub_vertices();
    while (hubs) {
        pert.at(vfirst(hubs)) = Rational(1);
        hubs &= hubs - 1;
    }
    return max_eps_vector(sc.graph, u, pert, level, settings);
}

EpsResult max_eps_bisect(const StretchedClique& sc, int level, double hi,
                         const LsSettings& settings) {
    LinearEquality rank_eq;
    rank_eq.coeffs.assign(sc.graph.vertex_count(), 1);
    rank_eq.rhs = sc.d() + 1;
    ConeVector u = u_vector(sc.graph, {rank_eq});
    VertexSet hubs = sc.hub_vertices();
    auto v_at = [&](double eps) {
        ConeVector v = u;
        v.entries[0] = v.entries[0] - Rational(static_cast<std::int64_t>(eps * (1 << 20)), 1 << 20);
        VertexSet h = hubs;
        while (h) {
            v.at(vfirst(h)) =
                v.at(vfirst(h)) - Rational(static_cast<std::int64_t>(eps * (1 << 20)), 1 << 20);
            h &= h - 1;
        }
        return v;
    };
    double lo = 0.0;
    EpsResult res;
    res.status = SolveStatus::Optimal;
    for (int it = 0; it < 20; ++it) {
        double mid = 0.5 * (lo + hi);
        FeasStatus st = membership(sc.graph, level, v_at(mid), settings);
        if (st == FeasStatus::Feasible)
            lo = mid;
        else if (st == FeasStatus::Infeasible)
            hi = mid;
        else {
            hi = mid;  // treat the undecided band as the boundary
        }
        if (hi - lo < 1e-5) break;
    }
    res.eps = lo;
    res.known = true;
    return res;
}

FeasStatus membership(const Graph& g, int level, const ConeVector& w, const LsSettings& settings) {
    if (level == 0) return cone_frac_contains(g, w) ? FeasStatus::Feasible : FeasStatus::Infeasible;
    if (w.at0() < Rational(0)) return FeasStatus::Infeasible;
    BuildResult build = build_membership(g, level, w, settings);
    return feasibility(build.problem, settings.solver).status;
}

LiftCertificate extract_certificate(const BuildResult& build, const SdpSolution& sol,
                                    const Graph& g, const ConeVector& w) {
    LiftCertificate cert;
    cert.min_eigenvalue = 0.0;
    for (std::size_t b = 0; b < build.problem.blocks.size(); ++b) {
        if (build.problem.blocks[b].kind != BlockKind::Psd) continue;
        LiftCertificate::Node node;
        node.path = b < build.block_paths.size() ? build.block_paths[b] : "";
        node.level = build.level - static_cast<int>(std::count(node.path.begin(), node.path.end(), '/'));
        int d = build.problem.blocks[b].dim;
        node.y.assign(d, std::vector<double>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) node.y[i][j] = sol.primal[b][i * d + j];
        for (int i = 1; i < d; ++i)
            cert.max_diag_tie_error =
                std::max(cert.max_diag_tie_error, std::fabs(node.y[0][i] - node.y[i][i]));
        cert.nodes.push_back(std::move(node));
    }
    if (build.root_block >= 0) {
        int d = build.problem.blocks[build.root_block].dim;
        for (int i = 0; i < d; ++i) {
            double want = w.entries[i].to_double();
            cert.root_vector_error = std::max(
                cert.root_vector_error,
                std::fabs(sol.primal[build.root_block][static_cast<std::size_t>(i) * d] - want));
        }
    }
    // leaf violations: recheck every cone(FRAC) inequality of the original
    // problem from the primal iterate
    double worst = 0.0;
    for (const auto& c : build.problem.constraints) {
        double lhs = 0.0;
        for (const auto& e : c.entries) {
            double x = sol.block_entry(e.block, e.row, e.col, build.problem);
            lhs += (e.row == e.col ? 1.0 : 2.0) * e.value * x;
        }
        worst = std::max(worst, std::fabs(lhs - c.rhs));
    }
    cert.max_leaf_violation = worst;
    // smallest eigenvalue across nodes, located by bisection on the shift
    // that makes Y + shift*I factorable
    auto factorable = [](std::vector<double> a, int d) {
        for (int j = 0; j < d; ++j) {
            double diag = a[j * d + j];
            for (int k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
            if (diag <= 0.0 || !std::isfinite(diag)) return false;
            double root = std::sqrt(diag);
            a[j * d + j] = root;
            for (int i = j + 1; i < d; ++i) {
                double v = a[i * d + j];
                for (int k = 0; k < j; ++k) v -= a[i * d + k] * a[j * d + k];
                a[i * d + j] = v / root;
            }
        }
        return true;
    };
    double mn = 0.0;
    for (const auto& node : cert.nodes) {
        int d = static_cast<int>(node.y.size());
        std::vector<double> flat(d * d);
        double scale = 1.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                flat[i * d + j] = node.y[i][j];
                scale = std::max(scale, std::fabs(node.y[i][j]));
            }
        auto shifted_ok = [&](double shift) {
            std::vector<double> t = flat;
            for (int i = 0; i < d; ++i) t[i * d + i] += shift;
            return factorable(std::move(t), d);
        };
        if (shifted_ok(0.0)) continue;
        double lo = 0.0, hi = scale;
        while (!shifted_ok(hi)) hi *= 4.0;
        for (int it = 0; it < 60 && hi - lo > 1e-14 * scale; ++it) {
            double mid = 0.5 * (lo + hi);
            (shifted_ok(mid) ? hi : lo) = mid;
        }
        mn = std::min(mn, -hi);
    }
    cert.min_eigenvalue = mn;
    (void)g;
    return cert;
}

bool LiftCertificate::valid(double tol) const {
    return max_diag_tie_error <= tol && max_leaf_violation <= tol && root_vector_error <= tol &&
           min_eigenvalue >= -tol;
}

RankStepMatrices rank_step_matrices(const StretchedClique& sc, const Rational& eps) {
    const Graph& g = sc.graph;
    const int n = g.vertex_count();
    LinearInequality rank_ineq = rank_inequality(g);
    if (rank_ineq.rhs != sc.d() + 1)
        throw std::logic_error("rank_step_matrices: alpha(G) != d+1");
    if (!is_facet(g, rank_ineq))
        throw std::invalid_argument("rank_step_matrices: rank inequality is not facet-inducing");
    VertexSet hubs = sc.hub_vertices();
    Rational c_dot_chi(vcount(hubs));
    Rational c0(rank_ineq.rhs);
    if (!(Rational(0) < c_dot_chi && c_dot_chi < c0))
        throw std::invalid_argument("rank_step_matrices: need 0 < c^T chi_D < c0");

    RankStepMatrices out;
    out.eps = eps;
    out.c_dot_chi = c_dot_chi;
    out.c0 = c0;
    out.facet_normal.assign(n + 1, Rational(1));
    out.facet_normal[0] = -c0;

    auto zero = std::vector<std::vector<Rational>>(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    out.y0 = zero;
    for (VertexSet t : stable_sets(g, static_cast<int>(rank_ineq.rhs))) {
        std::vector<Rational> h(n + 1, Rational(0));
        h[0] = Rational(1);
        for (int v : vmembers(t)) h[v + 1] = Rational(1);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) out.y0[i][j] += h[i] * h[j];
    }
    out.y1 = zero;
    out.y1[0][0] = -(c_dot_chi / c0) * eps * (Rational(1) - eps);
    for (int v : vmembers(hubs)) {
        out.y1[0][v + 1] = out.y1[v + 1][0] = -eps;
        for (int u : vmembers(hubs)) out.y1[v + 1][u + 1] = -eps;
    }
    out.y = zero;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) out.y[i][j] = out.y0[i][j] + out.y1[i][j];
    return out;
}

RankBounds rank_bounds(const Graph& g, int budget, const LsSettings& settings) {
    RankBounds rb;
    const int n = g.vertex_count();
    rb.upper = n / 3;  // r_+ never exceeds a third of the vertex count
    if (n == 0) {
        rb.proven_exact = true;
        return rb;
    }
    const int a = alpha(g);
    LinearInequality obj = rank_inequality(g);
    for (int k = 0; k <= budget; ++k) {
        RelaxationResult r;
        try {
            r = optimize(g, k, obj, settings);
        } catch (const std::invalid_argument&) {
            rb.unknown = true;  // size budget hit
            break;
        }
        if (!r.reliable) {
            rb.unknown = true;
            break;
        }
        if (r.optimum > a + 1e-5) {
            rb.lower = k + 1;
        } else {
            rb.upper = std::min(rb.upper, k);
            break;
        }
        if (rb.lower == rb.upper) break;  // deeper levels cannot move either bound
    }
    rb.proven_exact = !rb.unknown && rb.lower == rb.upper;
    return rb;
}

MinimalityResult verify_minimal(const Graph& g, const LsSettings& settings) {
    MinimalityResult res;
    const int n = g.vertex_count();
    if (n % 3 != 0 || n == 0) {
        res.verdict = Verdict::False;
        return res;
    }
    res.ell = n / 3;
    res.bounds = rank_bounds(g, res.ell - 1, settings);
    if (res.bounds.unknown) {
        res.verdict = Verdict::Unknown;
    } else if (res.bounds.lower >= res.ell) {
        res.verdict = Verdict::True;  // upper = |V|/3 is automatic
    } else if (res.bounds.upper < res.ell) {
        res.verdict = Verdict::False;
    } else {
        res.verdict = Verdict::Unknown;
    }
    return res;
}

void dump_problem(const BuildResult& build, std::ostream& sdpa_out, std::ostream& manifest_out) {
    write_sdpa(sdpa_out, build.problem);
    manifest_out << build.manifest_json();
}

}  // namespace liftrank
