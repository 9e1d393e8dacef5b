#include "liftrank/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>

namespace liftrank {

namespace {

// ---------- small dense symmetric helpers (row-major, full storage) ----------

bool cholesky(std::vector<double>& a, int n) {
    // in-place lower Cholesky, blocked right-looking; false on a nonpositive
    // pivot
    constexpr int nb = 48;
    for (int k0 = 0; k0 < n; k0 += nb) {
        const int kb = std::min(nb, n - k0);
        // factor the diagonal panel
        for (int j = k0; j < k0 + kb; ++j) {
            double d = a[static_cast<std::size_t>(j) * n + j];
            const double* rj = &a[static_cast<std::size_t>(j) * n];
            for (int k = k0; k < j; ++k) d -= rj[k] * rj[k];
            if (d <= 0.0 || !std::isfinite(d)) return false;
            double root = std::sqrt(d);
            a[static_cast<std::size_t>(j) * n + j] = root;
            double inv = 1.0 / root;
            for (int i = j + 1; i < n; ++i) {
                double* ri = &a[static_cast<std::size_t>(i) * n];
                double s = ri[j];
                for (int k = k0; k < j; ++k) s -= ri[k] * rj[k];
                ri[j] = s * inv;
            }
        }
        // trailing update: A22 -= L21 L21^T, 2x2 register tiles over the panel
        const int start = k0 + kb;
        int i = start;
        for (; i + 1 < n; i += 2) {
            const double* li0 = &a[static_cast<std::size_t>(i) * n + k0];
            const double* li1 = &a[static_cast<std::size_t>(i + 1) * n + k0];
            double* out0 = &a[static_cast<std::size_t>(i) * n];
            double* out1 = &a[static_cast<std::size_t>(i + 1) * n];
            int j = start;
            for (; j + 1 <= i; j += 2) {
                const double* lj0 = &a[static_cast<std::size_t>(j) * n + k0];
                const double* lj1 = &a[static_cast<std::size_t>(j + 1) * n + k0];
                double s00 = 0, s01 = 0, s10 = 0, s11 = 0;
                for (int k = 0; k < kb; ++k) {
                    double x0 = li0[k], x1 = li1[k], y0 = lj0[k], y1 = lj1[k];
                    s00 += x0 * y0;
                    s01 += x0 * y1;
                    s10 += x1 * y0;
                    s11 += x1 * y1;
                }
                out0[j] -= s00;
                out0[j + 1] -= s01;
                out1[j] -= s10;
                out1[j + 1] -= s11;
            }
            for (; j <= i; ++j) {
                const double* lj0 = &a[static_cast<std::size_t>(j) * n + k0];
                double s0 = 0, s1 = 0;
                for (int k = 0; k < kb; ++k) {
                    s0 += li0[k] * lj0[k];
                    s1 += li1[k] * lj0[k];
                }
                out0[j] -= s0;
                out1[j] -= s1;
            }
            out1[i + 1] -= [&] {
                double s = 0;
                for (int k = 0; k < kb; ++k) s += li1[k] * li1[k];
                return s;
            }();
        }
        for (; i < n; ++i) {
            const double* li = &a[static_cast<std::size_t>(i) * n + k0];
            for (int j = start; j <= i; ++j) {
                const double* lj = &a[static_cast<std::size_t>(j) * n + k0];
                double s = 0.0;
                for (int k = 0; k < kb; ++k) s += li[k] * lj[k];
                a[static_cast<std::size_t>(i) * n + j] -= s;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = 0.0;
    return true;
}

void chol_solve_vec(const std::vector<double>& l, int n, std::vector<double>& x) {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
        x[i] = s / l[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
        x[i] = s / l[i * n + i];
    }
}

// inverse of SPD matrix from its Cholesky factor
std::vector<double> chol_inverse(const std::vector<double>& l, int n) {
    std::vector<double> inv(n * n, 0.0);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        chol_solve_vec(l, n, col);
        for (int i = 0; i < n; ++i) inv[i * n + j] = col[i];
    }
    // symmetrize against roundoff
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (inv[i * n + j] + inv[j * n + i]);
            inv[i * n + j] = inv[j * n + i] = v;
        }
    return inv;
}

// smallest eigenvalue by cyclic Jacobi; fine for the block sizes used here
double sym_eig_min(std::vector<double> a, int n) {
    if (n == 0) return 0.0;
    if (n == 1) return a[0];
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-300) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0];
    for (int i = 1; i < n; ++i) mn = std::min(mn, a[i * n + i]);
    return mn;
}

void mat_mul(const std::vector<double>& a, const std::vector<double>& b, std::vector<double>& out,
             int n) {
    out.assign(n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double aik = a[i * n + k];
            if (aik == 0.0) continue;
            const double* bk = &b[k * n];
            double* oi = &out[i * n];
            for (int j = 0; j < n; ++j) oi[j] += aik * bk[j];
        }
}

// ---------- internal problem form ----------

struct Entry {
    int block, i, j;  // i <= j
    double v;
};

struct Row {
    std::vector<Entry> entries;
    double rhs;
    int orig_index;  // -1 for synthesized rows
};

struct Internal {
    std::vector<BlockSpec> blocks;
    std::vector<std::vector<Entry>> cobj;  // per-block objective entries (min form)
    std::vector<Row> rows;
    double user_sign;  // +1 min, -1 for user-facing values of max problems
};

double frob_norm_entries(const std::vector<Entry>& es) {
    double s = 0;
    for (const auto& e : es) s += (e.i == e.j ? 1.0 : 2.0) * e.v * e.v;
    return std::sqrt(s);
}

// <A, X> with the symmetric off-diagonal convention
double dot_entries_block(const std::vector<Entry>& es, const std::vector<std::vector<double>>& x,
                         const std::vector<BlockSpec>& blocks) {
    double s = 0;
    for (const auto& e : es) {
        const auto& xb = x[e.block];
        if (blocks[e.block].kind == BlockKind::Diag)
            s += e.v * xb[e.i];
        else
            s += (e.i == e.j ? 1.0 : 2.0) * e.v * xb[e.i * blocks[e.block].dim + e.j];
    }
    return s;
}

void add_entries_scaled(std::vector<std::vector<double>>& target, const std::vector<Entry>& es,
                        double scale, const std::vector<BlockSpec>& blocks) {
    for (const auto& e : es) {
        auto& tb = target[e.block];
        if (blocks[e.block].kind == BlockKind::Diag) {
            tb[e.i] += scale * e.v;
        } else {
            int d = blocks[e.block].dim;
            tb[e.i * d + e.j] += scale * e.v;
            if (e.i != e.j) tb[e.j * d + e.i] += scale * e.v;
        }
    }
}

Internal build_internal(const SdpProblem& p) {
    Internal in;
    in.blocks = p.blocks;
    in.user_sign = p.maximize ? -1.0 : 1.0;
    in.cobj.resize(p.blocks.size());
    auto check_entry = [&](const MatEntry& e) {
        if (e.block < 0 || e.block >= static_cast<int>(p.blocks.size()))
            throw std::invalid_argument("sdp: entry block out of range");
        const auto& b = p.blocks[e.block];
        if (e.row < 0 || e.col < 0 || e.row >= b.dim || e.col >= b.dim || e.row > e.col)
            throw std::invalid_argument("sdp: entry indices invalid (need row <= col within dim)");
        if (b.kind == BlockKind::Diag && e.row != e.col)
            throw std::invalid_argument("sdp: diagonal block entry must be on the diagonal");
    };
    for (const auto& e : p.objective) {
        check_entry(e);
        in.cobj[e.block].push_back({e.block, e.row, e.col, in.user_sign * e.value});
    }
    for (std::size_t j = 0; j < p.constraints.size(); ++j) {
        Row row;
        row.rhs = p.constraints[j].rhs;
        row.orig_index = static_cast<int>(j);
        std::map<std::tuple<int, int, int>, double> merged;
        for (const auto& e : p.constraints[j].entries) {
            check_entry(e);
            merged[{e.block, e.row, e.col}] += e.value;
        }
        for (auto& [key, v] : merged)
            if (v != 0.0)
                row.entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
        in.rows.push_back(std::move(row));
    }
    return in;
}

// Presolve: exact-duplicate removal, then modified Gram-Schmidt over the rows
// not holding a private variable; dependent-and-consistent rows are dropped,
// inconsistent ones flag infeasibility. Returns kept row indices.
struct PresolveResult {
    std::vector<int> kept;
    bool inconsistent = false;
};

PresolveResult presolve_rows(Internal& in) {
    PresolveResult res;
    const std::size_t m = in.rows.size();
    // exact duplicates
    std::map<std::string, std::pair<int, double>> seen;
    std::vector<bool> drop(m, false);
    for (std::size_t j = 0; j < m; ++j) {
        std::ostringstream key;
        for (const auto& e : in.rows[j].entries)
            key << e.block << ',' << e.i << ',' << e.j << ':' << e.v << ';';
        auto it = seen.find(key.str());
        if (it == seen.end()) {
            seen.emplace(key.str(), std::make_pair(static_cast<int>(j), in.rows[j].rhs));
        } else {
            drop[j] = true;
            if (std::fabs(it->second.second - in.rows[j].rhs) > 1e-9) res.inconsistent = true;
        }
    }
    // variable occurrence counts over non-dropped rows
    std::map<std::tuple<int, int, int>, int> occur;
    for (std::size_t j = 0; j < m; ++j) {
        if (drop[j]) continue;
        for (const auto& e : in.rows[j].entries) ++occur[{e.block, e.i, e.j}];
    }
    std::vector<int> mgs_rows;
    std::vector<bool> private_var(m, false);
    for (std::size_t j = 0; j < m; ++j) {
        if (drop[j]) continue;
        bool has_private = false;
        for (const auto& e : in.rows[j].entries)
            if (occur[{e.block, e.i, e.j}] == 1) { has_private = true; break; }
        private_var[j] = has_private;
        if (!has_private) mgs_rows.push_back(static_cast<int>(j));
    }
    // dense indexing of the variables these rows touch
    std::map<std::tuple<int, int, int>, int> var_index;
    for (int j : mgs_rows)
        for (const auto& e : in.rows[j].entries) {
            auto key = std::make_tuple(e.block, e.i, e.j);
            if (!var_index.count(key)) {
                int next = static_cast<int>(var_index.size());
                var_index[key] = next;
            }
        }
    const int nv = static_cast<int>(var_index.size());
    std::vector<std::vector<double>> basis;        // orthonormal, dense
    std::vector<double> basis_rhs;                 // rhs transformed alongside
    for (int j : mgs_rows) {
        std::vector<double> v(nv, 0.0);
        for (const auto& e : in.rows[j].entries) {
            double w = (e.i == e.j ? 1.0 : std::sqrt(2.0)) * e.v;  // trace-consistent norm
            v[var_index[{e.block, e.i, e.j}]] = w;
        }
        double rhs = in.rows[j].rhs;
        double orig = 0;
        for (double t : v) orig += t * t;
        orig = std::sqrt(orig);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            double c = 0;
            for (int t = 0; t < nv; ++t) c += basis[k][t] * v[t];
            if (c == 0.0) continue;
            for (int t = 0; t < nv; ++t) v[t] -= c * basis[k][t];
            rhs -= c * basis_rhs[k];
        }
        double rn = 0;
        for (double t : v) rn += t * t;
        rn = std::sqrt(rn);
        if (rn <= 1e-10 * std::max(1.0, orig)) {
            drop[j] = true;  // dependent
            if (std::fabs(rhs) > 1e-8 * std::max(1.0, std::fabs(in.rows[j].rhs)))
                res.inconsistent = true;
            continue;
        }
        for (int t = 0; t < nv; ++t) v[t] /= rn;
        basis.push_back(std::move(v));
        basis_rhs.push_back(rhs / rn);
    }
    std::vector<Row> kept_rows;
    for (std::size_t j = 0; j < m; ++j) {
        if (drop[j]) continue;
        res.kept.push_back(static_cast<int>(j));
        kept_rows.push_back(std::move(in.rows[j]));
    }
    in.rows = std::move(kept_rows);
    return res;
}

struct BlockWork {
    std::vector<int> row_ids;  // rows touching this block
};

}  // namespace

double SdpSolution::block_entry(int block, int row, int col, const SdpProblem& p) const {
    if (p.blocks[block].kind == BlockKind::Diag) return primal[block][row];
    return primal[block][row * p.blocks[block].dim + col];
}

SdpSolution solve(const SdpProblem& p, const SolverSettings& settings) {
    Internal in = build_internal(p);
    SdpSolution sol;
    sol.dual.assign(p.constraints.size(), 0.0);

    PresolveResult pre = presolve_rows(in);
    if (pre.inconsistent) {
        sol.status = SolveStatus::Infeasible;
        sol.note = "presolve: inconsistent duplicate or dependent constraints";
        return sol;
    }
    const int m = static_cast<int>(in.rows.size());
    const int nblocks = static_cast<int>(in.blocks.size());

    // N = total dimension for the barrier parameter
    int total_dim = 0;
    for (const auto& b : in.blocks) total_dim += b.dim;
    if (total_dim == 0 || m == 0) {
        // degenerate: no variables or no constraints; evaluate directly
        sol.status = SolveStatus::Optimal;
        sol.primal.resize(nblocks);
        for (int b = 0; b < nblocks; ++b)
            sol.primal[b].assign(
                in.blocks[b].kind == BlockKind::Diag ? in.blocks[b].dim
                                                     : in.blocks[b].dim * in.blocks[b].dim,
                0.0);
        sol.objective = 0.0;
        sol.dual_objective = 0.0;
        return sol;
    }

    // per-block row lists
    std::vector<BlockWork> work(nblocks);
    for (int j = 0; j < m; ++j) {
        std::vector<bool> seen(nblocks, false);
        for (const auto& e : in.rows[j].entries) {
            if (!seen[e.block]) {
                seen[e.block] = true;
                work[e.block].row_ids.push_back(j);
            }
        }
    }

    std::vector<double> b(m);
    for (int j = 0; j < m; ++j) b[j] = in.rows[j].rhs;
    double bnorm = 0;
    for (double t : b) bnorm += t * t;
    bnorm = std::sqrt(bnorm);
    double cnorm = 0;
    for (int bb = 0; bb < nblocks; ++bb) cnorm += std::pow(frob_norm_entries(in.cobj[bb]), 2);
    cnorm = std::sqrt(cnorm);

    // starting point: scaled identities (SDPA-style heuristics)
    double xi = 10.0, eta = 10.0;
    for (int j = 0; j < m; ++j) {
        double an = frob_norm_entries(in.rows[j].entries);
        xi = std::max(xi, 10.0 * (1.0 + std::fabs(b[j])) / (1.0 + an));
        eta = std::max(eta, an);
    }
    eta = std::max(eta, cnorm);

    auto make_blocks = [&](double diag_value) {
        std::vector<std::vector<double>> out(nblocks);
        for (int bb = 0; bb < nblocks; ++bb) {
            const auto& bs = in.blocks[bb];
            if (bs.kind == BlockKind::Diag) {
                out[bb].assign(bs.dim, diag_value);
            } else {
                out[bb].assign(bs.dim * bs.dim, 0.0);
                for (int i = 0; i < bs.dim; ++i) out[bb][i * bs.dim + i] = diag_value;
            }
        }
        return out;
    };

    std::vector<std::vector<double>> X = make_blocks(xi);
    std::vector<std::vector<double>> S = make_blocks(eta);
    std::vector<double> y(m, 0.0);

    auto apply_A = [&](const std::vector<std::vector<double>>& M, std::vector<double>& out) {
        out.resize(m);
        for (int j = 0; j < m; ++j) out[j] = dot_entries_block(in.rows[j].entries, M, in.blocks);
    };
    auto apply_At = [&](const std::vector<double>& yy) {
        auto out = make_blocks(0.0);
        for (int j = 0; j < m; ++j)
            if (yy[j] != 0.0) add_entries_scaled(out, in.rows[j].entries, yy[j], in.blocks);
        return out;
    };
    auto block_inner = [&](const std::vector<std::vector<double>>& A,
                           const std::vector<std::vector<double>>& B) {
        double s = 0;
        for (int bb = 0; bb < nblocks; ++bb) {
            const auto& ab = A[bb];
            const auto& bbv = B[bb];
            for (std::size_t t = 0; t < ab.size(); ++t) s += ab[t] * bbv[t];
        }
        return s;
    };
    auto cost_inner = [&](const std::vector<std::vector<double>>& M) {
        double s = 0;
        for (int bb = 0; bb < nblocks; ++bb) s += dot_entries_block(in.cobj[bb], M, in.blocks);
        return s;
    };

    std::vector<double> M(static_cast<std::size_t>(m) * m);
    std::vector<double> rhs(m), dy(m), dy_aff(m);

    auto residuals = [&](double& pres, double& dres, std::vector<double>& rp,
                         std::vector<std::vector<double>>& Rd) {
        apply_A(X, rp);
        for (int j = 0; j < m; ++j) rp[j] = b[j] - rp[j];
        double pn = 0;
        for (double t : rp) pn += t * t;
        pres = std::sqrt(pn) / (1.0 + bnorm);
        Rd = apply_At(y);
        double dn = 0;
        for (int bb = 0; bb < nblocks; ++bb) {
            const auto& bs = in.blocks[bb];
            // Rd := C - S - A^T(y)
            std::vector<double> cb(X[bb].size(), 0.0);
            for (const auto& e : in.cobj[bb]) {
                if (bs.kind == BlockKind::Diag) {
                    cb[e.i] += e.v;
                } else {
                    cb[e.i * bs.dim + e.j] += e.v;
                    if (e.i != e.j) cb[e.j * bs.dim + e.i] += e.v;
                }
            }
            for (std::size_t t = 0; t < Rd[bb].size(); ++t) {
                Rd[bb][t] = cb[t] - S[bb][t] - Rd[bb][t];
                dn += Rd[bb][t] * Rd[bb][t];
            }
        }
        dres = std::sqrt(dn) / (1.0 + cnorm);
    };

    SolveStatus status = SolveStatus::MaxIter;
    std::string note;
    int iter = 0;

    std::vector<std::vector<double>> W(nblocks), Lx(nblocks);
    std::vector<double> rp;
    std::vector<std::vector<double>> Rd;

    // best iterate seen, by the worst of the three convergence measures
    double best_score = 1e300;
    std::vector<std::vector<double>> bestX, bestS;
    std::vector<double> best_y;

    for (iter = 0; iter < settings.max_iter; ++iter) {
        double pres, dres;
        residuals(pres, dres, rp, Rd);
        double pobj = cost_inner(X);
        double dobj = 0;
        for (int j = 0; j < m; ++j) dobj += b[j] * y[j];
        double gap = std::fabs(pobj - dobj) / (1.0 + std::max(std::fabs(pobj), std::fabs(dobj)));
        double mu = block_inner(X, S) / total_dim;
        if (settings.verbose) {
            std::ostringstream os;
            os << "iter " << iter << " pobj " << pobj << " dobj " << dobj << " gap " << gap
               << " pres " << pres << " dres " << dres << " mu " << mu;
            note = os.str();
        }
        double score = std::max({gap, pres, dres});
        if (score < best_score) {
            best_score = score;
            bestX = X;
            bestS = S;
            best_y = y;
        }
        if (gap <= settings.tol_gap && pres <= settings.tol_feas && dres <= settings.tol_feas) {
            status = SolveStatus::Optimal;
            break;
        }
        // divergence-based infeasibility certificates
        double ynorm = 0;
        for (double t : y) ynorm = std::max(ynorm, std::fabs(t));
        if (ynorm > 1e9) {
            double yn2 = 0;
            for (double t : y) yn2 += t * t;
            yn2 = std::sqrt(yn2);
            double bty = 0;
            for (int j = 0; j < m; ++j) bty += b[j] * y[j] / yn2;
            auto Aty = apply_At(y);
            bool cone_ok = true;
            for (int bb = 0; bb < nblocks && cone_ok; ++bb) {
                if (in.blocks[bb].kind == BlockKind::Diag) {
                    for (double t : Aty[bb])
                        if (t / yn2 > 1e-7) cone_ok = false;
                } else {
                    std::vector<double> T = Aty[bb];
                    for (auto& t : T) t = -t / yn2;
                    if (sym_eig_min(T, in.blocks[bb].dim) < -1e-7) cone_ok = false;
                }
            }
            if (cone_ok && bty > 1e-7) {
                status = SolveStatus::Infeasible;
                note = "dual ray certifies primal infeasibility";
                break;
            }
        }
        double xnorm = 0;
        for (int bb = 0; bb < nblocks; ++bb)
            for (double t : X[bb]) xnorm = std::max(xnorm, std::fabs(t));
        if (xnorm > 1e9) {
            std::vector<double> ax;
            apply_A(X, ax);
            double axn = 0;
            for (double t : ax) axn = std::max(axn, std::fabs(t));
            if (axn / xnorm < 1e-7 && cost_inner(X) / xnorm < -1e-7) {
                status = SolveStatus::Unbounded;
                note = "primal ray certifies unboundedness";
                break;
            }
        }

        // factor S and X per block with escalating diagonal lifts; W = S^{-1}
        bool numeric_fail = false;
        auto lifted_cholesky = [](const std::vector<double>& src, int d, std::vector<double>& out) {
            double tr = 0;
            for (int i = 0; i < d; ++i) tr += src[i * d + i];
            double lift = 0.0;
            for (int attempt = 0; attempt < 5; ++attempt) {
                out = src;
                if (lift > 0)
                    for (int i = 0; i < d; ++i) out[i * d + i] += lift;
                if (cholesky(out, d)) return true;
                lift = lift == 0.0 ? 1e-13 * std::max(1.0, tr / d) : lift * 100.0;
            }
            return false;
        };
        for (int bb = 0; bb < nblocks && !numeric_fail; ++bb) {
            const auto& bs = in.blocks[bb];
            if (bs.kind == BlockKind::Diag) continue;
            std::vector<double> ls;
            if (!lifted_cholesky(S[bb], bs.dim, ls)) { numeric_fail = true; break; }
            W[bb] = chol_inverse(ls, bs.dim);
            if (!lifted_cholesky(X[bb], bs.dim, Lx[bb])) { numeric_fail = true; break; }
        }
        if (numeric_fail) {
            status = SolveStatus::NumericalFailure;
            note = "block factorization failed (iterate left the cone)";
            break;
        }

        // Schur complement M_jk = tr(A_j X A_k S^-1), via per-block dense B_j = W A_j X
        std::fill(M.begin(), M.end(), 0.0);
        for (int bb = 0; bb < nblocks; ++bb) {
            const auto& bs = in.blocks[bb];
            const auto& rows_here = work[bb].row_ids;
            if (rows_here.empty()) continue;
            if (bs.kind == BlockKind::Diag) {
                // var i contributes x_i/s_i * a_ji * a_ki; group rows by variable
                std::vector<std::vector<std::pair<int, double>>> by_var(bs.dim);
                for (int j : rows_here)
                    for (const auto& e : in.rows[j].entries)
                        if (e.block == bb) by_var[e.i].emplace_back(j, e.v);
                for (int i = 0; i < bs.dim; ++i) {
                    double q = X[bb][i] / S[bb][i];
                    const auto& lst = by_var[i];
                    for (std::size_t a = 0; a < lst.size(); ++a)
                        for (std::size_t c = a; c < lst.size(); ++c) {
                            double s = q * lst[a].second * lst[c].second;
                            int j = lst[a].first, k = lst[c].first;
                            M[static_cast<std::size_t>(j) * m + k] += s;
                            if (j != k) M[static_cast<std::size_t>(k) * m + j] += s;
                        }
                }
                continue;
            }
            const int d = bs.dim;
            std::vector<double> Bj;
            for (std::size_t a = 0; a < rows_here.size(); ++a) {
                int j = rows_here[a];
                // AX = A_j * X (rows only where A_j has entries)
                std::vector<double> AX(d * d, 0.0);
                for (const auto& e : in.rows[j].entries) {
                    if (e.block != bb) continue;
                    const double* xr = &X[bb][e.j * d];
                    double* tr = &AX[e.i * d];
                    for (int t = 0; t < d; ++t) tr[t] += e.v * xr[t];
                    if (e.i != e.j) {
                        const double* xr2 = &X[bb][e.i * d];
                        double* tr2 = &AX[e.j * d];
                        for (int t = 0; t < d; ++t) tr2[t] += e.v * xr2[t];
                    }
                }
                // B_j = W * AX
                Bj.assign(d * d, 0.0);
                for (int r = 0; r < d; ++r) {
                    const double* ar = &AX[r * d];
                    bool nz = false;
                    for (int t = 0; t < d; ++t)
                        if (ar[t] != 0.0) { nz = true; break; }
                    if (!nz) continue;
                    for (int i = 0; i < d; ++i) {
                        double w = W[bb][i * d + r];
                        if (w == 0.0) continue;
                        double* bi = &Bj[i * d];
                        for (int t = 0; t < d; ++t) bi[t] += w * ar[t];
                    }
                }
                for (std::size_t c = 0; c <= a; ++c) {
                    int k = rows_here[c];
                    double s = 0;
                    for (const auto& e : in.rows[k].entries) {
                        if (e.block != bb) continue;
                        s += e.v * Bj[e.i * d + e.j];
                        if (e.i != e.j) s += e.v * Bj[e.j * d + e.i];
                    }
                    if (s != 0.0) {
                        M[static_cast<std::size_t>(j) * m + k] += s;
                        if (j != k) M[static_cast<std::size_t>(k) * m + j] += s;
                    }
                }
            }
        }

        // two solves with the same factor: predictor, then corrector
        std::vector<double> Mf = M;
        double ridge = 0.0;
        {
            double tr = 0;
            for (int j = 0; j < m; ++j) tr += Mf[static_cast<std::size_t>(j) * m + j];
            ridge = std::max(1e-14, 1e-14 * tr / m);
        }
        bool chol_ok = false;
        for (int attempt = 0; attempt < 4 && !chol_ok; ++attempt) {
            Mf = M;
            for (int j = 0; j < m; ++j) Mf[static_cast<std::size_t>(j) * m + j] += ridge;
            chol_ok = cholesky(Mf, m);
            ridge *= 1e4;
        }
        if (!chol_ok) {
            status = SolveStatus::NumericalFailure;
            note = "Schur complement not positive definite";
            break;
        }

        auto newton = [&](double sigma_mu, const std::vector<std::vector<double>>* corr,
                          std::vector<double>& dy_out, std::vector<std::vector<double>>& dX,
                          std::vector<std::vector<double>>& dS) {
            // rhs_j = b_j - sigma*mu*<A_j, S^-1> + <A_j, X Rd S^-1> + <A_j, Corr S^-1>
            for (int j = 0; j < m; ++j) rhs[j] = b[j];
            for (int bb = 0; bb < nblocks; ++bb) {
                const auto& bs = in.blocks[bb];
                if (work[bb].row_ids.empty()) continue;
                if (bs.kind == BlockKind::Diag) {
                    for (int j : work[bb].row_ids) {
                        double s = 0;
                        for (const auto& e : in.rows[j].entries) {
                            if (e.block != bb) continue;
                            double si = S[bb][e.i];
                            double g = -sigma_mu / si + X[bb][e.i] * Rd[bb][e.i] / si;
                            if (corr) g += (*corr)[bb][e.i] / si;
                            rhs[j] += e.v * g;
                        }
                    }
                    continue;
                }
                const int d = bs.dim;
                // G = X * Rd * W (+ Corr * W)
                std::vector<double> t1, G;
                mat_mul(X[bb], Rd[bb], t1, d);
                if (corr) {
                    for (int t = 0; t < d * d; ++t) t1[t] += (*corr)[bb][t];
                }
                mat_mul(t1, W[bb], G, d);
                for (int j : work[bb].row_ids) {
                    double s = 0;
                    for (const auto& e : in.rows[j].entries) {
                        if (e.block != bb) continue;
                        double g = G[e.i * d + e.j] - sigma_mu * W[bb][e.i * d + e.j];
                        double g2 = G[e.j * d + e.i] - sigma_mu * W[bb][e.j * d + e.i];
                        s += e.v * (e.i == e.j ? g : g + g2);
                    }
                    rhs[j] += s;
                }
            }
            dy_out = rhs;
            chol_solve_vec(Mf, m, dy_out);
            // one round of iterative refinement against the unfactored M
            {
                std::vector<double> r(m);
                for (int i = 0; i < m; ++i) {
                    double s = rhs[i];
                    const double* mi = &M[static_cast<std::size_t>(i) * m];
                    for (int k = 0; k < m; ++k) s -= mi[k] * dy_out[k];
                    r[i] = s;
                }
                chol_solve_vec(Mf, m, r);
                for (int i = 0; i < m; ++i) dy_out[i] += r[i];
            }
            // dS = Rd - A^T(dy); dX = sigma*mu*S^-1 - X - (Corr)S^-1 - X dS S^-1, symmetrized
            dS = apply_At(dy_out);
            for (int bb = 0; bb < nblocks; ++bb)
                for (std::size_t t = 0; t < dS[bb].size(); ++t)
                    dS[bb][t] = Rd[bb][t] - dS[bb][t];
            dX = make_blocks(0.0);
            for (int bb = 0; bb < nblocks; ++bb) {
                const auto& bs = in.blocks[bb];
                if (bs.kind == BlockKind::Diag) {
                    for (int i = 0; i < bs.dim; ++i) {
                        double v = sigma_mu / S[bb][i] - X[bb][i] - X[bb][i] * dS[bb][i] / S[bb][i];
                        if (corr) v -= (*corr)[bb][i] / S[bb][i];
                        dX[bb][i] = v;
                    }
                    continue;
                }
                const int d = bs.dim;
                std::vector<double> t1, t2;
                mat_mul(dS[bb], W[bb], t1, d);   // dS S^-1
                mat_mul(X[bb], t1, t2, d);       // X dS S^-1
                std::vector<double>& dxb = dX[bb];
                for (int t = 0; t < d * d; ++t)
                    dxb[t] = sigma_mu * W[bb][t] - X[bb][t] - t2[t];
                if (corr) {
                    std::vector<double> t3;
                    mat_mul((*corr)[bb], W[bb], t3, d);
                    for (int t = 0; t < d * d; ++t) dxb[t] -= t3[t];
                }
                for (int i = 0; i < d; ++i)
                    for (int jj = i + 1; jj < d; ++jj) {
                        double v = 0.5 * (dxb[i * d + jj] + dxb[jj * d + i]);
                        dxb[i * d + jj] = dxb[jj * d + i] = v;
                    }
            }
        };

        auto max_step = [&](const std::vector<std::vector<double>>& base,
                            const std::vector<std::vector<double>>& delta,
                            const std::vector<std::vector<double>>* lfact) {
            double alpha = 1e30;
            for (int bb = 0; bb < nblocks; ++bb) {
                const auto& bs = in.blocks[bb];
                if (bs.kind == BlockKind::Diag) {
                    for (int i = 0; i < bs.dim; ++i)
                        if (delta[bb][i] < 0) alpha = std::min(alpha, -base[bb][i] / delta[bb][i]);
                    continue;
                }
                const int d = bs.dim;
                // lambda_min of L^-1 dM L^-T
                std::vector<double> l = lfact ? (*lfact)[bb] : base[bb];
                if (!lfact && !cholesky(l, d)) { alpha = 0; continue; }
                // K = L^-1 D L^-T: solve L K1 = D, then K = K1 L^-T
                std::vector<double> K = delta[bb];
                for (int col = 0; col < d; ++col) {
                    for (int i = 0; i < d; ++i) {
                        double s = K[i * d + col];
                        for (int k = 0; k < i; ++k) s -= l[i * d + k] * K[k * d + col];
                        K[i * d + col] = s / l[i * d + i];
                    }
                }
                for (int rowi = 0; rowi < d; ++rowi) {
                    for (int i = 0; i < d; ++i) {
                        double s = K[rowi * d + i];
                        for (int k = 0; k < i; ++k) s -= l[i * d + k] * K[rowi * d + k];
                        K[rowi * d + i] = s / l[i * d + i];
                    }
                }
                double lmin = sym_eig_min(K, d);
                if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
            }
            return alpha;
        };

        double mu_now = mu;
        std::vector<std::vector<double>> dX_aff, dS_aff, dX, dS;
        newton(0.0, nullptr, dy_aff, dX_aff, dS_aff);
        std::vector<std::vector<double>> Ls(nblocks);
        for (int bb = 0; bb < nblocks; ++bb) {
            if (in.blocks[bb].kind == BlockKind::Diag) continue;
            Ls[bb] = S[bb];
            cholesky(Ls[bb], in.blocks[bb].dim);
        }
        double ap_aff = std::min(1.0, max_step(X, dX_aff, &Lx));
        double ad_aff = std::min(1.0, max_step(S, dS_aff, &Ls));
        double mu_aff = 0;
        {
            auto Xa = X, Sa = S;
            for (int bb = 0; bb < nblocks; ++bb)
                for (std::size_t t = 0; t < Xa[bb].size(); ++t) {
                    Xa[bb][t] += ap_aff * dX_aff[bb][t];
                    Sa[bb][t] += ad_aff * dS_aff[bb][t];
                }
            mu_aff = block_inner(Xa, Sa) / total_dim;
        }
        double sigma = std::pow(std::max(0.0, mu_aff / mu_now), 3.0);
        sigma = std::min(1.0, std::max(1e-6, sigma));

        // Mehrotra correction term dX_aff * dS_aff
        std::vector<std::vector<double>> corr(nblocks);
        for (int bb = 0; bb < nblocks; ++bb) {
            const auto& bs = in.blocks[bb];
            if (bs.kind == BlockKind::Diag) {
                corr[bb].resize(bs.dim);
                for (int i = 0; i < bs.dim; ++i) corr[bb][i] = dX_aff[bb][i] * dS_aff[bb][i];
            } else {
                mat_mul(dX_aff[bb], dS_aff[bb], corr[bb], bs.dim);
            }
        }
        newton(sigma * mu_now, &corr, dy, dX, dS);

        double ap = settings.step_fraction * max_step(X, dX, &Lx);
        double ad = settings.step_fraction * max_step(S, dS, &Ls);
        ap = std::min(ap, 1.0);
        ad = std::min(ad, 1.0);
        // the eigenvalue bound can overshoot near the boundary: back off until
        // the trial point actually factors
        auto stays_pd = [&](const std::vector<std::vector<double>>& base,
                            const std::vector<std::vector<double>>& delta, double alpha) {
            for (int bb = 0; bb < nblocks; ++bb) {
                const auto& bs = in.blocks[bb];
                if (bs.kind == BlockKind::Diag) {
                    for (int i = 0; i < bs.dim; ++i)
                        if (base[bb][i] + alpha * delta[bb][i] <= 0) return false;
                    continue;
                }
                std::vector<double> trial(bs.dim * bs.dim);
                for (int t = 0; t < bs.dim * bs.dim; ++t)
                    trial[t] = base[bb][t] + alpha * delta[bb][t];
                if (!cholesky(trial, bs.dim)) return false;
            }
            return true;
        };
        for (int tries = 0; tries < 40 && ap > 1e-12 && !stays_pd(X, dX, ap); ++tries) ap *= 0.8;
        for (int tries = 0; tries < 40 && ad > 1e-12 && !stays_pd(S, dS, ad); ++tries) ad *= 0.8;
        if (!std::isfinite(ap) || !std::isfinite(ad) || ap < 1e-12 || ad < 1e-12) {
            status = SolveStatus::NumericalFailure;
            note = "step length collapsed";
            break;
        }
        for (int bb = 0; bb < nblocks; ++bb)
            for (std::size_t t = 0; t < X[bb].size(); ++t) {
                X[bb][t] += ap * dX[bb][t];
                S[bb][t] += ad * dS[bb][t];
            }
        for (int j = 0; j < m; ++j) y[j] += ad * dy[j];
    }

    // fall back to the best iterate when the loop exited on a numerical event
    if (status != SolveStatus::Infeasible && status != SolveStatus::Unbounded && !bestX.empty()) {
        double pres_now, dres_now;
        residuals(pres_now, dres_now, rp, Rd);
        double pobj_now = cost_inner(X);
        double dobj_now = 0;
        for (int j = 0; j < m; ++j) dobj_now += b[j] * y[j];
        double gap_now = std::fabs(pobj_now - dobj_now) /
                         (1.0 + std::max(std::fabs(pobj_now), std::fabs(dobj_now)));
        if (std::max({gap_now, pres_now, dres_now}) > best_score) {
            X = bestX;
            S = bestS;
            y = best_y;
        }
    }

    // recompute everything from the returned iterates
    double pres, dres;
    residuals(pres, dres, rp, Rd);
    double pobj_int = cost_inner(X);
    double dobj_int = 0;
    for (int j = 0; j < m; ++j) dobj_int += b[j] * y[j];
    double gap_final =
        std::fabs(pobj_int - dobj_int) / (1.0 + std::max(std::fabs(pobj_int), std::fabs(dobj_int)));
    if (status != SolveStatus::Infeasible && status != SolveStatus::Unbounded &&
        gap_final <= settings.tol_gap && pres <= settings.tol_feas && dres <= settings.tol_feas)
        status = SolveStatus::Optimal;

    sol.status = status;
    sol.iterations = iter;
    sol.primal = X;
    sol.objective = in.user_sign * pobj_int;
    sol.dual_objective = in.user_sign * dobj_int;
    sol.gap_rel =
        std::fabs(pobj_int - dobj_int) / (1.0 + std::max(std::fabs(pobj_int), std::fabs(dobj_int)));
    sol.primal_infeas = pres;
    sol.dual_infeas = dres;
    if (sol.note.empty()) sol.note = note;
    for (int j = 0; j < m; ++j)
        if (in.rows[j].orig_index >= 0) sol.dual[in.rows[j].orig_index] = in.user_sign * y[j];
    return sol;
}

FeasibilityResult feasibility(const SdpProblem& p, const SolverSettings& settings) {
    SdpProblem aug = p;
    const int art_block = static_cast<int>(aug.blocks.size());
    const int mcons = static_cast<int>(p.constraints.size());
    aug.blocks.push_back({BlockKind::Diag, 2 * mcons});
    if (!aug.block_names.empty()) aug.block_names.push_back("artificials");
    aug.objective.clear();  // maximize -(sum of artificials)
    aug.maximize = true;
    double scale = 1.0;
    for (const auto& c : p.constraints) scale = std::max(scale, std::fabs(c.rhs));
    for (int j = 0; j < mcons; ++j) {
        aug.constraints[j].entries.push_back({art_block, 2 * j, 2 * j, 1.0});
        aug.constraints[j].entries.push_back({art_block, 2 * j + 1, 2 * j + 1, -1.0});
        aug.objective.push_back({art_block, 2 * j, 2 * j, -1.0});
        aug.objective.push_back({art_block, 2 * j + 1, 2 * j + 1, -1.0});
    }
    FeasibilityResult res;
    res.detail = solve(aug, settings);
    res.margin = res.detail.objective;
    if (res.detail.status != SolveStatus::Optimal && res.detail.status != SolveStatus::MaxIter) {
        res.status = FeasStatus::Undecided;
        return res;
    }
    res.detail.primal.pop_back();  // drop the artificial block from the witness
    if (res.margin > -1e-7 * scale)
        res.status = FeasStatus::Feasible;
    else if (res.margin < -1e-5 * scale)
        res.status = FeasStatus::Infeasible;
    else
        res.status = FeasStatus::Undecided;
    return res;
}

}  // namespace liftrank
