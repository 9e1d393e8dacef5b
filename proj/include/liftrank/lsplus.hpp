#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liftrank/graph.hpp"
#include "liftrank/polytope.hpp"
#include "liftrank/sdp.hpp"
#include "liftrank/stretching.hpp"

namespace liftrank {

struct LsSettings {
    SolverSettings solver;
    int max_rows = 9000;  // size budget for the unrolled SDP
};

/// Unrolled LS+^k query as one block-diagonal SDP. One PSD block per tree
/// node; a node branching on vertex u certifies its column vectors inside the
/// level-(k-1) cones of the destroyed (x_u = 1) and deleted (x_u = 0)
/// subgraphs, which is an exact, strictly feasible reduction of the
/// definition's full-dimensional unrolling. Leaf vectors satisfy the
/// homogenized FRAC inequalities through slack variables.
struct BuildResult {
    SdpProblem problem;
    int level = 0;
    int root_block = -1;    // -1 for pure-LP builds (level 0)
    int lp_block = -1;      // level-0 optimize: block holding x
    int scalar_block = -1;  // block holding scalar variables (epsilon)
    int eps_index = -1;     // index of epsilon within scalar_block
    std::vector<std::string> block_paths;
    int rows_estimate = 0;

    std::string manifest_json() const;
};

/// Feasibility form: w in cone(LS+^level(FRAC(G))).
BuildResult build_membership(const Graph& g, int level, const ConeVector& w,
                             const LsSettings& settings = {});

/// Epsilon form: w(eps) = u - eps*pert with eps >= 0 a maximized variable.
BuildResult build_membership_eps(const Graph& g, int level, const ConeVector& u,
                                 const ConeVector& pert, const LsSettings& settings = {});

/// Optimization form: max c^T x over LS+^level(FRAC(G)); level 0 is the LP.
BuildResult build_optimize(const Graph& g, int level, const std::vector<std::int64_t>& objective,
                           const LsSettings& settings = {});

struct RelaxationResult {
    std::string graph6;
    int level = 0;
    double optimum = 0.0;
    double stab_value = 0.0;  // exact integer optimum over stable sets
    double frac_value = 0.0;  // LP optimum, the other end of the sandwich
    std::vector<double> optimizer;
    SolveStatus status = SolveStatus::NumericalFailure;
    bool reliable = false;  // converged to at least 1e-6 in every measure
    double gap_rel = 0.0;
    int iterations = 0;
};

RelaxationResult optimize(const Graph& g, int level, const LinearInequality& objective,
                          const LsSettings& settings = {});

struct EpsResult {
    double eps = 0.0;
    bool known = false;  // false when the solver could not certify a value
    SolveStatus status = SolveStatus::NumericalFailure;
};

/// Supremum eps with v(G,eps) in cone(LS+^level); eps* > 1e-5 together with
/// the (exactly re-verified) rank inequality certifies r_+(G) >= level+1.
EpsResult max_eps(const StretchedClique& sc, int level, const LsSettings& settings = {});

/// General form: sup eps with u - eps*pert in cone(LS+^level(FRAC(G))).
EpsResult max_eps_vector(const Graph& g, const ConeVector& u, const ConeVector& pert, int level,
                         const LsSettings& settings = {});

/// Validation mode: bisection on membership queries instead of direct
/// maximization.
EpsResult max_eps_bisect(const StretchedClique& sc, int level, double hi,
                         const LsSettings& settings = {});

FeasStatus membership(const Graph& g, int level, const ConeVector& w,
                      const LsSettings& settings = {});

/// Materialized certificate tree extracted from a solved membership problem.
struct LiftCertificate {
    struct Node {
        std::string path;
        int level = 0;
        std::vector<int> vertices;          // root-graph names of the node coordinates
        std::vector<std::vector<double>> y; // (h+1) x (h+1) symmetric
    };
    std::vector<Node> nodes;
    double max_diag_tie_error = 0.0;
    double min_eigenvalue = 0.0;
    double max_leaf_violation = 0.0;
    double root_vector_error = 0.0;

    bool valid(double tol) const;
};

LiftCertificate extract_certificate(const BuildResult& build, const SdpSolution& sol,
                                    const Graph& g, const ConeVector& w);

/// Exact rational matrices of the facet-perturbation construction applied to
/// the rank inequality of a stretched clique: Y0 sums the outer products of
/// the tight stable sets, Y1 is the sparse perturbation supported on the hub
/// rows/columns, and Y = Y0 + Y1.
struct RankStepMatrices {
    std::vector<std::vector<Rational>> y0, y1, y;
    Rational eps;
    std::vector<Rational> facet_normal;  // (-c0, c)
    Rational c_dot_chi;                  // c^T chi_D
    Rational c0;
};

RankStepMatrices rank_step_matrices(const StretchedClique& sc, const Rational& eps);

struct RankBounds {
    int lower = 0;
    int upper = 0;
    bool proven_exact = false;
    bool unknown = false;  // a solve failed; bounds are best-effort
};

RankBounds rank_bounds(const Graph& g, int budget, const LsSettings& settings = {});

enum class Verdict { True, False, Unknown };

struct MinimalityResult {
    Verdict verdict = Verdict::Unknown;
    int ell = 0;
    RankBounds bounds;
};

/// Checks r_+(G) = |V|/3 for graphs on 3*ell vertices; the upper bound is
/// automatic, the lower bound comes from level-(ell-1) optimization.
MinimalityResult verify_minimal(const Graph& g, const LsSettings& settings = {});

void dump_problem(const BuildResult& build, std::ostream& sdpa_out, std::ostream& manifest_out);

}  // namespace liftrank
