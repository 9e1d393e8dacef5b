#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liftrank {

enum class BlockKind { Psd, Diag };

struct BlockSpec {
    BlockKind kind = BlockKind::Psd;
    int dim = 0;
};

/// One entry of a symmetric coefficient matrix, row <= col. An off-diagonal
/// entry sets both (row,col) and (col,row) to `value`; the trace inner
/// product therefore counts it twice (SDPA convention).
struct MatEntry {
    int block = 0;
    int row = 0;
    int col = 0;
    double value = 0.0;
};

struct SdpConstraint {
    std::vector<MatEntry> entries;
    double rhs = 0.0;
};

/// Block-diagonal SDP in equality standard form:
///   max/min sum_b <C_b, X_b>  s.t.  sum_b <A_jb, X_b> = rhs_j,  X_b >= 0
/// Diag blocks hold vectors of nonnegative scalars (slacks and scalar
/// variables).
struct SdpProblem {
    std::vector<BlockSpec> blocks;
    std::vector<MatEntry> objective;
    std::vector<SdpConstraint> constraints;
    bool maximize = true;
    std::vector<std::string> block_names;  // optional, same length as blocks when set
};

struct SolverSettings {
    double tol_gap = 1e-8;
    double tol_feas = 1e-8;
    int max_iter = 200;
    double step_fraction = 0.98;
    bool verbose = false;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIter, NumericalFailure };

struct SdpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    double objective = 0.0;        // primal value in the problem's sense
    double dual_objective = 0.0;
    double gap_rel = 0.0;          // recomputed from the returned iterates
    double primal_infeas = 0.0;    // recomputed residual norms
    double dual_infeas = 0.0;
    int iterations = 0;
    std::vector<std::vector<double>> primal;  // per block: dense dim*dim or diag dim
    std::vector<double> dual;                 // per original constraint
    std::string note;

    double block_entry(int block, int row, int col, const SdpProblem& p) const;

    /// Optimal status, or every recomputed convergence measure within tol;
    /// degenerate optimal faces can stall the path just short of the default
    /// tolerances, and callers comparing values at coarser precision accept
    /// such iterates explicitly.
    bool accurate(double tol) const {
        if (status == SolveStatus::Optimal) return true;
        if (status == SolveStatus::Infeasible || status == SolveStatus::Unbounded) return false;
        return gap_rel <= tol && primal_infeas <= tol && dual_infeas <= tol;
    }
};

SdpSolution solve(const SdpProblem& p, const SolverSettings& settings = {});

enum class FeasStatus { Feasible, Infeasible, Undecided };

/// Phase-I style feasibility decision: maximizes the negated total artificial
/// slack; the sign of the optimum decides, with an undecided band between the
/// thresholds.
struct FeasibilityResult {
    FeasStatus status = FeasStatus::Undecided;
    double margin = 0.0;  // optimal value of the slack maximization, <= 0
    SdpSolution detail;
};

FeasibilityResult feasibility(const SdpProblem& p, const SolverSettings& settings = {});

// SDPA sparse format (sdpa_io.cpp): line 1 = #constraints, line 2 = #blocks,
// line 3 = block sizes (negative = diagonal), line 4 = rhs, then
// "cons block i j value" entries with cons 0 carrying the objective.
void write_sdpa(std::ostream& os, const SdpProblem& p);
SdpProblem read_sdpa(std::istream& is);

}  // namespace liftrank
