#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "daqc/hamiltonian.hpp"
#include "daqc/sign_matrix.hpp"

namespace daqc {

enum class LpStatus { Optimal, Infeasible, NumericalFailure };

const char* lp_status_name(LpStatus s);

struct LpOptions {
    double pivot_tol = 1e-10;
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    int stall_threshold = 50;
    int refactor_interval = 64;
    /// Relative size of the right-hand-side shift used while pivoting; 0 disables it.
    double perturbation = 1e-7;
    /// 0 selects 50 * (rows + cols).
    int max_pivots = 0;
    /// Times at or below this (scaled by max(1, |b|_inf)) are not part of the support.
    double support_tol = 1e-10;
};

struct LpSolution {
    Eigen::VectorXd t;
    double objective = 0.0;
    std::vector<int> support;
    LpStatus status = LpStatus::NumericalFailure;
    /// max |A t - b|
    double residual = 0.0;
    int pivots = 0;
};

/// min sum(t) subject to A t = b, t >= 0, by two-phase revised simplex.
/// Returns a basic solution; a zero right-hand side gives the empty solution.
LpSolution solve_min_time(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const LpOptions& opts = {});

/// Throws DimensionMismatch unless b.index equals M.index.
LpSolution solve_min_time(const SignMatrix& M, const ProblemVector& b, const LpOptions& opts = {});

/// Exhaustive minimum of sum(t) over all feasible basic solutions (every nonsingular
/// d-column subset). Throws CapExceeded when C(cols, rows) > cap, Infeasible as
/// NumericalFailure when no subset is feasible.
double enumerate_basic_solutions(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                 std::uint64_t cap = 5'000'000);
double enumerate_basic_solutions(const SignMatrix& M, const ProblemVector& b, std::uint64_t cap = 5'000'000);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

}  // namespace daqc
