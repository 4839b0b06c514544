#include "daqc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "daqc/error.hpp"

namespace daqc {

const char* lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Revised simplex on A t = b, t >= 0 with an explicit basis inverse kept current by
// rank-one (eta) updates and refreshed from an LU factorization every few pivots.
// Rows are sign-flipped so that b >= 0; artificial variables m..m+d-1 form the
// phase-one basis and are never allowed to re-enter.
class RevisedSimplex {
public:
    RevisedSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const LpOptions& opts)
        : A_(A), b_(b), opts_(opts), d_(static_cast<int>(A.rows())), m_(static_cast<int>(A.cols())) {
        for (int r = 0; r < d_; ++r) {
            if (b_(r) < 0.0) {
                A_.row(r) *= -1.0;
                b_(r) = -b_(r);
            }
        }
        scale_ = std::max(1.0, b_.size() ? b_.maxCoeff() : 0.0);
        // Deterministic right-hand-side perturbation against degenerate stalling; the
        // exact right-hand side is restored before the final dual clean-up.
        b_exact_ = b_;
        for (int r = 0; r < d_; ++r) b_(r) += opts_.perturbation * scale_ * (1.0 + std::fmod(0.6180339887498949 * (r + 1), 1.0));
        max_pivots_ = opts_.max_pivots > 0 ? opts_.max_pivots : 50 * (d_ + m_);
    }

    LpSolution run(const Eigen::MatrixXd& original_A, const Eigen::VectorXd& original_b) {
        LpSolution sol;
        sol.t = Eigen::VectorXd::Zero(m_);

        basis_.resize(static_cast<std::size_t>(d_));
        pos_.assign(static_cast<std::size_t>(m_ + d_), -1);
        for (int r = 0; r < d_; ++r) {
            basis_[static_cast<std::size_t>(r)] = m_ + r;
            pos_[static_cast<std::size_t>(m_ + r)] = r;
        }
        Binv_ = Eigen::MatrixXd::Identity(d_, d_);
        xB_ = b_;

        Eigen::VectorXd cost = Eigen::VectorXd::Zero(m_ + d_);
        cost.tail(d_).setOnes();
        Outcome phase1 = optimize(cost);
        if (phase1 != Outcome::Optimal) return fail(sol);

        double infeasibility = 0.0;
        for (int r = 0; r < d_; ++r)
            if (is_artificial(basis_[static_cast<std::size_t>(r)])) infeasibility += std::max(0.0, xB_(r));
        if (infeasibility > opts_.feasibility_tol * scale_ * d_) {
            sol.status = LpStatus::Infeasible;
            sol.pivots = pivots_;
            return sol;
        }
        drive_out_artificials();

        cost.setZero();
        cost.head(m_).setOnes();
        Outcome phase2 = optimize(cost);
        if (phase2 != Outcome::Optimal) return fail(sol);

        b_ = b_exact_;
        if (!refactor()) return fail(sol);
        for (int round = 0; round < 4; ++round) {
            if (!dual_cleanup(cost)) return fail(sol);
            if (optimize(cost) != Outcome::Optimal) return fail(sol);
            if (xB_.minCoeff() >= -opts_.feasibility_tol * scale_) break;
        }
        for (int r = 0; r < d_; ++r) {
            const int var = basis_[static_cast<std::size_t>(r)];
            if (!is_artificial(var)) sol.t(var) = std::max(0.0, xB_(r));
        }
        sol.residual = (original_A * sol.t - original_b).lpNorm<Eigen::Infinity>();
        sol.objective = sol.t.sum();
        sol.pivots = pivots_;
        const double support_cut = opts_.support_tol * scale_;
        for (int k = 0; k < m_; ++k)
            if (sol.t(k) > support_cut) sol.support.push_back(k);
        sol.status = sol.residual <= 10.0 * opts_.feasibility_tol * scale_ ? LpStatus::Optimal
                                                                           : LpStatus::NumericalFailure;
        return sol;
    }

private:
    enum class Outcome { Optimal, Unbounded, IterationLimit, Singular };

    bool is_artificial(int var) const { return var >= m_; }

    LpSolution& fail(LpSolution& sol) const {
        sol.status = LpStatus::NumericalFailure;
        sol.pivots = pivots_;
        return sol;
    }

    bool refactor() {
        Eigen::MatrixXd B(d_, d_);
        for (int r = 0; r < d_; ++r) {
            const int var = basis_[static_cast<std::size_t>(r)];
            if (is_artificial(var)) {
                B.col(r).setZero();
                B(var - m_, r) = 1.0;
            } else {
                B.col(r) = A_.col(var);
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (!lu.isInvertible()) return false;
        Binv_ = lu.inverse();
        xB_ = Binv_ * b_;
        since_refactor_ = 0;
        return true;
    }

    bool pivot(int leave, int enter, const Eigen::VectorXd& w, double theta) {
        xB_.noalias() -= theta * w;
        xB_(leave) = theta;
        const Eigen::RowVectorXd pivot_row = Binv_.row(leave) / w(leave);
        Binv_.noalias() -= w * pivot_row;
        Binv_.row(leave) = pivot_row;

        pos_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave)])] = -1;
        basis_[static_cast<std::size_t>(leave)] = enter;
        pos_[static_cast<std::size_t>(enter)] = leave;
        ++pivots_;
        if (++since_refactor_ >= opts_.refactor_interval) return refactor();
        return true;
    }

    int ratio_test(const Eigen::VectorXd& w, bool bland) const {
        const double ptol = opts_.pivot_tol;
        int leave = -1;
        if (bland) {
            double tmin = kInf;
            for (int i = 0; i < d_; ++i)
                if (w(i) > ptol) tmin = std::min(tmin, std::max(0.0, xB_(i)) / w(i));
            if (tmin == kInf) return -1;
            const double cut = tmin * (1.0 + 1e-9) + 1e-15;
            for (int i = 0; i < d_; ++i) {
                if (w(i) <= ptol || std::max(0.0, xB_(i)) / w(i) > cut) continue;
                if (leave < 0 || basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) leave = i;
            }
            return leave;
        }
        // Harris two-pass: relax the bound by the feasibility tolerance, then take the
        // largest pivot element among the admissible rows.
        double tmax = kInf;
        const double relax = opts_.feasibility_tol * scale_;
        for (int i = 0; i < d_; ++i)
            if (w(i) > ptol) tmax = std::min(tmax, (std::max(0.0, xB_(i)) + relax) / w(i));
        if (tmax == kInf) return -1;
        double best = 0.0;
        for (int i = 0; i < d_; ++i) {
            if (w(i) <= ptol || std::max(0.0, xB_(i)) / w(i) > tmax) continue;
            if (w(i) > best) {
                best = w(i);
                leave = i;
            }
        }
        return leave;
    }

    Outcome optimize(const Eigen::VectorXd& cost) {
        int streak = 0;
        bool verified = false;
        Eigen::VectorXd cB(d_);
        while (true) {
            if (pivots_ >= max_pivots_) return Outcome::IterationLimit;
            for (int r = 0; r < d_; ++r) cB(r) = cost(basis_[static_cast<std::size_t>(r)]);
            const Eigen::VectorXd y = Binv_.transpose() * cB;
            const Eigen::VectorXd reduced = cost.head(m_) - A_.transpose() * y;

            const bool bland = streak >= opts_.stall_threshold;
            int enter = -1;
            double most_negative = -opts_.optimality_tol;
            for (int j = 0; j < m_; ++j) {
                if (pos_[static_cast<std::size_t>(j)] >= 0 || reduced(j) >= -opts_.optimality_tol) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (reduced(j) < most_negative) {
                    most_negative = reduced(j);
                    enter = j;
                }
            }
            if (enter < 0) {
                // Certify against a fresh factorization before declaring optimality.
                if (since_refactor_ > 0 && !verified) {
                    if (!refactor()) return Outcome::Singular;
                    verified = true;
                    continue;
                }
                return Outcome::Optimal;
            }
            verified = false;

            const Eigen::VectorXd w = Binv_ * A_.col(enter);
            const int leave = ratio_test(w, bland);
            if (leave < 0) return Outcome::Unbounded;
            const double theta = std::max(0.0, xB_(leave)) / w(leave);
            if (!pivot(leave, enter, w, theta)) return Outcome::Singular;
            streak = theta <= 1e-12 ? streak + 1 : 0;
        }
    }

    // Dual simplex on the exact right-hand side, starting from a dual feasible basis.
    bool dual_cleanup(const Eigen::VectorXd& cost) {
        Eigen::VectorXd cB(d_);
        while (true) {
            if (pivots_ >= max_pivots_) return false;
            int leave = -1;
            double worst = -opts_.feasibility_tol * scale_;
            for (int r = 0; r < d_; ++r) {
                if (xB_(r) < worst) {
                    worst = xB_(r);
                    leave = r;
                }
            }
            if (leave < 0) return true;
            for (int r = 0; r < d_; ++r) cB(r) = cost(basis_[static_cast<std::size_t>(r)]);
            const Eigen::VectorXd y = Binv_.transpose() * cB;
            const Eigen::VectorXd reduced = cost.head(m_) - A_.transpose() * y;
            const Eigen::RowVectorXd alpha = Binv_.row(leave) * A_;
            int enter = -1;
            double best = kInf;
            for (int j = 0; j < m_; ++j) {
                if (pos_[static_cast<std::size_t>(j)] >= 0 || alpha(j) >= -opts_.pivot_tol) continue;
                const double ratio = std::max(0.0, reduced(j)) / -alpha(j);
                if (ratio < best || (ratio == best && alpha(j) < alpha(enter))) {
                    best = ratio;
                    enter = j;
                }
            }
            if (enter < 0) return false;
            const Eigen::VectorXd w = Binv_ * A_.col(enter);
            if (!pivot(leave, enter, w, xB_(leave) / w(leave))) return false;
        }
    }

    void drive_out_artificials() {
        for (int r = 0; r < d_; ++r) {
            if (!is_artificial(basis_[static_cast<std::size_t>(r)])) continue;
            const Eigen::RowVectorXd row = Binv_.row(r) * A_;
            int best = -1;
            double best_abs = 1e-7;
            for (int j = 0; j < m_; ++j) {
                if (pos_[static_cast<std::size_t>(j)] >= 0) continue;
                if (std::abs(row(j)) > best_abs) {
                    best_abs = std::abs(row(j));
                    best = j;
                }
            }
            // No candidate means the row is redundant; the artificial stays basic at zero.
            if (best < 0) continue;
            const Eigen::VectorXd w = Binv_ * A_.col(best);
            pivot(r, best, w, 0.0);
        }
        refactor();
    }

    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    Eigen::VectorXd b_exact_;
    LpOptions opts_;
    int d_;
    int m_;
    double scale_ = 1.0;
    int max_pivots_ = 0;
    int pivots_ = 0;
    int since_refactor_ = 0;
    std::vector<int> basis_;
    std::vector<int> pos_;
    Eigen::MatrixXd Binv_;
    Eigen::VectorXd xB_;
};

}  // namespace

LpSolution solve_min_time(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const LpOptions& opts) {
    if (A.rows() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(A.rows()) + " rows but b has " +
                                                      std::to_string(b.size()) + " entries");
    }
    if (b.size() == 0 || b.lpNorm<Eigen::Infinity>() == 0.0) {
        LpSolution sol;
        sol.t = Eigen::VectorXd::Zero(A.cols());
        sol.status = LpStatus::Optimal;
        return sol;
    }
    RevisedSimplex simplex(A, b, opts);
    return simplex.run(A, b);
}

LpSolution solve_min_time(const SignMatrix& M, const ProblemVector& b, const LpOptions& opts) {
    if (b.index != M.index) {
        throw Error(ErrorKind::DimensionMismatch, "problem vector rows do not match the sign matrix rows");
    }
    return solve_min_time(M.to_dense(), b.values, opts);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

double enumerate_basic_solutions(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, std::uint64_t cap) {
    const int d = static_cast<int>(A.rows());
    const int m = static_cast<int>(A.cols());
    if (b.size() != d) throw Error(ErrorKind::DimensionMismatch, "b does not match the matrix rows");
    const std::uint64_t combos = binomial(m, d);
    if (combos > cap) {
        throw Error(ErrorKind::CapExceeded,
                    "C(" + std::to_string(m) + "," + std::to_string(d) + ") bases exceed the budget " + std::to_string(cap));
    }
    const double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
    std::vector<int> pick(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;

    double best = kInf;
    Eigen::MatrixXd B(d, d);
    while (true) {
        for (int i = 0; i < d; ++i) B.col(i) = A.col(pick[static_cast<std::size_t>(i)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (lu.rank() == d) {
            const Eigen::VectorXd t = lu.solve(b);
            if (t.minCoeff() >= -1e-9 * scale && (B * t - b).lpNorm<Eigen::Infinity>() <= 1e-9 * scale)
                best = std::min(best, t.sum());
        }
        // Next combination in lexicographic order.
        int i = d - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - d + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < d; ++k) pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
    if (best == kInf) throw Error(ErrorKind::NumericalFailure, "no feasible basic solution found");
    return best;
}

double enumerate_basic_solutions(const SignMatrix& M, const ProblemVector& b, std::uint64_t cap) {
    if (b.index != M.index) {
        throw Error(ErrorKind::DimensionMismatch, "problem vector rows do not match the sign matrix rows");
    }
    return enumerate_basic_solutions(M.to_dense(), b.values, cap);
}

}  // namespace daqc
