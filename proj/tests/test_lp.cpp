#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "daqc/error.hpp"
#include "daqc/experiments.hpp"
#include "daqc/lp.hpp"
#include "daqc/polytope.hpp"
#include "daqc/sign_matrix.hpp"

using namespace daqc;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    int k = 0;
    for (double x : v) out(k++) = x;
    return out;
}

void expect_valid(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const LpSolution& s) {
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_GE(s.t.minCoeff(), 0.0);
    EXPECT_LE((A * s.t - b).lpNorm<Eigen::Infinity>(), 1e-8 * std::max(1.0, b.lpNorm<Eigen::Infinity>()));
    EXPECT_LE(static_cast<int>(s.support.size()), A.rows());
    EXPECT_NEAR(s.objective, s.t.sum(), 1e-12);
}

}  // namespace

TEST(Simplex, TetrahedronVertexSum) {
    const SignMatrix M = build_sign_matrix(3, ModelKind::ZZ);
    const Eigen::MatrixXd A = M.to_dense();
    const Eigen::VectorXd b = vec({-1, -1, -1});
    const LpSolution s = solve_min_time(A, b);
    expect_valid(A, b, s);
    EXPECT_NEAR(s.objective, 3.0, 1e-12);
    EXPECT_NEAR(s.t(0), 0.0, 1e-12);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(s.t(k), 1.0, 1e-12);
}

TEST(Simplex, SingleColumnIsOneBlock) {
    for (auto [n, model] : {std::pair{4, ModelKind::ZZ}, std::pair{2, ModelKind::General}}) {
        const SignMatrix M = build_sign_matrix(n, model);
        const Eigen::MatrixXd A = M.to_dense();
        for (int c = 0; c < M.cols(); ++c) {
            const LpSolution s = solve_min_time(A, A.col(c));
            expect_valid(A, A.col(c), s);
            EXPECT_NEAR(s.objective, 1.0, 1e-10);
            ASSERT_EQ(s.support.size(), 1u);
            EXPECT_EQ(s.support[0], c);
        }
    }
}

TEST(Simplex, IdentityDirection) {
    const Eigen::MatrixXd A = build_sign_matrix(3, ModelKind::ZZ).to_dense();
    const LpSolution s = solve_min_time(A, vec({1, 1, 1}));
    EXPECT_NEAR(s.objective, 1.0, 1e-12);
    EXPECT_NEAR(s.t(0), 1.0, 1e-12);
}

TEST(Simplex, ZeroRightHandSide) {
    const Eigen::MatrixXd A = build_sign_matrix(3, ModelKind::ZZ).to_dense();
    const LpSolution s = solve_min_time(A, Eigen::VectorXd::Zero(3));
    EXPECT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.objective, 0.0);
    EXPECT_TRUE(s.support.empty());
}

TEST(Simplex, DimensionMismatch) {
    const SignMatrix M = build_sign_matrix(3, ModelKind::ZZ);
    EXPECT_THROW(solve_min_time(M.to_dense(), Eigen::VectorXd::Ones(4)), Error);
    ProblemVector b = full_problem_vector(4, ModelKind::ZZ, Eigen::VectorXd::Ones(6));
    EXPECT_THROW(solve_min_time(M, b), Error);
}

TEST(Simplex, InfeasibleIsReported) {
    Eigen::MatrixXd A(2, 2);
    A << 1, 1, 1, 1;
    const LpSolution s = solve_min_time(A, vec({1, 2}));
    EXPECT_NE(s.status, LpStatus::Optimal);
}

TEST(BruteForce, Examples) {
    const SignMatrix M3 = build_sign_matrix(3, ModelKind::ZZ);
    EXPECT_NEAR(enumerate_basic_solutions(M3.to_dense(), vec({-1, -1, -1})), 3.0, 1e-12);
    const SignMatrix M2 = build_sign_matrix(2, ModelKind::ZZ);
    EXPECT_NEAR(enumerate_basic_solutions(M2.to_dense(), vec({5})), 5.0, 1e-12);
    EXPECT_NEAR(enumerate_basic_solutions(M2.to_dense(), vec({-5})), 5.0, 1e-12);
}

TEST(BruteForce, CapExceeded) {
    const SignMatrix M = build_sign_matrix(3, ModelKind::General);
    try {
        enumerate_basic_solutions(M.to_dense(), Eigen::VectorXd::Ones(M.rows()), 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
    }
}

TEST(SimplexProperty, AgreesWithBruteForce) {
    for (int n : {3, 4}) {
        const Eigen::MatrixXd A = build_sign_matrix(n, ModelKind::ZZ).to_dense();
        const double radius = std::sqrt(static_cast<double>(A.rows()));
        for (DistributionKind kind : kAllDistributions) {
            for (int s = 0; s < 30; ++s) {
                Rng rng = sample_stream(101, n, kind, static_cast<std::uint64_t>(s));
                const Eigen::VectorXd b = sample({kind, radius}, static_cast<int>(A.rows()), rng);
                const LpSolution sol = solve_min_time(A, b);
                expect_valid(A, b, sol);
                EXPECT_NEAR(sol.objective, enumerate_basic_solutions(A, b), 1e-8);
            }
        }
    }
}

TEST(SimplexProperty, AgreesWithFacetGauge) {
    // The facet description gives the gauge as a max of linear forms, independent of pivoting.
    for (auto [n, model] : {std::pair{5, ModelKind::ZZ}, std::pair{2, ModelKind::General}}) {
        const SignMatrix M = build_sign_matrix(n, model);
        const FacetSet F = facet_enumeration(M);
        const Eigen::MatrixXd A = M.to_dense();
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g;
        for (int s = 0; s < 40; ++s) {
            Eigen::VectorXd b(A.rows());
            for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = g(rng);
            if (s % 4 == 0) b = A.col(s % A.cols()) + A.col((3 * s + 1) % A.cols());
            const LpSolution sol = solve_min_time(A, b);
            expect_valid(A, b, sol);
            EXPECT_NEAR(sol.objective, gauge_from_facets(F, b), 1e-9);
        }
    }
}

TEST(SimplexProperty, HomogeneityAndNormBounds) {
    const Eigen::MatrixXd A = build_sign_matrix(6, ModelKind::ZZ).to_dense();
    const double d = static_cast<double>(A.rows());
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int s = 0; s < 40; ++s) {
        Eigen::VectorXd b(A.rows());
        for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = s % 3 == 0 ? std::round(g(rng)) : g(rng);
        if (b.norm() == 0.0) continue;
        const double base = solve_min_time(A, b).objective;
        for (double c : {0.25, 3.0, 1e3}) EXPECT_NEAR(solve_min_time(A, c * b).objective, c * base, 1e-9 * c * base);
        EXPECT_GE(base, b.norm() / std::sqrt(d) - 1e-9);
        EXPECT_GE(base, b.lpNorm<Eigen::Infinity>() - 1e-9);
        EXPECT_LE(base, std::sqrt(3.0) * b.norm() + 1e-6);
    }
}

TEST(SimplexProperty, DegenerateSparseDirections) {
    // Sparse +-1 right-hand sides are heavily degenerate; every one must still solve.
    const SignMatrix M = build_sign_matrix(10, ModelKind::ZZ);
    const Eigen::MatrixXd A = M.to_dense();
    const double radius = std::sqrt(static_cast<double>(A.rows()));
    for (int s = 0; s < 60; ++s) {
        Rng rng = sample_stream(3, 10, DistributionKind::SparseAxes, static_cast<std::uint64_t>(s));
        const Eigen::VectorXd b = sample({DistributionKind::SparseAxes, radius}, static_cast<int>(A.rows()), rng);
        const LpSolution sol = solve_min_time(A, b);
        expect_valid(A, b, sol);
        EXPECT_LE(sol.objective, std::sqrt(3.0) * radius + 1e-6);
    }
}

TEST(SimplexProperty, DeterministicSchedules) {
    const Eigen::MatrixXd A = build_sign_matrix(5, ModelKind::ZZ).to_dense();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
    b(0) = b(4) = -1.0;
    const LpSolution a = solve_min_time(A, b), c = solve_min_time(A, b);
    EXPECT_EQ(a.support, c.support);
    EXPECT_EQ(a.t, c.t);
}

TEST(Binomial, Values) {
    EXPECT_EQ(binomial(4, 3), 4u);
    EXPECT_EQ(binomial(16, 9), 11440u);
    EXPECT_EQ(binomial(3, 4), 0u);
}
