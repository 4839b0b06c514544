#include "daqc/verification.hpp"

#include <cmath>
#include <complex>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include "daqc/error.hpp"

namespace daqc {

namespace {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using SparseOp = Eigen::SparseMatrix<cd>;

Mat2 pauli_matrix(Pauli p) {
    Mat2 m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, cd(0, -1), cd(0, 1), 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Pauli axis_pauli(Axis a) {
    switch (a) {
        case Axis::X: return Pauli::X;
        case Axis::Y: return Pauli::Y;
        case Axis::Z: return Pauli::Z;
    }
    return Pauli::I;
}

// Sign s with g^dag sigma g = s sigma, read off an explicit 2x2 conjugation.
int conjugation_sign(Pauli g, Axis a) {
    const Mat2 sigma = pauli_matrix(axis_pauli(a));
    const Mat2 conj = pauli_matrix(g).adjoint() * sigma * pauli_matrix(g);
    if ((conj - sigma).norm() < 1e-12) return 1;
    if ((conj + sigma).norm() < 1e-12) return -1;
    throw Error(ErrorKind::NumericalFailure, "Pauli conjugation did not return +-sigma");
}

// Tensor product over qubits 1..n, qubit 1 as the most significant factor.
SparseOp pauli_string(const std::vector<Pauli>& factors) {
    SparseOp acc(1, 1);
    acc.insert(0, 0) = 1.0;
    for (Pauli p : factors) {
        const SparseOp factor = pauli_matrix(p).sparseView();
        SparseOp next = Eigen::kroneckerProduct(acc, factor).eval();
        acc = std::move(next);
    }
    acc.makeCompressed();
    return acc;
}

SparseOp coupling_operator(const CouplingKey& key, int n) {
    std::vector<Pauli> factors(static_cast<std::size_t>(n), Pauli::I);
    factors[static_cast<std::size_t>(key.i - 1)] = axis_pauli(key.mu);
    factors[static_cast<std::size_t>(key.j - 1)] = axis_pauli(key.nu);
    return pauli_string(factors);
}

SparseOp hamiltonian_operator(const TwoBodyHamiltonian& h, double scale) {
    const Eigen::Index dim = Eigen::Index{1} << h.n();
    SparseOp H(dim, dim);
    for (const auto& [key, value] : h.couplings()) {
        if (value == 0.0) continue;
        H += (scale * value) * coupling_operator(key, h.n());
    }
    H.makeCompressed();
    return H;
}

void check_shapes(const Schedule& schedule, const TwoBodyHamiltonian& hS, const TwoBodyHamiltonian& hP) {
    if (hS.n() != hP.n() || hS.model() != hP.model() || schedule.n != hS.n()) {
        throw Error(ErrorKind::DimensionMismatch, "schedule and Hamiltonians disagree on qubit count or model");
    }
    for (const ScheduleBlock& block : schedule.blocks) {
        if (block.layer.size() != schedule.n) {
            throw Error(ErrorKind::DimensionMismatch, "layer " + block.layer.str() + " does not have " +
                                                          std::to_string(schedule.n) + " gates");
        }
    }
}

CheckResult make_check(double residual, double tolerance) {
    return {true, residual, tolerance, residual <= tolerance};
}

}  // namespace

bool VerificationReport::pass() const {
    const bool any = coupling.computed || matrix.computed || unitary.computed;
    return any && (!coupling.computed || coupling.pass) && (!matrix.computed || matrix.pass) &&
           (!unitary.computed || unitary.pass);
}

void VerificationReport::merge(const VerificationReport& other) {
    if (other.coupling.computed) coupling = other.coupling;
    if (other.matrix.computed) matrix = other.matrix;
    if (other.unitary.computed) unitary = other.unitary;
}

VerificationReport verify_couplings(const Schedule& schedule, const TwoBodyHamiltonian& hS,
                                    const TwoBodyHamiltonian& hP, double tol) {
    check_shapes(schedule, hS, hP);
    double residual = 0.0;
    double target_scale = 0.0;
    for (const CouplingKey& key : coupling_index(hS.n(), hS.model())) {
        const double s = hS.coefficient(key);
        const double target = schedule.T * hP.coefficient(key);
        double sum = 0.0;
        for (const ScheduleBlock& block : schedule.blocks) {
            const int sign = conjugation_sign(block.layer.gates[static_cast<std::size_t>(key.i - 1)], key.mu) *
                             conjugation_sign(block.layer.gates[static_cast<std::size_t>(key.j - 1)], key.nu);
            sum += block.time * sign * s;
        }
        residual = std::max(residual, std::abs(sum - target));
        target_scale = std::max(target_scale, std::abs(target));
    }
    VerificationReport report;
    report.coupling = make_check(residual, tol * (1.0 + target_scale));
    return report;
}

VerificationReport matrix_oracle(const Schedule& schedule, const TwoBodyHamiltonian& hS,
                                 const TwoBodyHamiltonian& hP, double tol, int n_cap) {
    check_shapes(schedule, hS, hP);
    if (schedule.n > n_cap) {
        throw Error(ErrorKind::CapExceeded, "dense oracle limited to n <= " + std::to_string(n_cap));
    }
    const Eigen::MatrixXcd HS = Eigen::MatrixXcd(hamiltonian_operator(hS, 1.0));
    const Eigen::MatrixXcd target = Eigen::MatrixXcd(hamiltonian_operator(hP, schedule.T));

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(HS.rows(), HS.cols());
    for (const ScheduleBlock& block : schedule.blocks) {
        const SparseOp V = pauli_string(block.layer.gates);
        const Eigen::MatrixXcd right = HS * V;
        sum.noalias() += block.time * (SparseOp(V.adjoint()) * right);
    }
    VerificationReport report;
    report.matrix = make_check((sum - target).norm(), tol * (1.0 + target.norm()));
    return report;
}

VerificationReport zz_unitary_oracle(const Schedule& schedule, const TwoBodyHamiltonian& hS,
                                     const TwoBodyHamiltonian& hP, double tol, int n_cap) {
    check_shapes(schedule, hS, hP);
    if (schedule.model != ModelKind::ZZ) {
        throw Error(ErrorKind::WrongModel, "exact unitary check requires commuting ZZ terms");
    }
    if (schedule.n > n_cap) {
        throw Error(ErrorKind::CapExceeded, "dense oracle limited to n <= " + std::to_string(n_cap));
    }
    const Eigen::Index dim = Eigen::Index{1} << schedule.n;

    // ZZ Hamiltonians are diagonal in the computational basis, so their exponentials are too.
    auto diagonal_exponential = [dim](const SparseOp& H, double t) {
        Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(dim);
        for (Eigen::Index c = 0; c < H.outerSize(); ++c) {
            for (SparseOp::InnerIterator it(H, c); it; ++it) {
                if (it.row() != it.col() && std::abs(it.value()) > 0.0) {
                    throw Error(ErrorKind::WrongModel, "Hamiltonian is not diagonal");
                }
                if (it.row() == it.col()) diag(it.row()) = it.value();
            }
        }
        SparseOp E(dim, dim);
        E.reserve(Eigen::VectorXi::Constant(dim, 1));
        for (Eigen::Index a = 0; a < dim; ++a) E.insert(a, a) = std::exp(cd(0.0, -t) * diag(a));
        E.makeCompressed();
        return E;
    };

    const SparseOp HS = hamiltonian_operator(hS, 1.0);
    const SparseOp HP = hamiltonian_operator(hP, 1.0);

    SparseOp U(dim, dim);
    U.setIdentity();
    for (const ScheduleBlock& block : schedule.blocks) {
        const SparseOp V = pauli_string(block.layer.gates);
        const SparseOp factor = SparseOp(V.adjoint()) * diagonal_exponential(HS, block.time) * V;
        SparseOp next = U * factor;
        U = std::move(next);
    }
    const SparseOp D = U - diagonal_exponential(HP, schedule.T);

    double distance = 0.0;
    if (schedule.n <= 6) {
        const Eigen::MatrixXcd dense = Eigen::MatrixXcd(D);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
        distance = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    } else {
        Eigen::VectorXd col_sum = Eigen::VectorXd::Zero(dim);
        Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(dim);
        for (Eigen::Index c = 0; c < D.outerSize(); ++c) {
            for (SparseOp::InnerIterator it(D, c); it; ++it) {
                col_sum(it.col()) += std::abs(it.value());
                row_sum(it.row()) += std::abs(it.value());
            }
        }
        distance = std::sqrt(col_sum.maxCoeff() * row_sum.maxCoeff());
    }
    VerificationReport report;
    report.unitary = make_check(distance, tol);
    return report;
}

}  // namespace daqc
