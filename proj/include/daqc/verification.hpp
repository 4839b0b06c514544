#pragma once

#include "daqc/compiler.hpp"
#include "daqc/hamiltonian.hpp"

namespace daqc {

struct CheckResult {
    bool computed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    /// max over couplings |sum_k t_k sign_k hS - T hP|
    CheckResult coupling;
    /// Frobenius norm of sum_k t_k V_k^dag H_S V_k - T H_P
    CheckResult matrix;
    /// Operator-norm distance between the block product and exp(-i T H_P)
    CheckResult unitary;

    /// True when every computed check passes and at least one was computed.
    bool pass() const;
    void merge(const VerificationReport& other);
};

/// Tolerance is relative: residual <= tol * (1 + max |T hP|).
VerificationReport verify_couplings(const Schedule& schedule, const TwoBodyHamiltonian& hS,
                                    const TwoBodyHamiltonian& hP, double tol = 1e-8);

/// Dense 2^n-dimensional check; tolerance tol * (1 + ||T H_P||_F). CapExceeded above n_cap.
VerificationReport matrix_oracle(const Schedule& schedule, const TwoBodyHamiltonian& hS,
                                 const TwoBodyHamiltonian& hP, double tol = 1e-8, int n_cap = 10);

/// Exact product of block exponentials for the ZZ model; WrongModel otherwise.
/// For n <= 6 the distance is the exact spectral norm, above that the bound
/// sqrt(||D||_1 ||D||_inf).
VerificationReport zz_unitary_oracle(const Schedule& schedule, const TwoBodyHamiltonian& hS,
                                     const TwoBodyHamiltonian& hP, double tol = 1e-8, int n_cap = 10);

}  // namespace daqc
