#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daqc/experiments.hpp"
#include "daqc/hamiltonian.hpp"
#include "daqc/lp.hpp"
#include "daqc/sign_matrix.hpp"

namespace daqc {

struct ScheduleBlock {
    GateLayer layer;
    double time = 0.0;

    bool operator==(const ScheduleBlock&) const = default;
};

/// Sequence of digital-analog blocks V_k^dag exp(-i t_k H_S) V_k.
struct Schedule {
    int n = 0;
    ModelKind model = ModelKind::ZZ;
    double T = 0.0;
    std::vector<ScheduleBlock> blocks;
    std::string problem_ref;
    std::string source_ref;

    double total_time() const;
    bool operator==(const Schedule&) const = default;
};

/// All bounds are evaluated on b, which already carries the factor T.
struct BoundsReport {
    double lower = 0.0;       ///< |b|_inf
    double upper = 0.0;       ///< sqrt(3) |b|_2
    double legacy = 0.0;      ///< 2 |b|_1
    double conjecture = 0.0;  ///< |b|_inf * (n if n odd, n-1 if even)
    std::optional<double> achieved;
};

BoundsReport bounds_report(const ProblemVector& b, int n);

struct CompileOptions {
    std::size_t column_cap = kDefaultColumnCap;
    double zero_threshold = 0.0;
    LpOptions lp;
};

struct CompileResult {
    ProblemVector problem;
    Schedule schedule;
    LpSolution lp;
    BoundsReport bounds;
};

/// Full pipeline: problem vector, restricted sign matrix, LP, schedule of the LP support.
CompileResult compile_detailed(const TwoBodyHamiltonian& hP, const TwoBodyHamiltonian& hS, double T,
                               const CompileOptions& opts = {});

Schedule compile(const TwoBodyHamiltonian& hP, const TwoBodyHamiltonian& hS, double T,
                 const CompileOptions& opts = {});

/// Minimal total time for an arbitrary problem vector over M's full index.
LpSolution solve_problem(const ProblemVector& b, std::size_t column_cap = kDefaultColumnCap);

/// Sign patterns of the saturating directions, in coupling order.
enum class SignPattern { MMM, MPP, PMP, PPM };
inline constexpr SignPattern kAllSignPatterns[] = {SignPattern::MMM, SignPattern::MPP, SignPattern::PMP,
                                                   SignPattern::PPM};
std::array<int, 3> sign_values(SignPattern p);
std::string sign_pattern_name(SignPattern p);
SignPattern parse_sign_pattern(const std::string& s);

/// The six axis-pair triples on one qubit pair that saturate the general-model bound.
using AxisPair = std::pair<Axis, Axis>;
const std::array<std::array<AxisPair, 3>, 6>& axis_triples();
std::string axis_triple_name(int triple);
int parse_axis_triple(const std::string& s);

/// ZZ: `qubits` names a triangle (3 distinct qubits). General: `qubits` names a pair and
/// `axis_triple` selects one of axis_triples().
struct WorstCaseSupport {
    std::vector<int> qubits;
    int axis_triple = 0;
};

/// 3-sparse problem over the full coupling index with entries +-alpha on the support.
ProblemVector worst_case_problem(int n, ModelKind model, const WorstCaseSupport& support, SignPattern signs,
                                 double alpha);

/// 4 C(n,3) triangle problems (ZZ only), alpha = 1.
std::vector<ProblemVector> enumerate_worst_directions(int n, ModelKind model, int n_cap = 12);

struct GapRecord {
    DistributionKind kind = DistributionKind::UniformSphere;
    Eigen::VectorXd values;
    double achieved = 0.0;
    double conjecture = 0.0;
    double ratio = 0.0;
    bool violation = false;
};

/// Samples `samples` problems from each distribution (radius sqrt(d)) and compares the
/// optimal time against the linear conjectured bound. Violations are reported, not thrown.
std::vector<GapRecord> conjecture_gap_search(int n, ModelKind model, int samples, std::uint64_t seed,
                                             int workers = 1, std::size_t column_cap = kDefaultColumnCap);

}  // namespace daqc
