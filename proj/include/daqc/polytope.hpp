#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "daqc/hamiltonian.hpp"
#include "daqc/sign_matrix.hpp"

namespace daqc {

/// Integer point set, one point per column.
using IntPoints = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Halfspace normal . x <= offset, stored exactly (coprime integers) and as doubles.
struct Facet {
    std::vector<std::int64_t> int_normal;
    std::int64_t int_offset = 0;
    Eigen::VectorXd normal;
    double offset = 0.0;
    /// Indices of the points lying on the facet.
    std::vector<int> incidence;

    /// Euclidean distance from the origin to the facet hyperplane.
    double distance() const { return offset / normal.norm(); }
};

struct FacetSet {
    int dim = 0;
    std::vector<Facet> facets;
};

struct HullBudget {
    /// Largest intermediate ray count the double-description pass may hold.
    std::size_t max_rays = 200'000;
    /// Largest number of candidate ray pairs examined over the whole run.
    std::uint64_t max_pair_checks = 4'000'000'000ULL;
};

/// Complete irredundant H-representation of conv(points). Requires the origin strictly
/// inside (DegenerateHull otherwise); CapExceeded when the budget runs out.
FacetSet facet_enumeration(const IntPoints& points, const HullBudget& budget = {});
FacetSet facet_enumeration(const SignMatrix& M, const HullBudget& budget = {});

/// Every point satisfies every halfspace and every facet's incident points span its
/// hyperplane. Throws NumericalFailure describing the first violation.
void validate_facets(const IntPoints& points, const FacetSet& facets);

/// min over facets of offset / ||normal||.
double inradius(const FacetSet& f);

/// max over facets of normal . b / offset; equals the minimal total time of b.
double gauge_from_facets(const FacetSet& f, const Eigen::VectorXd& b);

/// Minimal total time for b, computed by the simplex solver.
double gauge(const SignMatrix& M, const ProblemVector& b);

struct FacetCenterProblem {
    int facet = 0;
    double facet_distance = 0.0;
    ProblemVector problem;
    double objective = 0.0;
};

struct FacetCenterReport {
    std::vector<FacetCenterProblem> problems;
    double max_objective = 0.0;
};

/// Per facet: the closest facet-plane point to the origin, rescaled to `radius`, then solved.
FacetCenterReport facet_center_problems(const FacetSet& f, const SignMatrix& M, double radius);

}  // namespace daqc
