#include "daqc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include <boost/dynamic_bitset.hpp>

#include "daqc/error.hpp"
#include "daqc/lp.hpp"

namespace daqc {

namespace {

using i128 = __int128;
using Bits = boost::dynamic_bitset<>;

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 50;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Fraction-free (Bareiss) determinant; every intermediate value is a minor of the input.
i128 bareiss_determinant(std::vector<std::vector<i128>> a) {
    const std::size_t n = a.size();
    i128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return n == 0 ? 1 : sign * a[n - 1][n - 1];
}

struct Ray {
    std::vector<std::int64_t> z;
    Bits zero;
};

// Constraint k of the homogenized polar cone reads s - v_k . y >= 0 with z = (y, s).
class PolarCone {
public:
    explicit PolarCone(const IntPoints& points)
        : points_(points), dim_(static_cast<int>(points.rows()) + 1), count_(static_cast<int>(points.cols())) {}

    i128 eval(int k, const std::vector<std::int64_t>& z) const {
        i128 acc = z[static_cast<std::size_t>(dim_ - 1)];
        for (int c = 0; c + 1 < dim_; ++c) acc -= static_cast<i128>(points_(c, k)) * z[static_cast<std::size_t>(c)];
        return acc;
    }

    std::int64_t coeff(int k, int c) const { return c + 1 == dim_ ? 1 : -points_(c, k); }

    int dim() const { return dim_; }
    int count() const { return count_; }

private:
    const IntPoints& points_;
    int dim_;
    int count_;
};

std::vector<std::int64_t> normalized(const std::vector<i128>& v) {
    i128 g = 0;
    for (i128 x : v) g = gcd128(g, x);
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const i128 x = g == 0 ? v[i] : v[i] / g;
        if (abs128(x) >= kCoordLimit) {
            throw Error(ErrorKind::NumericalFailure, "facet coordinates exceed the exact-arithmetic range");
        }
        out[i] = static_cast<std::int64_t>(x);
    }
    return out;
}

int double_rank(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}

std::vector<int> initial_rows(const PolarCone& cone) {
    std::vector<int> chosen;
    Eigen::MatrixXd rows(0, cone.dim());
    for (int k = 0; k < cone.count() && static_cast<int>(chosen.size()) < cone.dim(); ++k) {
        Eigen::MatrixXd trial(rows.rows() + 1, cone.dim());
        trial.topRows(rows.rows()) = rows;
        for (int c = 0; c < cone.dim(); ++c) trial(rows.rows(), c) = static_cast<double>(cone.coeff(k, c));
        if (double_rank(trial) > rows.rows()) {
            rows = std::move(trial);
            chosen.push_back(k);
        }
    }
    if (static_cast<int>(chosen.size()) < cone.dim()) {
        throw Error(ErrorKind::DegenerateHull, "points do not affinely span their ambient space");
    }
    return chosen;
}

// Ray tight on every initial row except `skip`: the generalized cross product of those rows.
std::vector<std::int64_t> initial_ray(const PolarCone& cone, const std::vector<int>& rows, std::size_t skip) {
    const int D = cone.dim();
    std::vector<std::vector<i128>> R;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == skip) continue;
        std::vector<i128> row(static_cast<std::size_t>(D));
        for (int c = 0; c < D; ++c) row[static_cast<std::size_t>(c)] = cone.coeff(rows[r], c);
        R.push_back(std::move(row));
    }
    std::vector<i128> z(static_cast<std::size_t>(D));
    for (int c = 0; c < D; ++c) {
        std::vector<std::vector<i128>> minor(R.size());
        for (std::size_t r = 0; r < R.size(); ++r) {
            for (int cc = 0; cc < D; ++cc)
                if (cc != c) minor[r].push_back(R[r][static_cast<std::size_t>(cc)]);
        }
        const i128 det = bareiss_determinant(std::move(minor));
        z[static_cast<std::size_t>(c)] = c % 2 == 0 ? det : -det;
    }
    std::vector<std::int64_t> ray = normalized(z);
    if (cone.eval(rows[skip], ray) < 0)
        for (auto& x : ray) x = -x;
    return ray;
}

}  // namespace

FacetSet facet_enumeration(const IntPoints& points, const HullBudget& budget) {
    const int d = static_cast<int>(points.rows());
    const int m = static_cast<int>(points.cols());
    if (d < 1 || m < d + 1) throw Error(ErrorKind::DegenerateHull, "too few points to span a full-dimensional hull");

    PolarCone cone(points);
    const int D = cone.dim();
    const std::vector<int> init = initial_rows(cone);

    Bits processed(static_cast<std::size_t>(m));
    for (int k : init) processed.set(static_cast<std::size_t>(k));

    std::vector<Ray> rays;
    for (std::size_t i = 0; i < init.size(); ++i) {
        Ray r;
        r.z = initial_ray(cone, init, i);
        r.zero = Bits(static_cast<std::size_t>(m));
        for (std::size_t j = 0; j < init.size(); ++j)
            if (j != i) r.zero.set(static_cast<std::size_t>(init[j]));
        rays.push_back(std::move(r));
    }

    std::uint64_t pair_checks = 0;
    for (int k = 0; k < m; ++k) {
        if (processed.test(static_cast<std::size_t>(k))) continue;
        std::vector<i128> value(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            value[r] = cone.eval(k, rays[r].z);
            if (value[r] > 0) pos.push_back(r);
            if (value[r] < 0) neg.push_back(r);
        }

        std::vector<Ray> created;
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                if (++pair_checks > budget.max_pair_checks) {
                    throw Error(ErrorKind::CapExceeded, "facet enumeration exceeded its pair-check budget");
                }
                Bits common = rays[p].zero & rays[q].zero;
                if (static_cast<int>(common.count()) < D - 2) continue;
                // Combinatorial adjacency: no third ray is tight on all the common rows.
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r != p && r != q && common.is_subset_of(rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;

                std::vector<i128> z(static_cast<std::size_t>(D));
                for (int c = 0; c < D; ++c) {
                    z[static_cast<std::size_t>(c)] = value[p] * rays[q].z[static_cast<std::size_t>(c)] -
                                                     value[q] * rays[p].z[static_cast<std::size_t>(c)];
                }
                Ray fresh;
                fresh.z = normalized(z);
                fresh.zero = std::move(common);
                fresh.zero.set(static_cast<std::size_t>(k));
                created.push_back(std::move(fresh));
            }
        }

        std::vector<Ray> next;
        next.reserve(rays.size() - neg.size() + created.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (value[r] < 0) continue;
            if (value[r] == 0) rays[r].zero.set(static_cast<std::size_t>(k));
            next.push_back(std::move(rays[r]));
        }
        for (Ray& r : created) next.push_back(std::move(r));
        rays = std::move(next);
        processed.set(static_cast<std::size_t>(k));
        if (rays.size() > budget.max_rays) {
            throw Error(ErrorKind::CapExceeded, "facet enumeration exceeded " + std::to_string(budget.max_rays) + " rays");
        }
    }

    FacetSet out;
    out.dim = d;
    for (const Ray& r : rays) {
        const std::int64_t s = r.z[static_cast<std::size_t>(d)];
        if (s <= 0) throw Error(ErrorKind::DegenerateHull, "origin is not strictly inside the hull");
        Facet f;
        f.int_normal.assign(r.z.begin(), r.z.begin() + d);
        f.int_offset = s;
        f.normal.resize(d);
        for (int c = 0; c < d; ++c) f.normal(c) = static_cast<double>(f.int_normal[static_cast<std::size_t>(c)]);
        f.offset = static_cast<double>(s);
        for (std::size_t k = r.zero.find_first(); k != Bits::npos; k = r.zero.find_next(k))
            f.incidence.push_back(static_cast<int>(k));
        out.facets.push_back(std::move(f));
    }
    std::sort(out.facets.begin(), out.facets.end(), [](const Facet& a, const Facet& b) {
        return std::tie(a.incidence, a.int_normal) < std::tie(b.incidence, b.int_normal);
    });
    validate_facets(points, out);
    return out;
}

FacetSet facet_enumeration(const SignMatrix& M, const HullBudget& budget) {
    return facet_enumeration(IntPoints(M.entries.cast<std::int64_t>()), budget);
}

void validate_facets(const IntPoints& points, const FacetSet& facets) {
    const int d = static_cast<int>(points.rows());
    for (std::size_t f = 0; f < facets.facets.size(); ++f) {
        const Facet& facet = facets.facets[f];
        if (static_cast<int>(facet.int_normal.size()) != d) {
            throw Error(ErrorKind::NumericalFailure, "facet " + std::to_string(f) + " has the wrong dimension");
        }
        std::vector<int> tight;
        for (int k = 0; k < points.cols(); ++k) {
            i128 dot = 0;
            for (int c = 0; c < d; ++c) dot += static_cast<i128>(facet.int_normal[static_cast<std::size_t>(c)]) * points(c, k);
            if (dot > facet.int_offset) {
                throw Error(ErrorKind::NumericalFailure,
                            "point " + std::to_string(k) + " violates facet " + std::to_string(f));
            }
            if (dot == facet.int_offset) tight.push_back(k);
        }
        if (tight != facet.incidence) {
            throw Error(ErrorKind::NumericalFailure, "facet " + std::to_string(f) + " has a stale incidence list");
        }
        Eigen::MatrixXd homogeneous(static_cast<Eigen::Index>(tight.size()), d + 1);
        for (std::size_t r = 0; r < tight.size(); ++r) {
            for (int c = 0; c < d; ++c) homogeneous(static_cast<Eigen::Index>(r), c) = static_cast<double>(points(c, tight[r]));
            homogeneous(static_cast<Eigen::Index>(r), d) = 1.0;
        }
        if (double_rank(homogeneous) != d) {
            throw Error(ErrorKind::NumericalFailure, "facet " + std::to_string(f) + " is not supported by d vertices");
        }
    }
}

double inradius(const FacetSet& f) {
    if (f.facets.empty()) throw Error(ErrorKind::InvalidArgument, "empty facet set");
    double best = std::numeric_limits<double>::infinity();
    for (const Facet& facet : f.facets) best = std::min(best, facet.distance());
    return best;
}

double gauge_from_facets(const FacetSet& f, const Eigen::VectorXd& b) {
    if (b.size() != f.dim) throw Error(ErrorKind::DimensionMismatch, "vector does not match the facet dimension");
    double best = 0.0;
    for (const Facet& facet : f.facets) best = std::max(best, facet.normal.dot(b) / facet.offset);
    return best;
}

double gauge(const SignMatrix& M, const ProblemVector& b) {
    if (b.values.size() == 0 || b.values.lpNorm<Eigen::Infinity>() == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "gauge needs a nonzero vector");
    }
    const LpSolution sol = solve_min_time(M, b);
    if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "gauge solve failed");
    return sol.objective;
}

FacetCenterReport facet_center_problems(const FacetSet& f, const SignMatrix& M, double radius) {
    if (f.dim != M.rows()) throw Error(ErrorKind::DimensionMismatch, "facet set does not match the sign matrix");
    const Eigen::MatrixXd A = M.to_dense();
    FacetCenterReport report;
    for (std::size_t i = 0; i < f.facets.size(); ++i) {
        const Facet& facet = f.facets[i];
        const Eigen::VectorXd foot = (facet.offset / facet.normal.squaredNorm()) * facet.normal;
        FacetCenterProblem fc;
        fc.facet = static_cast<int>(i);
        fc.facet_distance = facet.distance();
        fc.problem.n = M.n;
        fc.problem.model = M.model;
        fc.problem.index = M.index;
        fc.problem.T = 1.0;
        fc.problem.values = foot * (radius / foot.norm());
        const LpSolution sol = solve_min_time(A, fc.problem.values);
        if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "facet-center solve failed");
        fc.objective = sol.objective;
        report.max_objective = std::max(report.max_objective, fc.objective);
        report.problems.push_back(std::move(fc));
    }
    return report;
}

}  // namespace daqc
