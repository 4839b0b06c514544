#include "daqc/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "daqc/error.hpp"
#include "daqc/parallel.hpp"

namespace daqc {

double Schedule::total_time() const {
    return std::accumulate(blocks.begin(), blocks.end(), 0.0,
                           [](double acc, const ScheduleBlock& b) { return acc + b.time; });
}

BoundsReport bounds_report(const ProblemVector& b, int n) {
    const Norms nb = norms(b);
    BoundsReport r;
    r.lower = nb.linf;
    r.upper = std::sqrt(3.0) * nb.l2;
    r.legacy = 2.0 * nb.l1;
    r.conjecture = nb.linf * (n % 2 == 1 ? n : n - 1);
    return r;
}

CompileResult compile_detailed(const TwoBodyHamiltonian& hP, const TwoBodyHamiltonian& hS, double T,
                               const CompileOptions& opts) {
    CompileResult out;
    out.problem = build_problem_vector(hP, hS, T, opts.zero_threshold);
    const SignMatrix full = build_sign_matrix(hP.n(), hP.model(), opts.column_cap);
    const SignMatrix M = restrict_rows(full, out.problem.index);

    out.lp = solve_min_time(M, out.problem, opts.lp);
    if (out.lp.status != LpStatus::Optimal) {
        throw Error(ErrorKind::NumericalFailure,
                    std::string("linear program did not reach optimality: ") + lp_status_name(out.lp.status));
    }

    out.schedule.n = hP.n();
    out.schedule.model = hP.model();
    out.schedule.T = T;
    for (int k : out.lp.support) {
        out.schedule.blocks.push_back({M.layers[static_cast<std::size_t>(k)], out.lp.t(k)});
    }
    out.bounds = bounds_report(out.problem, hP.n());
    out.bounds.achieved = out.lp.objective;
    return out;
}

Schedule compile(const TwoBodyHamiltonian& hP, const TwoBodyHamiltonian& hS, double T, const CompileOptions& opts) {
    return compile_detailed(hP, hS, T, opts).schedule;
}

LpSolution solve_problem(const ProblemVector& b, std::size_t column_cap) {
    const SignMatrix full = build_sign_matrix(b.n, b.model, column_cap);
    const SignMatrix M = b.index == full.index ? full : restrict_rows(full, b.index);
    return solve_min_time(M, b);
}

std::array<int, 3> sign_values(SignPattern p) {
    switch (p) {
        case SignPattern::MMM: return {-1, -1, -1};
        case SignPattern::MPP: return {-1, 1, 1};
        case SignPattern::PMP: return {1, -1, 1};
        case SignPattern::PPM: return {1, 1, -1};
    }
    return {0, 0, 0};
}

std::string sign_pattern_name(SignPattern p) {
    std::string s;
    for (int v : sign_values(p)) s.push_back(v < 0 ? '-' : '+');
    return s;
}

SignPattern parse_sign_pattern(const std::string& s) {
    for (SignPattern p : kAllSignPatterns)
        if (sign_pattern_name(p) == s) return p;
    throw Error(ErrorKind::InvalidArgument, "sign pattern must be one of ---, -++, +-+, ++- (got '" + s + "')");
}

const std::array<std::array<AxisPair, 3>, 6>& axis_triples() {
    using enum Axis;
    static const std::array<std::array<AxisPair, 3>, 6> triples{{
        {{{X, X}, {Y, Y}, {Z, Z}}},
        {{{X, X}, {Y, Z}, {Z, Y}}},
        {{{Y, Y}, {X, Z}, {Z, X}}},
        {{{Z, Z}, {X, Y}, {Y, X}}},
        {{{X, Y}, {Y, Z}, {Z, X}}},
        {{{X, Z}, {Z, Y}, {Y, X}}},
    }};
    return triples;
}

std::string axis_triple_name(int triple) {
    if (triple < 0 || triple >= 6) throw Error(ErrorKind::InvalidArgument, "axis triple index out of range");
    std::string s;
    for (const AxisPair& p : axis_triples()[static_cast<std::size_t>(triple)]) {
        if (!s.empty()) s.push_back(',');
        s.push_back(static_cast<char>(std::toupper(axis_char(p.first))));
        s.push_back(static_cast<char>(std::toupper(axis_char(p.second))));
    }
    return s;
}

int parse_axis_triple(const std::string& s) {
    std::string upper = s;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (int t = 0; t < 6; ++t)
        if (axis_triple_name(t) == upper) return t;
    throw Error(ErrorKind::InvalidArgument, "unknown axis triple '" + s + "'");
}

ProblemVector worst_case_problem(int n, ModelKind model, const WorstCaseSupport& support, SignPattern signs,
                                 double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be > 0");
    std::vector<int> q = support.qubits;
    std::sort(q.begin(), q.end());
    const bool distinct = std::adjacent_find(q.begin(), q.end()) == q.end();
    const bool in_range = !q.empty() && q.front() >= 1 && q.back() <= n;

    std::array<CouplingKey, 3> keys;
    if (model == ModelKind::ZZ) {
        if (q.size() != 3 || !distinct || !in_range) {
            throw Error(ErrorKind::InvalidArgument, "ZZ worst case needs three distinct qubits in 1.." + std::to_string(n));
        }
        keys = {CouplingKey{q[0], q[1], Axis::Z, Axis::Z}, CouplingKey{q[0], q[2], Axis::Z, Axis::Z},
                CouplingKey{q[1], q[2], Axis::Z, Axis::Z}};
    } else {
        if (q.size() != 2 || !distinct || !in_range) {
            throw Error(ErrorKind::InvalidArgument, "general worst case needs a qubit pair in 1.." + std::to_string(n));
        }
        if (support.axis_triple < 0 || support.axis_triple >= 6) {
            throw Error(ErrorKind::InvalidArgument, "axis triple index must be in 0..5");
        }
        const auto& triple = axis_triples()[static_cast<std::size_t>(support.axis_triple)];
        for (std::size_t k = 0; k < 3; ++k) keys[k] = {q[0], q[1], triple[k].first, triple[k].second};
    }

    ProblemVector b = full_problem_vector(n, model, Eigen::VectorXd::Zero(coupling_count(n, model)));
    const std::array<int, 3> s = sign_values(signs);
    for (std::size_t k = 0; k < 3; ++k) {
        auto it = std::lower_bound(b.index.begin(), b.index.end(), keys[k]);
        b.values(it - b.index.begin()) = s[k] * alpha;
    }
    return b;
}

std::vector<ProblemVector> enumerate_worst_directions(int n, ModelKind model, int n_cap) {
    if (model != ModelKind::ZZ) throw Error(ErrorKind::WrongModel, "worst directions are enumerated for the ZZ model");
    if (n < 3) throw Error(ErrorKind::InvalidSize, "need at least 3 qubits for a triangle");
    if (n > n_cap) throw Error(ErrorKind::CapExceeded, "n=" + std::to_string(n) + " exceeds cap " + std::to_string(n_cap));
    std::vector<ProblemVector> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (SignPattern p : kAllSignPatterns) out.push_back(worst_case_problem(n, model, {{i, j, k}, 0}, p, 1.0));
    return out;
}

std::vector<GapRecord> conjecture_gap_search(int n, ModelKind model, int samples, std::uint64_t seed, int workers,
                                             std::size_t column_cap) {
    if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
    const SignMatrix M = build_sign_matrix(n, model, column_cap);
    const Eigen::MatrixXd A = M.to_dense();
    const int d = M.rows();
    const double factor = n % 2 == 1 ? n : n - 1;

    std::vector<GapRecord> records(static_cast<std::size_t>(3 * samples));
    parallel_for(3 * samples, workers, [&](int idx) {
        const DistributionKind kind = kAllDistributions[idx / samples];
        const int i = idx % samples;
        Distribution dist;
        dist.kind = kind;
        dist.radius = std::sqrt(static_cast<double>(d));
        Rng rng = sample_stream(seed, n, kind, static_cast<std::uint64_t>(i));

        GapRecord& rec = records[static_cast<std::size_t>(idx)];
        rec.kind = kind;
        rec.values = sample(dist, d, rng);
        const LpSolution sol = solve_min_time(A, rec.values);
        if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "gap-search sample did not solve");
        rec.achieved = sol.objective;
        rec.conjecture = rec.values.lpNorm<Eigen::Infinity>() * factor;
        rec.ratio = rec.achieved / rec.conjecture;
        rec.violation = rec.ratio > 1.0 + 1e-9;
    });
    return records;
}

}  // namespace daqc
