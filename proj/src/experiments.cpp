#include "daqc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "daqc/error.hpp"
#include "daqc/lp.hpp"
#include "daqc/parallel.hpp"

namespace daqc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Eigen::VectorXd rescale(Eigen::VectorXd v, double radius) {
    const double norm = v.norm();
    if (norm > 0.0) v *= radius / norm;
    return v;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

}  // namespace

std::string distribution_name(DistributionKind k) {
    switch (k) {
        case DistributionKind::UniformSphere: return "uniform_sphere";
        case DistributionKind::AxesPerturbed: return "axes_perturbed";
        case DistributionKind::SparseAxes: return "sparse_axes";
    }
    return "unknown";
}

DistributionKind parse_distribution(const std::string& s) {
    for (DistributionKind k : kAllDistributions)
        if (distribution_name(k) == s) return k;
    throw Error(ErrorKind::InvalidArgument, "unknown distribution '" + s + "'");
}

Rng sample_stream(std::uint64_t seed, int n, DistributionKind kind, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(n));
    h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
    h = splitmix64(h ^ index);
    return Rng(h);
}

Eigen::VectorXd sample(const Distribution& dist, int d, Rng& rng) {
    if (d < 1) throw Error(ErrorKind::InvalidSize, "sample dimension must be >= 1");
    if (!(dist.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be > 0");
    if (dist.half_width < 0.0) throw Error(ErrorKind::InvalidArgument, "half-width must be >= 0");
    if (dist.max_nonzeros < 1) throw Error(ErrorKind::InvalidArgument, "max nonzeros must be >= 1");

    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    switch (dist.kind) {
        case DistributionKind::UniformSphere: {
            std::normal_distribution<double> normal;
            do {
                for (int i = 0; i < d; ++i) v(i) = normal(rng);
            } while (v.norm() == 0.0);
            break;
        }
        case DistributionKind::AxesPerturbed: {
            std::uniform_int_distribution<int> trit(-1, 1);
            do {
                for (int i = 0; i < d; ++i) v(i) = trit(rng);
            } while (v.lpNorm<Eigen::Infinity>() == 0.0);
            if (dist.half_width > 0.0) {
                std::uniform_real_distribution<double> noise(-dist.half_width, dist.half_width);
                for (int i = 0; i < d; ++i) v(i) += noise(rng);
            }
            break;
        }
        case DistributionKind::SparseAxes: {
            const int cap = std::min(dist.max_nonzeros, d);
            const int k = std::uniform_int_distribution<int>(1, cap)(rng);
            std::vector<int> positions(static_cast<std::size_t>(d));
            std::iota(positions.begin(), positions.end(), 0);
            // Partial Fisher-Yates: the first k positions form the support.
            for (int i = 0; i < k; ++i) {
                const int j = std::uniform_int_distribution<int>(i, d - 1)(rng);
                std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
            }
            std::bernoulli_distribution coin;
            for (int i = 0; i < k; ++i) v(positions[static_cast<std::size_t>(i)]) = coin(rng) ? 1.0 : -1.0;
            break;
        }
    }
    return rescale(std::move(v), dist.radius);
}

SweepResult run_sweep(const SweepConfig& cfg) {
    const int n_cap = cfg.model == ModelKind::ZZ ? cfg.zz_n_cap : cfg.general_n_cap;
    if (cfg.n_min < 2 || cfg.n_max < cfg.n_min) {
        throw Error(ErrorKind::InvalidArgument, "invalid qubit range " + std::to_string(cfg.n_min) + ".." +
                                                    std::to_string(cfg.n_max));
    }
    if (cfg.n_max > n_cap) {
        throw Error(ErrorKind::CapExceeded, "n=" + std::to_string(cfg.n_max) + " exceeds the sweep cap " +
                                                std::to_string(n_cap) + " for the " + model_name(cfg.model) + " model");
    }
    if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");

    SweepResult result;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        const SignMatrix M = build_sign_matrix(n, cfg.model, cfg.column_cap);
        const Eigen::MatrixXd A = M.to_dense();
        const int d = M.rows();
        const double radius = std::sqrt(static_cast<double>(d));

        for (DistributionKind kind : cfg.kinds) {
            const auto start = std::chrono::steady_clock::now();
            Distribution dist;
            dist.kind = kind;
            dist.radius = radius;
            std::vector<SampleResult> runs(static_cast<std::size_t>(cfg.samples));
            parallel_for(cfg.samples, cfg.workers, [&](int i) {
                Rng rng = sample_stream(cfg.seed, n, kind, static_cast<std::uint64_t>(i));
                SampleResult& run = runs[static_cast<std::size_t>(i)];
                run.n = n;
                run.kind = kind;
                run.index = i;
                run.values = sample(dist, d, rng);
                const LpSolution sol = solve_min_time(A, run.values);
                if (sol.status != LpStatus::Optimal) {
                    throw Error(ErrorKind::NumericalFailure, "sample " + std::to_string(i) + " at n=" +
                                                                 std::to_string(n) + " did not solve: " +
                                                                 lp_status_name(sol.status));
                }
                run.achieved = sol.objective;
            });

            ExperimentRecord rec;
            rec.model = cfg.model;
            rec.n = n;
            rec.kind = kind;
            rec.samples = cfg.samples;
            rec.seed = cfg.seed;
            rec.upper = std::sqrt(3.0) * radius;
            rec.min = runs.front().achieved;
            rec.max = runs.front().achieved;
            double sum = 0.0;
            for (const SampleResult& r : runs) {
                rec.min = std::min(rec.min, r.achieved);
                rec.max = std::max(rec.max, r.achieved);
                sum += r.achieved;
            }
            rec.mean = sum / cfg.samples;
            rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            result.records.push_back(rec);
            if (cfg.keep_samples) {
                for (SampleResult& r : runs) result.samples.push_back(std::move(r));
            }
        }
    }
    return result;
}

std::string sweep_csv(const std::vector<ExperimentRecord>& records) {
    std::string out = "model,n,distribution,samples,min,mean,max,lower,upper,seed\n";
    for (const ExperimentRecord& r : records) {
        out += model_name(r.model) + "," + std::to_string(r.n) + "," + distribution_name(r.kind) + "," +
               std::to_string(r.samples) + "," + format_double(r.min) + "," + format_double(r.mean) + "," +
               format_double(r.max) + "," + format_double(r.lower) + "," + format_double(r.upper) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

}  // namespace daqc
