#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "daqc/hamiltonian.hpp"
#include "daqc/sign_matrix.hpp"

namespace daqc {

enum class DistributionKind { UniformSphere, AxesPerturbed, SparseAxes };

std::string distribution_name(DistributionKind k);
DistributionKind parse_distribution(const std::string& s);
inline constexpr DistributionKind kAllDistributions[] = {
    DistributionKind::UniformSphere, DistributionKind::AxesPerturbed, DistributionKind::SparseAxes};

struct Distribution {
    DistributionKind kind = DistributionKind::UniformSphere;
    double radius = 1.0;
    /// AxesPerturbed noise is uniform in [-half_width, half_width].
    double half_width = 0.1;
    /// SparseAxes support size is uniform in [1, min(max_nonzeros, d)].
    int max_nonzeros = 6;
};

using Rng = std::mt19937_64;

/// Independent stream for one sample, keyed by (seed, n, kind, index).
Rng sample_stream(std::uint64_t seed, int n, DistributionKind kind, std::uint64_t index);

/// One problem vector of dimension d with 2-norm dist.radius.
Eigen::VectorXd sample(const Distribution& dist, int d, Rng& rng);

struct SweepConfig {
    ModelKind model = ModelKind::ZZ;
    int n_min = 3;
    int n_max = 5;
    int samples = 1000;
    std::vector<DistributionKind> kinds{std::begin(kAllDistributions), std::end(kAllDistributions)};
    std::uint64_t seed = 1;
    int workers = 1;
    bool keep_samples = false;
    std::size_t column_cap = kDefaultColumnCap;
    /// Upper limits on n accepted by run_sweep.
    int zz_n_cap = 10;
    int general_n_cap = 5;
};

struct SampleResult {
    int n = 0;
    DistributionKind kind = DistributionKind::UniformSphere;
    int index = 0;
    Eigen::VectorXd values;
    double achieved = 0.0;
};

struct ExperimentRecord {
    ModelKind model = ModelKind::ZZ;
    int n = 0;
    DistributionKind kind = DistributionKind::UniformSphere;
    int samples = 0;
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    /// 1 under the ||b||_2 = sqrt(d) normalization.
    double lower = 1.0;
    /// sqrt(3) * radius
    double upper = 0.0;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

struct SweepResult {
    std::vector<ExperimentRecord> records;
    std::vector<SampleResult> samples;
};

/// Radius sqrt(d) per n; every sample is solved. Results do not depend on cfg.workers.
SweepResult run_sweep(const SweepConfig& cfg);

/// model,n,distribution,samples,min,mean,max,lower,upper,seed
std::string sweep_csv(const std::vector<ExperimentRecord>& records);

}  // namespace daqc
