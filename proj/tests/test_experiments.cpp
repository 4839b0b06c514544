#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "daqc/error.hpp"
#include "daqc/experiments.hpp"
#include "daqc/parallel.hpp"

using namespace daqc;

TEST(Sample, SphereHasRadius) {
    Rng rng = sample_stream(1, 3, DistributionKind::UniformSphere, 0);
    const Eigen::VectorXd v = sample({DistributionKind::UniformSphere, std::sqrt(3.0)}, 3, rng);
    EXPECT_NEAR(v.norm(), std::sqrt(3.0), 1e-14);
}

TEST(Sample, SparseAxesSupport) {
    for (int d : {1, 3, 10, 45}) {
        for (int s = 0; s < 200; ++s) {
            Rng rng = sample_stream(2, d, DistributionKind::SparseAxes, static_cast<std::uint64_t>(s));
            const Eigen::VectorXd v = sample({DistributionKind::SparseAxes, 2.0}, d, rng);
            const auto nz = (v.array() != 0.0).count();
            EXPECT_GE(nz, 1);
            EXPECT_LE(nz, std::min(6, d));
            EXPECT_NEAR(v.norm(), 2.0, 1e-14);
            const double mag = v.cwiseAbs().maxCoeff();
            for (int k = 0; k < d; ++k)
                if (v(k) != 0.0) EXPECT_NEAR(std::abs(v(k)), mag, 1e-15);
        }
    }
}

TEST(Sample, NoiselessAxesAreScaledTrits) {
    Distribution dist{DistributionKind::AxesPerturbed, 5.0, 0.0};
    for (int s = 0; s < 50; ++s) {
        Rng rng = sample_stream(3, 1, DistributionKind::AxesPerturbed, static_cast<std::uint64_t>(s));
        const Eigen::VectorXd v = sample(dist, 1, rng);
        EXPECT_EQ(std::abs(v(0)), 5.0);
    }
}

TEST(Sample, PerturbedNoiseIsBounded) {
    Distribution raw{DistributionKind::AxesPerturbed, 1.0, 0.1};
    for (int s = 0; s < 50; ++s) {
        Rng rng = sample_stream(4, 3, DistributionKind::AxesPerturbed, static_cast<std::uint64_t>(s));
        const Eigen::VectorXd v = sample(raw, 6, rng);
        EXPECT_NEAR(v.norm(), 1.0, 1e-14);
    }
}

TEST(Sample, StreamsAreIndependentOfOrder) {
    Rng a = sample_stream(9, 4, DistributionKind::UniformSphere, 17);
    Rng b = sample_stream(9, 4, DistributionKind::UniformSphere, 17);
    Rng c = sample_stream(9, 4, DistributionKind::UniformSphere, 18);
    EXPECT_EQ(a(), b());
    EXPECT_NE(sample_stream(9, 4, DistributionKind::UniformSphere, 17)(), c());
}

TEST(Sample, InvalidParameters) {
    Rng rng(1);
    EXPECT_THROW(sample({DistributionKind::UniformSphere, 0.0}, 3, rng), Error);
    EXPECT_THROW(sample({DistributionKind::UniformSphere, 1.0}, 0, rng), Error);
    EXPECT_THROW(sample({DistributionKind::SparseAxes, 1.0, 0.1, 0}, 3, rng), Error);
    EXPECT_THROW(parse_distribution("gaussian"), Error);
}

TEST(Sweep, ThreeQubitRange) {
    SweepConfig cfg;
    cfg.n_min = cfg.n_max = 3;
    cfg.samples = 200;
    cfg.keep_samples = true;
    const SweepResult r = run_sweep(cfg);
    ASSERT_EQ(r.records.size(), 3u);
    EXPECT_EQ(r.samples.size(), 600u);
    for (const SampleResult& s : r.samples) {
        EXPECT_GE(s.achieved, 1.0 - 1e-9);
        EXPECT_LE(s.achieved, 3.0 + 1e-6);
    }
    for (const ExperimentRecord& rec : r.records) {
        EXPECT_LE(rec.min, rec.mean);
        EXPECT_LE(rec.mean, rec.max);
        EXPECT_DOUBLE_EQ(rec.lower, 1.0);
        EXPECT_NEAR(rec.upper, 3.0, 1e-12);
    }
    EXPECT_NEAR(r.records[2].max, 3.0, 1e-9);
}

TEST(Sweep, WorkerCountDoesNotChangeOutput) {
    SweepConfig cfg;
    cfg.n_min = 3;
    cfg.n_max = 5;
    cfg.samples = 50;
    cfg.seed = 7;
    const std::string one = sweep_csv(run_sweep(cfg).records);
    cfg.workers = 4;
    const std::string many = sweep_csv(run_sweep(cfg).records);
    EXPECT_EQ(one, many);
    EXPECT_EQ(one.substr(0, one.find('\n')), "model,n,distribution,samples,min,mean,max,lower,upper,seed");
    cfg.seed = 8;
    EXPECT_NE(sweep_csv(run_sweep(cfg).records), one);
}

TEST(Sweep, Caps) {
    SweepConfig cfg;
    cfg.n_min = 3;
    cfg.n_max = 11;
    try {
        run_sweep(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
    }
    cfg.model = ModelKind::General;
    cfg.n_max = 6;
    EXPECT_THROW(run_sweep(cfg), Error);
    cfg.n_max = 2;
    EXPECT_THROW(run_sweep(cfg), Error);
}

TEST(Parallel, RethrowsAndCoversAll) {
    std::vector<int> hit(100, 0);
    parallel_for(100, 3, [&](int i) { hit[static_cast<std::size_t>(i)] += 1; });
    for (int h : hit) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, 2, [](int i) {
                     if (i == 5) throw Error(ErrorKind::NumericalFailure, "x");
                 }),
                 Error);
}
